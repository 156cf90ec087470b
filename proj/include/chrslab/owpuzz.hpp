// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chrslab/haar.hpp"
#include "chrslab/shadows.hpp"
#include "chrslab/stats.hpp"

namespace chrslab {

/// Parameters of the puzzle construction. The key has one bit per size index
/// ell in [ell_lo, ell_hi]; the verifier accepts when at least
/// ceil(accept_count_fraction * index_count) per-index estimates exceed
/// accept_threshold.
struct OwpParams {
    int n = 4;
    /// Shadow shots per size index; 0 selects the accuracy schedule
    /// shadow_copies_for(1/3, 1/10, 2). The fixed large-copy variant (10000)
    /// is available through the CLI.
    int shots_per_ell = 0;
    double accept_threshold = 0.5;
    double accept_count_fraction = 0.75;
    /// Size-index range; (0, 0) selects the default [n, 2n]. Experiments at
    /// n = 4 use a downshifted range so indices stay within the exact-uniform
    /// Clifford sampler's reach.
    int ell_lo = 0;
    int ell_hi = 0;
    /// Median-of-means batches; 0 selects shadow_default_batches(2, 1/10).
    int batches = 0;

    void validate() const;
    int resolved_shots() const;
    int resolved_batches() const;
    std::pair<int, int> resolved_range() const;
    int index_count() const;
    int accepts_needed() const;
};

/// Ordered per-size-index shadow collection; the puzzle string.
using ShadowCollection = std::vector<std::pair<int, ClassicalShadow>>;

struct Puzzle {
    int n = 0;
    int ell_lo = 0;
    int ell_hi = 0;
    std::vector<int> key;  // bit per index, ordered by ell
    ShadowCollection shadows;

    nlohmann::json to_json() const;
    static Puzzle from_json(const nlohmann::json& j);
};

/// Z on the first (most significant) qubit, applied `bit` times.
Vec z1_twist(const Vec& amplitudes, int bit);

/// Samples a puzzle: uniform key, one shadow of the Z-twisted family state
/// per size index. Copies consumed are tracked by the family's counter.
Puzzle owp_samp(const ChrsFamily& family, const OwpParams& params, RngStream& rng);

struct OwpVerifyResult {
    bool accept = false;
    int passed = 0;
    std::vector<double> estimates;
    std::string diagnostic;  // nonempty when rejected due to a shape problem
};

/// Verifies (key, shadows) against the family's exact state descriptions
/// (the sample-unbounded verifier path; reads are counted by the family).
/// Shape mismatches reject with a diagnostic rather than throwing.
OwpVerifyResult owp_ver(const ChrsFamily& family, const std::vector<int>& key,
                        const ShadowCollection& shadows, const OwpParams& params);

enum class OwpAdversary { RandomGuess, ShadowMle, AllZeros };

/// No-sample adversaries: they see only the puzzle string, never the family.
std::vector<int> owp_no_sample_adversary(const ShadowCollection& shadows, OwpAdversary strategy,
                                         const OwpParams& params, RngStream& rng);

/// The per-index statistic behind the ShadowMle strategy (the sign of the
/// estimated first-qubit Z expectation).
double owp_mle_score(const ClassicalShadow& shadow, int batches);

struct OwpExperimentReport {
    int trials = 0;
    int successes = 0;
    double rate = 0.0;
    WilsonInterval ci;
    double mean_passed = 0.0;
    /// Sample-complexity accounting, averaged over trials: copies drawn from
    /// the family by the sampler, and exact-description reads taken by the
    /// (sample-unbounded) verifier.
    double mean_copies_consumed = 0.0;
    double mean_exact_reads = 0.0;
    std::vector<int> per_trial_accept;
    std::vector<int> per_trial_passed;
};

/// Full loop per trial: fresh family, samp, adversary (or honest replay),
/// verify the adversary's key against the sampled shadows.
OwpExperimentReport owp_security_experiment(int n, int trials, bool honest, OwpAdversary strategy,
                                            const OwpParams& params, RngStream& rng);

}  // namespace chrslab
