// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chrslab/haar.hpp"
#include "chrslab/linalg.hpp"
#include "chrslab/rng.hpp"
#include "chrslab/stats.hpp"

namespace chrslab {

/// A two-outcome test usable on fresh copies of an unknown state. The exact
/// acceptance probability is evaluated from the state description; sampling
/// a measurement outcome is a Bernoulli draw against it.
struct BinaryTest {
    std::string name;
    std::function<double(const DensityMatrix&)> accept_prob;
};

enum class PiVariant {
    AllAccept,        // all `reps` parallel verifier runs accept
    HammingMajority,  // at least half of the `reps` runs accept
};

/// The amplified test: `reps` parallel verifier runs on independent copies,
/// combined per the variant. `single_run` maps the unknown state to one run's
/// acceptance probability.
BinaryTest build_pi_k(std::function<double(const DensityMatrix&)> single_run, int reps,
                      PiVariant variant, std::string name);

/// Acceptance probability of the amplified test given the per-run value.
double pi_k_accept_prob(double per_run_p, int reps, PiVariant variant);

/// If the all-accept test passes with probability >= 1/3 at `reps`
/// repetitions, the per-run probability is at least 3^(-1/reps).
double pi_k_soundness_threshold(int reps);

struct ThresholdInstance {
    std::vector<BinaryTest> tests;
    /// Produces (the description of) one fresh copy of the unknown state.
    std::function<DensityMatrix()> state_supplier;
    double theta = 0.5;  // must lie in [0.4, 0.6]
    int copies_per_test = 9;
    int round_cap_factor = 10;  // round cap = factor * #tests
};

struct ThresholdResult {
    std::optional<int> index;
    int rounds_used = 0;
    long copies_used = 0;
};

/// Randomized threshold search: per round pick a test uniformly, measure it
/// on copies_per_test fresh copies, and return its index when the empirical
/// accept fraction reaches theta. Explicit not-found after the round cap.
ThresholdResult threshold_search(const ThresholdInstance& instance, RngStream& rng);

/// Joint-register oracle for the amplified measurement at tiny sizes: every
/// copy is measured coherently with an ancilla and the Hamming-weight
/// projector is applied to the ancilla block. Cross-checks the Bernoulli
/// accounting used everywhere else.
double exact_joint_threshold_prob(const PureState& copy_state, const MeasurementEffect& effect,
                                  int copies, int min_accepts);

enum class ToyOwsgVariant { Pauli, PauliMixed };

/// A concrete reference-state OWSG for the attack to break: StateGen(k)
/// applies the key-indexed Pauli mask to the family state; Ver projects onto
/// the keyed state. Pure outputs verify with probability exactly one.
class ToyOwsg {
  public:
    ToyOwsg(int n, const ChrsFamily& family, ToyOwsgVariant variant = ToyOwsgVariant::Pauli);

    int key_bits() const { return n_; }
    int key_count() const { return 1 << n_; }
    ToyOwsgVariant variant() const { return variant_; }

    /// P_k |psi_n>.
    PureState key_state(int key) const;
    /// The OWSG output rho_k (depolarized in the mixed variant).
    DensityMatrix state_for_key(int key) const;
    /// Pr[Ver(key, rho) accepts] = <psi_k| rho |psi_k>.
    double verifier_accept_prob(int key, const DensityMatrix& rho) const;

  private:
    int n_;
    const ChrsFamily* family_;
    ToyOwsgVariant variant_;
};

struct OwsgAttackReport {
    int trials = 0;
    int found = 0;                 // threshold search returned a key
    int successes = 0;             // returned key re-verifies above the bound
    double success_rate = 0.0;
    WilsonInterval ci;
    double mean_reverify = 0.0;    // over found keys
    double soundness_bound = 0.0;  // 1 - 1/(5 lambda)
    long copies_used = 0;
    std::vector<int> per_trial_found;
    std::vector<double> per_trial_reverify;  // -1 when nothing was found
};

/// Full break loop: sample a hidden key, hand the attack copies of its state
/// plus the verifier-circuit family, run threshold search over all keys, and
/// score the returned key against the original verifier. The hidden key is
/// never part of the attack's inputs.
OwsgAttackReport owsg_attack_experiment(const ToyOwsg& owsg, int lambda, int trials,
                                        RngStream& rng);

}  // namespace chrslab
