// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/owpuzz.hpp"

#include <algorithm>
#include <cmath>

namespace chrslab {

void OwpParams::validate() const {
    if (n < 1) throw usage_error("OwpParams: n must be >= 1");
    if (accept_threshold <= 0.0 || accept_threshold >= 1.0)
        throw usage_error("OwpParams: accept_threshold must lie in (0, 1)");
    if (accept_count_fraction <= 0.0 || accept_count_fraction > 1.0)
        throw usage_error("OwpParams: accept_count_fraction must lie in (0, 1]");
    auto [lo, hi] = resolved_range();
    if (lo < 1 || hi < lo) throw usage_error("OwpParams: bad size-index range");
    if (hi > kMaxCliffordQubits)
        throw usage_error("OwpParams: size-index range exceeds the Clifford sampler cap");
}

int OwpParams::resolved_shots() const {
    return shots_per_ell > 0 ? shots_per_ell : shadow_copies_for(1.0 / 3.0, 0.1, 2);
}

int OwpParams::resolved_batches() const {
    return batches > 0 ? batches : shadow_default_batches(2, 0.1);
}

std::pair<int, int> OwpParams::resolved_range() const {
    if (ell_lo == 0 && ell_hi == 0) return {n, 2 * n};
    return {ell_lo, ell_hi};
}

int OwpParams::index_count() const {
    auto [lo, hi] = resolved_range();
    return hi - lo + 1;
}

int OwpParams::accepts_needed() const {
    return static_cast<int>(std::ceil(accept_count_fraction * index_count()));
}

Vec z1_twist(const Vec& amplitudes, int bit) {
    if (bit % 2 == 0) return amplitudes;
    Vec out = amplitudes;
    const Eigen::Index half = out.size() / 2;
    out.tail(half) = -out.tail(half);
    return out;
}

nlohmann::json Puzzle::to_json() const {
    std::string key_bits;
    for (int b : key) key_bits.push_back(b ? '1' : '0');
    nlohmann::json sh = nlohmann::json::array();
    for (const auto& [ell, shadow] : shadows) {
        nlohmann::json rec = shadow.to_json();
        rec["ell"] = ell;
        sh.push_back(std::move(rec));
    }
    return nlohmann::json{
        {"n", n}, {"ell_lo", ell_lo}, {"ell_hi", ell_hi}, {"key", key_bits}, {"shadows", sh}};
}

Puzzle Puzzle::from_json(const nlohmann::json& j) {
    Puzzle p;
    p.n = j.at("n").get<int>();
    p.ell_lo = j.at("ell_lo").get<int>();
    p.ell_hi = j.at("ell_hi").get<int>();
    for (char c : j.at("key").get<std::string>()) {
        if (c != '0' && c != '1') throw usage_error("Puzzle::from_json: bad key bit");
        p.key.push_back(c == '1');
    }
    for (const auto& rec : j.at("shadows"))
        p.shadows.emplace_back(rec.at("ell").get<int>(), ClassicalShadow::from_json(rec));
    return p;
}

Puzzle owp_samp(const ChrsFamily& family, const OwpParams& params, RngStream& rng) {
    params.validate();
    auto [lo, hi] = params.resolved_range();
    if (lo < family.ell_min() || hi > family.ell_max())
        throw usage_error("owp_samp: family does not cover the size-index range");
    const int shots = params.resolved_shots();

    Puzzle puzzle;
    puzzle.n = params.n;
    puzzle.ell_lo = lo;
    puzzle.ell_hi = hi;
    for (int ell = lo; ell <= hi; ++ell) {
        const int bit = rng.next_bit() ? 1 : 0;
        puzzle.key.push_back(bit);
        const PureState& psi = family.consume_copies(ell, shots);
        PureState twisted(z1_twist(psi.amplitudes(), bit));
        puzzle.shadows.emplace_back(ell, shadow_gen(twisted, shots, rng));
    }
    return puzzle;
}

OwpVerifyResult owp_ver(const ChrsFamily& family, const std::vector<int>& key,
                        const ShadowCollection& shadows, const OwpParams& params) {
    params.validate();
    OwpVerifyResult r;
    auto [lo, hi] = params.resolved_range();
    const int count = params.index_count();
    if (static_cast<int>(key.size()) != count) {
        r.diagnostic = "key length does not match the size-index range";
        return r;
    }
    if (static_cast<int>(shadows.size()) != count) {
        r.diagnostic = "shadow collection does not cover the size-index range";
        return r;
    }
    const int batches = params.resolved_batches();
    for (int i = 0; i < count; ++i) {
        const int ell = lo + i;
        if (shadows[i].first != ell || shadows[i].second.qubits() != ell ||
            shadows[i].second.shots().empty()) {
            r.diagnostic = "shadow at index " + std::to_string(ell) + " is missing or malformed";
            return r;
        }
        const PureState& psi = family.state(ell);
        const Vec target = z1_twist(psi.amplitudes(), key[i]);
        const double est = shadow_estimate_fidelity(shadows[i].second, target, batches);
        r.estimates.push_back(est);
        if (est > params.accept_threshold) ++r.passed;
    }
    r.accept = r.passed >= params.accepts_needed();
    return r;
}

double owp_mle_score(const ClassicalShadow& shadow, int batches) {
    // Estimated expectation of Z on the first qubit. The observable is
    // diagonal, so the per-shot value needs only |<i|C^dag|b>|^2 weights.
    const Eigen::Index d = Eigen::Index(1) << shadow.qubits();
    const Eigen::Index half = d / 2;
    const double scale = static_cast<double>(d) + 1.0;
    const auto& shots = shadow.shots();
    if (shots.empty()) throw usage_error("owp_mle_score: empty shadow");
    if (batches < 1) throw usage_error("owp_mle_score: need at least one batch");
    const size_t batch = shots.size() / static_cast<size_t>(batches);
    if (batch == 0) throw usage_error("owp_mle_score: more batches than shots");
    std::vector<double> means;
    means.reserve(batches);
    for (int b = 0; b < batches; ++b) {
        double sum = 0.0;
        for (size_t i = b * batch; i < (b + 1) * batch; ++i) {
            Vec e = Vec::Zero(d);
            e[shots[i].outcome] = 1.0;
            Vec u = shots[i].clifford.apply_adjoint(e);
            double val = 0.0;
            for (Eigen::Index j = 0; j < d; ++j)
                val += (j < half ? 1.0 : -1.0) * std::norm(u[j]);
            sum += scale * val;  // Tr[Z_1] = 0, no identity correction
        }
        means.push_back(sum / static_cast<double>(batch));
    }
    std::sort(means.begin(), means.end());
    const size_t k = means.size() / 2;
    return means.size() % 2 == 1 ? means[k] : 0.5 * (means[k - 1] + means[k]);
}

std::vector<int> owp_no_sample_adversary(const ShadowCollection& shadows, OwpAdversary strategy,
                                         const OwpParams& params, RngStream& rng) {
    std::vector<int> key;
    key.reserve(shadows.size());
    for (const auto& [ell, shadow] : shadows) {
        switch (strategy) {
            case OwpAdversary::RandomGuess:
                key.push_back(rng.next_bit() ? 1 : 0);
                break;
            case OwpAdversary::AllZeros:
                key.push_back(0);
                break;
            case OwpAdversary::ShadowMle:
                // Guess from the sign of the estimated first-qubit Z
                // expectation; the shadow distribution carries no key
                // information, so this is a placebo statistic.
                key.push_back(owp_mle_score(shadow, params.resolved_batches()) >= 0.0 ? 0 : 1);
                break;
        }
    }
    return key;
}

OwpExperimentReport owp_security_experiment(int n, int trials, bool honest, OwpAdversary strategy,
                                            const OwpParams& params, RngStream& rng) {
    if (trials < 1) throw usage_error("owp_security_experiment: trials must be >= 1");
    OwpParams p = params;
    p.n = n;
    p.validate();
    auto [lo, hi] = p.resolved_range();

    OwpExperimentReport report;
    report.trials = trials;
    double passed_sum = 0.0, copies_sum = 0.0, reads_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        RngStream trial_rng = rng.substream(static_cast<std::uint64_t>(t));
        ChrsFamily family(trial_rng.next_u64(), lo, hi);
        Puzzle puzzle = owp_samp(family, p, trial_rng);
        std::vector<int> key = honest ? puzzle.key
                                      : owp_no_sample_adversary(puzzle.shadows, strategy, p,
                                                                trial_rng);
        OwpVerifyResult v = owp_ver(family, key, puzzle.shadows, p);
        report.successes += v.accept ? 1 : 0;
        report.per_trial_accept.push_back(v.accept ? 1 : 0);
        report.per_trial_passed.push_back(v.passed);
        passed_sum += v.passed;
        copies_sum += static_cast<double>(family.copies_consumed());
        reads_sum += static_cast<double>(family.exact_reads());
    }
    report.rate = static_cast<double>(report.successes) / trials;
    report.ci = wilson_interval(report.successes, trials);
    report.mean_passed = passed_sum / trials;
    report.mean_copies_consumed = copies_sum / trials;
    report.mean_exact_reads = reads_sum / trials;
    return report;
}

}  // namespace chrslab
