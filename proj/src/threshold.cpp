// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/threshold.hpp"

#include <cmath>

namespace chrslab {

double pi_k_accept_prob(double per_run_p, int reps, PiVariant variant) {
    if (per_run_p < 0.0 || per_run_p > 1.0) throw usage_error("pi_k_accept_prob: p outside [0,1]");
    if (reps < 1) throw usage_error("pi_k_accept_prob: reps must be >= 1");
    switch (variant) {
        case PiVariant::AllAccept:
            return std::pow(per_run_p, reps);
        case PiVariant::HammingMajority:
            return binomial_tail_geq(reps, (reps + 1) / 2, per_run_p);
    }
    return 0.0;
}

double pi_k_soundness_threshold(int reps) {
    if (reps < 1) throw usage_error("pi_k_soundness_threshold: reps must be >= 1");
    return std::pow(3.0, -1.0 / static_cast<double>(reps));
}

BinaryTest build_pi_k(std::function<double(const DensityMatrix&)> single_run, int reps,
                      PiVariant variant, std::string name) {
    if (reps < 1) throw usage_error("build_pi_k: reps must be >= 1");
    return BinaryTest{std::move(name), [single_run = std::move(single_run), reps,
                                        variant](const DensityMatrix& rho) {
                          return pi_k_accept_prob(single_run(rho), reps, variant);
                      }};
}

ThresholdResult threshold_search(const ThresholdInstance& instance, RngStream& rng) {
    if (instance.tests.empty()) throw usage_error("threshold_search: no tests");
    if (!instance.state_supplier) throw usage_error("threshold_search: no state supplier");
    if (instance.theta < 0.4 || instance.theta > 0.6)
        throw usage_error("threshold_search: theta must lie in [0.4, 0.6]");
    if (instance.copies_per_test < 1)
        throw usage_error("threshold_search: copies_per_test must be >= 1");

    const int m = static_cast<int>(instance.tests.size());
    const int cap = instance.round_cap_factor * m;
    ThresholdResult r;
    for (int round = 0; round < cap; ++round) {
        ++r.rounds_used;
        const int i = static_cast<int>(rng.uniform_below(m));
        int accepts = 0;
        for (int c = 0; c < instance.copies_per_test; ++c) {
            const DensityMatrix copy = instance.state_supplier();
            ++r.copies_used;
            const double p = instance.tests[i].accept_prob(copy);
            if (rng.next_double() < p) ++accepts;
        }
        if (accepts >= instance.theta * instance.copies_per_test) {
            r.index = i;
            return r;
        }
    }
    return r;
}

double exact_joint_threshold_prob(const PureState& copy_state, const MeasurementEffect& effect,
                                  int copies, int min_accepts) {
    if (copies < 1 || copies > 6) throw usage_error("exact_joint_threshold_prob: copies in [1,6]");
    if (!effect.is_projector())
        throw usage_error("exact_joint_threshold_prob: coherent mode needs a projector");

    std::vector<Register> regs;
    std::vector<Vec> factors;
    for (int c = 0; c < copies; ++c) {
        regs.push_back({"c" + std::to_string(c), copy_state.dim()});
        factors.push_back(copy_state.amplitudes());
    }
    MultiRegisterState joint = MultiRegisterState::product(regs, factors);
    for (int c = 0; c < copies; ++c) {
        auto res = measure_binary(joint, effect, {"c" + std::to_string(c)}, MeasureMode::Coherent,
                                  "a" + std::to_string(c));
        joint = std::move(*res.coherent);
    }
    // Ancillas are the trailing `copies` registers (one qubit each); total
    // probability of patterns with Hamming weight >= min_accepts.
    const Vec& amps = joint.amplitudes();
    const Eigen::Index anc_dim = Eigen::Index(1) << copies;
    const Eigen::Index block = amps.size() / anc_dim;
    double total = 0.0;
    for (Eigen::Index pattern = 0; pattern < anc_dim; ++pattern) {
        if (__builtin_popcountll(pattern) < min_accepts) continue;
        // Ancilla c sits at stride 2^(copies-1-c); pattern bits are laid out
        // consecutively as the least significant index block.
        for (Eigen::Index outer = 0; outer < block; ++outer)
            total += std::norm(amps[outer * anc_dim + pattern]);
    }
    return total;
}

ToyOwsg::ToyOwsg(int n, const ChrsFamily& family, ToyOwsgVariant variant)
    : n_(n), family_(&family), variant_(variant) {
    if (n < 1 || n > 4) throw usage_error("ToyOwsg: key length out of range [1, 4]");
    if (family.ell_min() > n || family.ell_max() < n)
        throw usage_error("ToyOwsg: family does not cover size index n");
}

PureState ToyOwsg::key_state(int key) const {
    if (key < 0 || key >= key_count()) throw usage_error("ToyOwsg: key out of range");
    const PureState& psi = family_->state(n_);
    // Key bit i applies X on qubit i: distinct keys give distinct Pauli masks.
    Vec v = psi.amplitudes();
    Eigen::Index flip = 0;
    for (int i = 0; i < n_; ++i)
        if (key & (1 << i)) flip |= Eigen::Index(1) << (n_ - 1 - i);
    Vec out(v.size());
    for (Eigen::Index idx = 0; idx < v.size(); ++idx) out[idx ^ flip] = v[idx];
    return PureState(std::move(out));
}

DensityMatrix ToyOwsg::state_for_key(int key) const {
    PureState pure = key_state(key);
    if (variant_ == ToyOwsgVariant::Pauli) return DensityMatrix::from_pure(pure);
    const double rate = 0.05;
    const Eigen::Index d = pure.dim();
    Mat m = (1.0 - rate) * pure.projector() + rate / static_cast<double>(d) * Mat::Identity(d, d);
    return DensityMatrix(std::move(m));
}

double ToyOwsg::verifier_accept_prob(int key, const DensityMatrix& rho) const {
    const PureState target = key_state(key);
    return std::max(
        0.0, std::min(1.0, (target.amplitudes().adjoint() * rho.matrix() * target.amplitudes())(0, 0)
                               .real()));
}

OwsgAttackReport owsg_attack_experiment(const ToyOwsg& owsg, int lambda, int trials,
                                        RngStream& rng) {
    if (lambda < 1) throw usage_error("owsg_attack_experiment: lambda must be >= 1");
    if (trials < 1) throw usage_error("owsg_attack_experiment: trials must be >= 1");
    const int reps = 10 * lambda;
    const double bound = 1.0 - 1.0 / (5.0 * lambda);
    const int m = owsg.key_count();
    const int copies = std::max(
        1, static_cast<int>(std::ceil(std::pow(std::log2(std::max(2, m)), 2.0))));

    OwsgAttackReport report;
    report.trials = trials;
    report.soundness_bound = bound;
    double reverify_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        RngStream tr = rng.substream(t);
        const int hidden = static_cast<int>(tr.uniform_below(m));
        const DensityMatrix rho = owsg.state_for_key(hidden);

        // The attack sees: a supplier of fresh copies of rho and the keyed
        // verifier circuits. The hidden key index appears nowhere below.
        ThresholdInstance instance;
        instance.state_supplier = [&rho]() { return rho; };
        instance.theta = 0.5;
        instance.copies_per_test = copies;
        for (int k = 0; k < m; ++k)
            instance.tests.push_back(build_pi_k(
                [&owsg, k](const DensityMatrix& s) { return owsg.verifier_accept_prob(k, s); },
                reps, PiVariant::AllAccept, "key" + std::to_string(k)));

        ThresholdResult res = threshold_search(instance, tr);
        report.copies_used += res.copies_used;
        if (res.index.has_value()) {
            ++report.found;
            const double reverify = owsg.verifier_accept_prob(*res.index, rho);
            reverify_sum += reverify;
            if (reverify >= bound) ++report.successes;
            report.per_trial_found.push_back(1);
            report.per_trial_reverify.push_back(reverify);
        } else {
            report.per_trial_found.push_back(0);
            report.per_trial_reverify.push_back(-1.0);
        }
    }
    report.success_rate = static_cast<double>(report.successes) / trials;
    report.ci = wilson_interval(report.successes, trials);
    report.mean_reverify = report.found > 0 ? reverify_sum / report.found : 0.0;
    return report;
}

}  // namespace chrslab
