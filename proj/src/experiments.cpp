// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/experiments.hpp"

#include <chrono>
#include <cmath>

#include "chrslab/owpuzz.hpp"
#include "chrslab/shadows.hpp"
#include "chrslab/swapsim.hpp"
#include "chrslab/threshold.hpp"

namespace chrslab {

namespace {

int defaulted(int v, int def) { return v > 0 ? v : def; }
double defaulted(double v, double def) { return v > 0.0 ? v : def; }

void require_field(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw usage_error("config field '" + field + "': " + what);
}

OwpParams puzzle_params(const ExperimentConfig& c, int n) {
    OwpParams p;
    p.n = n;
    p.shots_per_ell = c.fixed_shots ? 10000 : defaulted(c.shots, 1000);
    p.batches = c.batches;
    p.accept_threshold = defaulted(c.threshold, 0.5);
    // Desk-scale size-index range: [ell_lo, ell_lo + n] with n + 1 indices,
    // kept within the exact-uniform Clifford sampler's reach.
    const int lo = defaulted(c.ell_lo, 2);
    p.ell_lo = lo;
    p.ell_hi = lo + n;
    p.validate();
    return p;
}

OwpAdversary parse_strategy(const std::string& s) {
    if (s == "random") return OwpAdversary::RandomGuess;
    if (s == "mle") return OwpAdversary::ShadowMle;
    if (s == "zeros") return OwpAdversary::AllZeros;
    throw usage_error("config field 'strategy': must be random, mle or zeros");
}

ToyOwsgVariant parse_variant(const std::string& s) {
    if (s == "pauli") return ToyOwsgVariant::Pauli;
    if (s == "pauli-mixed") return ToyOwsgVariant::PauliMixed;
    throw usage_error("config field 'variant': must be pauli or pauli-mixed");
}

nlohmann::json config_echo(const ExperimentConfig& c) {
    return nlohmann::json{{"experiment", c.experiment},
                          {"n", c.n},
                          {"lambda", c.lambda},
                          {"d", c.d},
                          {"q", c.q},
                          {"t", c.t},
                          {"shots", c.shots},
                          {"trials", c.trials},
                          {"batches", c.batches},
                          {"inputs", c.inputs},
                          {"ell_lo", c.ell_lo},
                          {"theta", c.theta},
                          {"threshold", c.threshold},
                          {"entangle_reference", c.entangle_reference},
                          {"exact_mode", c.exact_mode},
                          {"fixed_shots", c.fixed_shots},
                          {"variant", c.variant},
                          {"strategy", c.strategy},
                          {"seed", c.seed},
                          {"memory_ceiling_gib", c.memory_ceiling_gib},
                          {"format", c.format}};
}

void fill_owp_report(ExperimentReport& out, const OwpExperimentReport& rep) {
    out.metrics["trials"] = rep.trials;
    out.metrics["successes"] = rep.successes;
    out.metrics["accept_rate"] = rep.rate;
    out.metrics["mean_passed"] = rep.mean_passed;
    out.metrics["mean_copies_consumed"] = rep.mean_copies_consumed;
    out.metrics["mean_exact_reads"] = rep.mean_exact_reads;
    out.intervals["accept_rate"] = {rep.ci.lo, rep.ci.hi};
    for (size_t i = 0; i < rep.per_trial_accept.size(); ++i)
        out.trial_records.push_back({{"accept", double(rep.per_trial_accept[i])},
                                     {"passed", double(rep.per_trial_passed[i])}});
}

ExperimentReport run_owpuzz_correctness(ExperimentConfig& c) {
    const int n = c.n = defaulted(c.n, 4);
    const int trials = c.trials = defaulted(c.trials, 200);
    OwpParams p = puzzle_params(c, n);
    RngStream rng(c.seed);
    auto rep = owp_security_experiment(n, trials, /*honest=*/true, OwpAdversary::RandomGuess, p, rng);
    ExperimentReport out;
    fill_owp_report(out, rep);
    out.metrics["n"] = n;
    out.metrics["shots_per_ell"] = p.resolved_shots();
    return out;
}

ExperimentReport run_owpuzz_attack(ExperimentConfig& c) {
    const int n = c.n = defaulted(c.n, 4);
    const int trials = c.trials = defaulted(c.trials, 1000);
    OwpParams p = puzzle_params(c, n);
    RngStream rng(c.seed);
    auto rep = owp_security_experiment(n, trials, /*honest=*/false, parse_strategy(c.strategy), p, rng);
    ExperimentReport out;
    fill_owp_report(out, rep);
    out.metrics["n"] = n;
    out.metrics["success_rate"] = rep.rate;
    return out;
}

ExperimentReport run_owsg_attack(ExperimentConfig& c) {
    const int n = c.n = defaulted(c.n, 3);
    const int lambda = c.lambda = defaulted(c.lambda, 3);
    const int trials = c.trials = defaulted(c.trials, 100);
    require_field(n <= 4, "n", "toy generator supports n <= 4");
    RngStream rng(c.seed);
    ChrsFamily family(rng.next_u64(), n, n);
    ToyOwsg owsg(n, family, parse_variant(c.variant));
    auto rep = owsg_attack_experiment(owsg, lambda, trials, rng);
    ExperimentReport out;
    out.metrics["trials"] = rep.trials;
    out.metrics["lambda"] = lambda;
    out.metrics["found"] = rep.found;
    out.metrics["successes"] = rep.successes;
    out.metrics["success_rate"] = rep.success_rate;
    out.metrics["mean_reverify"] = rep.mean_reverify;
    out.metrics["soundness_bound"] = rep.soundness_bound;
    out.metrics["copies_used"] = double(rep.copies_used);
    out.intervals["success_rate"] = {rep.ci.lo, rep.ci.hi};
    for (size_t i = 0; i < rep.per_trial_found.size(); ++i)
        out.trial_records.push_back({{"found", double(rep.per_trial_found[i])},
                                     {"reverify", rep.per_trial_reverify[i]}});
    return out;
}

ExperimentReport run_threshold_planted(ExperimentConfig& c) {
    const int m = c.n = defaulted(c.n, 8);
    const int copies = c.t = defaulted(c.t, 9);
    const double theta = c.theta = defaulted(c.theta, 0.5);
    const int trials = c.trials = defaulted(c.trials, 200);
    const double planted_p = 0.8, background_p = 0.1;

    RngStream rng(c.seed);
    int found = 0, found_planted = 0, reverified = 0;
    ExperimentReport out;
    for (int trial = 0; trial < trials; ++trial) {
        RngStream tr = rng.substream(trial);
        const int planted = static_cast<int>(tr.uniform_below(m));
        ThresholdInstance inst;
        for (int i = 0; i < m; ++i) {
            const double p = (i == planted) ? planted_p : background_p;
            inst.tests.push_back({"test" + std::to_string(i),
                                  [p](const DensityMatrix&) { return p; }});
        }
        inst.state_supplier = [] {
            return DensityMatrix(Mat(0.5 * Mat::Identity(2, 2)));
        };
        inst.theta = theta;
        inst.copies_per_test = copies;
        ThresholdResult res = threshold_search(inst, tr);

        double reverify_frac = -1.0;
        int is_planted = 0;
        if (res.index.has_value()) {
            ++found;
            is_planted = (*res.index == planted) ? 1 : 0;
            found_planted += is_planted;
            int accepts = 0;
            const int recheck = 1000;
            const double p = (*res.index == planted) ? planted_p : background_p;
            for (int i = 0; i < recheck; ++i)
                if (tr.next_double() < p) ++accepts;
            reverify_frac = double(accepts) / recheck;
            if (reverify_frac >= 1.0 / 3.0 - 0.1) ++reverified;
        }
        out.trial_records.push_back({{"found", res.index.has_value() ? 1.0 : 0.0},
                                     {"planted", double(is_planted)},
                                     {"reverify_frac", reverify_frac},
                                     {"rounds", double(res.rounds_used)}});
    }
    out.metrics["trials"] = trials;
    out.metrics["m"] = m;
    out.metrics["copies_per_test"] = copies;
    out.metrics["theta"] = theta;
    out.metrics["found_rate"] = double(found) / trials;
    out.metrics["planted_rate"] = double(found_planted) / trials;
    out.metrics["reverify_rate"] = found > 0 ? double(reverified) / found : 0.0;
    auto ci = wilson_interval(found_planted, trials);
    out.intervals["planted_rate"] = {ci.lo, ci.hi};

    if (c.exact_mode) {
        // Joint-register cross-check of the Bernoulli accounting at tiny sizes.
        RngStream er = rng.substream(999983);
        double max_dev = 0.0;
        PureState copy = sample_haar_state(4, er);
        PureState probe = sample_haar_state(4, er);
        MeasurementEffect eff = MeasurementEffect::projector(probe.projector());
        const double p = std::norm(copy.overlap(probe));
        for (int cc = 2; cc <= 4; ++cc)
            for (int k = 0; k <= cc; ++k)
                max_dev = std::max(max_dev, std::abs(exact_joint_threshold_prob(copy, eff, cc, k) -
                                                     binomial_tail_geq(cc, k, p)));
        out.metrics["exact_mode_max_dev"] = max_dev;
    }
    return out;
}

ExperimentReport run_swap_sim_error(ExperimentConfig& c) {
    const int d = c.d = defaulted(c.d, 4);
    const int q = c.q = defaulted(c.q, 9);
    const int n_psi = c.trials = defaulted(c.trials, 50);
    const int n_inputs = c.inputs = defaulted(c.inputs, 20);
    RngStream rng(c.seed);
    SwapErrorReport rep = swap_error_experiment(d, q, n_psi, n_inputs, c.entangle_reference, rng,
                                                c.memory_ceiling_gib * double(1ull << 30));
    ExperimentReport out;
    out.metrics["d"] = d;
    out.metrics["q"] = q;
    out.metrics["n_psi"] = rep.n_psi;
    out.metrics["n_inputs"] = rep.n_inputs;
    out.metrics["bound"] = rep.bound;
    out.metrics["max_td"] = rep.max_td;
    out.metrics["mean_td"] = rep.mean_td;
    out.metrics["max_td_zero_input"] = rep.max_td_zero_input;
    out.metrics["haar_avg_td"] = rep.haar_avg_td;
    out.metrics["haar_avg_mc_error"] = rep.haar_avg_mc_error;
    for (const auto& pr : rep.pairs)
        out.trial_records.push_back(
            {{"psi", double(pr.psi_index)}, {"input", double(pr.input_index)}, {"td", pr.td}});
    return out;
}

ExperimentReport run_two_simulators(ExperimentConfig& c) {
    const int d = c.d = defaulted(c.d, 4);
    const int q = c.q = defaulted(c.q, 9);
    const int n_psi = c.trials = defaulted(c.trials, 100);
    RngStream rng(c.seed);
    TwoSimulatorReport rep = two_simulator_demo(d, q, n_psi, rng);
    ExperimentReport out;
    out.metrics["d"] = d;
    out.metrics["q"] = q;
    out.metrics["n_psi"] = rep.n_psi;
    out.metrics["bound_single"] = rep.bound_single;
    out.metrics["td_single"] = rep.td_single_mean;
    out.metrics["td_single_max"] = rep.td_single_max;
    out.metrics["td_double"] = rep.td_double_mean;
    out.metrics["td_double_max"] = rep.td_double_max;
    for (size_t i = 0; i < rep.per_psi_single.size(); ++i)
        out.trial_records.push_back(
            {{"td_single", rep.per_psi_single[i]}, {"td_double", rep.per_psi_double[i]}});
    return out;
}

ExperimentReport run_shadow_bench(ExperimentConfig& c) {
    const int n = c.n = defaulted(c.n, 3);
    const int trials = c.trials = defaulted(c.trials, 500);
    require_field(n <= kMaxCliffordQubits, "n", "exceeds the Clifford sampler cap");
    const double eps = 1.0 / 3.0, delta = 0.1;
    const int n_observables = 2;
    const int copies =
        c.fixed_shots ? 10000
                      : (c.shots > 0 ? c.shots : shadow_copies_for(eps, delta, n_observables));
    const int batches = defaulted(c.batches, shadow_default_batches(n_observables, delta));
    const Eigen::Index dim = Eigen::Index(1) << n;

    RngStream rng(c.seed);
    int errors = 0;
    ExperimentReport out;
    for (int trial = 0; trial < trials; ++trial) {
        RngStream tr = rng.substream(trial);
        PureState psi = sample_haar_state(dim, tr);
        // Observable pair: the state's own projector (truth 1) and an
        // orthogonalized probe (truth 0).
        Vec probe = sample_haar_state(dim, tr).amplitudes();
        probe -= psi.amplitudes() * psi.amplitudes().dot(probe);
        probe /= probe.norm();

        ClassicalShadow shadow = shadow_gen(psi, copies, tr);
        const double est_self = shadow_estimate_fidelity(shadow, psi.amplitudes(), batches);
        const double est_orth = shadow_estimate_fidelity(shadow, probe, batches);
        const bool err = std::abs(est_self - 1.0) > eps || std::abs(est_orth) > eps;
        errors += err ? 1 : 0;
        out.trial_records.push_back(
            {{"est_self", est_self}, {"est_orth", est_orth}, {"error", err ? 1.0 : 0.0}});
    }
    out.metrics["n"] = n;
    out.metrics["trials"] = trials;
    out.metrics["copies"] = copies;
    out.metrics["batches"] = batches;
    out.metrics["eps"] = eps;
    out.metrics["delta"] = delta;
    out.metrics["error_rate"] = double(errors) / trials;
    auto ci = wilson_interval(errors, trials);
    out.intervals["error_rate"] = {ci.lo, ci.hi};
    return out;
}

ExperimentReport run_haar_moments(ExperimentConfig& c) {
    const int d = c.d = defaulted(c.d, 16);
    const long samples = c.shots = defaulted(c.shots, 100000);
    require_field(d >= 2, "d", "dimension must be >= 2");

    // Fixed trace-0 observable with unit operator norm.
    Mat obs = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) obs(i, i) = (i < d / 2) ? 1.0 : -1.0;
    if (d % 2 == 1) obs(d - 1, d - 1) = 0.0;

    RngStream rng(c.seed);
    RunningStats stats, zero_overlap;
    for (long i = 0; i < samples; ++i) {
        PureState psi = sample_haar_state(d, rng);
        double val = 0.0;
        for (int j = 0; j < d; ++j) val += obs(j, j).real() * std::norm(psi.amplitudes()[j]);
        stats.add(val);
        zero_overlap.add(std::norm(psi.amplitudes()[0]));
    }
    const double var_expect =
        (obs * obs).trace().real() / (double(d) * double(d + 1));
    ExperimentReport out;
    out.metrics["d"] = d;
    out.metrics["samples"] = double(samples);
    out.metrics["mean_obs"] = stats.mean;
    out.metrics["mean_sigma"] = stats.stderr_mean();
    out.metrics["mean_abs_over_sigma"] =
        stats.stderr_mean() > 0 ? std::abs(stats.mean) / stats.stderr_mean() : 0.0;
    out.metrics["var_obs"] = stats.variance();
    out.metrics["var_expect"] = var_expect;
    out.metrics["var_ratio"] = stats.variance() / var_expect;
    out.metrics["mean_zero_overlap"] = zero_overlap.mean;
    out.metrics["zero_overlap_expect"] = 1.0 / d;
    return out;
}

ExperimentReport run_symsub_check(ExperimentConfig& c) {
    const int d = c.d = defaulted(c.d, 2);
    const int l = c.q = defaulted(c.q, 1);
    require_field(l >= 1 && l <= 7, "q", "copy count l must lie in [1, 7]");
    require_field(std::pow(double(d), l + 1) <= double(1 << 22), "d", "joint register too large");

    RngStream rng(c.seed);
    PureState psi = sample_haar_state(d, rng);
    Vec phi_raw = sample_haar_state(d, rng).amplitudes();
    phi_raw -= psi.amplitudes() * psi.amplitudes().dot(phi_raw);
    phi_raw /= phi_raw.norm();

    std::vector<Register> regs;
    std::vector<Vec> factors;
    std::vector<std::string> labels;
    regs.push_back({"r0", d});
    factors.push_back(phi_raw);
    labels.push_back("r0");
    for (int i = 1; i <= l; ++i) {
        regs.push_back({"r" + std::to_string(i), d});
        factors.push_back(psi.amplitudes());
        labels.push_back("r" + std::to_string(i));
    }
    MultiRegisterState st = MultiRegisterState::product(regs, factors);
    SymProjectResult res = sym_project(st, labels);

    ExperimentReport out;
    out.metrics["d"] = d;
    out.metrics["l"] = l;
    out.metrics["p_sym_orthogonal"] = res.p_sym;
    out.metrics["p_sym_expected"] = 1.0 / (l + 1);
    out.metrics["p_sym_deviation"] = std::abs(res.p_sym - 1.0 / (l + 1));

    // Idempotence residual of the explicit projector at this shape (skipped
    // when the dense matrix would be large).
    if (std::pow(double(d), l + 1) <= 512.0) {
        Mat pi = sym_projector_matrix(d, l + 1);
        out.metrics["idempotence_residual"] = (pi * pi - pi).cwiseAbs().maxCoeff();
        out.metrics["projector_rank"] = pi.trace().real();
    }
    return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "owpuzz-correctness", "owpuzz-attack",       "owsg-attack",
        "threshold-search-planted", "swap-sim-error", "swap-two-simulators",
        "shadow-bench",       "haar-moments",        "symsub-check"};
    return names;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    require_field(config.format == "json" || config.format == "csv", "format",
                  "must be json or csv");
    require_field(config.memory_ceiling_gib > 0, "memory_ceiling_gib", "must be positive");
    require_field(config.n >= 0 && config.trials >= 0 && config.shots >= 0, "n/trials/shots",
                  "must be nonnegative");

    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig resolved = config;
    ExperimentReport report;
    if (config.experiment == "owpuzz-correctness")
        report = run_owpuzz_correctness(resolved);
    else if (config.experiment == "owpuzz-attack")
        report = run_owpuzz_attack(resolved);
    else if (config.experiment == "owsg-attack")
        report = run_owsg_attack(resolved);
    else if (config.experiment == "threshold-search-planted")
        report = run_threshold_planted(resolved);
    else if (config.experiment == "swap-sim-error")
        report = run_swap_sim_error(resolved);
    else if (config.experiment == "swap-two-simulators")
        report = run_two_simulators(resolved);
    else if (config.experiment == "shadow-bench")
        report = run_shadow_bench(resolved);
    else if (config.experiment == "haar-moments")
        report = run_haar_moments(resolved);
    else if (config.experiment == "symsub-check")
        report = run_symsub_check(resolved);
    else {
        std::string names;
        for (const auto& n : experiment_names()) names += " " + n;
        throw usage_error("unknown experiment '" + config.experiment + "'; available:" + names);
    }
    report.experiment = config.experiment;
    report.config = config_echo(resolved);
    report.seed = config.seed;
    report.duration_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    if (!config.out_path.empty()) write_report(report, config.format, config.out_path);
    return report;
}

}  // namespace chrslab
