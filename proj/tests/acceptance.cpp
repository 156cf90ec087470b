// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Acceptance suite: every release-gate criterion with its tolerance pinned in
// code, one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "chrslab/experiments.hpp"
#include "chrslab/linalg.hpp"
#include "chrslab/owpuzz.hpp"
#include "chrslab/shadows.hpp"
#include "chrslab/swapsim.hpp"
#include "chrslab/threshold.hpp"

using namespace chrslab;

namespace {

int g_failures = 0;

void report_line(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-28s %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Swap-simulation bound: d = 4, q = 9, 50 Haar psi x 20 reference-entangled
//    inputs, every per-query trace distance <= 6/(q+1) = 0.6; the empirical
//    maximum is reported. The Haar-averaged channel distance is reported
//    alongside for context.
void criterion_swap_bound() {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(20260101);
    SwapErrorReport rep = swap_error_experiment(4, 9, 50, 20, /*entangle_reference=*/true, rng);
    const bool pass = rep.max_td <= rep.bound + 1e-9;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "max_td=%.4f mean_td=%.4f bound=%.2f haar_avg_td=%.4f (mc_err=%.4f) zero_in=%.1e "
                  "[%.1fs]",
                  rep.max_td, rep.mean_td, rep.bound, rep.haar_avg_td, rep.haar_avg_mc_error,
                  rep.max_td_zero_input, elapsed_s(t0));
    report_line(1, "swap-simulation bound", pass, buf);
}

// 2. Symmetric-subspace lemma: p_sym = 1/(l+1) within 1e-9 for l in {1..5},
//    d in {2,4}; post-measurement branches match the closed forms within 1e-9.
void criterion_symmetric_subspace() {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(20260102);
    double worst_p = 0.0, worst_branch = 0.0;
    for (Eigen::Index d : {2, 4}) {
        for (int l = 1; l <= 5; ++l) {
            PureState psi = sample_haar_state(d, rng);
            Vec phi_raw = sample_haar_state(d, rng).amplitudes();
            phi_raw -= psi.amplitudes() * psi.amplitudes().dot(phi_raw);
            phi_raw /= phi_raw.norm();

            std::vector<Register> regs{{"r0", d}};
            std::vector<Vec> factors{phi_raw};
            std::vector<std::string> labels{"r0"};
            for (int i = 1; i <= l; ++i) {
                regs.push_back({"r" + std::to_string(i), d});
                factors.push_back(psi.amplitudes());
                labels.push_back("r" + std::to_string(i));
            }
            MultiRegisterState st = MultiRegisterState::product(regs, factors);
            SymProjectResult res = sym_project(st, labels);
            worst_p = std::max(worst_p, std::abs(res.p_sym - 1.0 / (l + 1)));

            // Closed forms: accept = (1/sqrt(l+1)) sum_i psi^i phi psi^(l-i);
            // reject = (l phi psi^l - sum_{i>=1} psi^i phi psi^(l-i)) / sqrt(l(l+1)).
            auto slot_state = [&](int slot) {
                Vec term = (slot == 0) ? phi_raw : psi.amplitudes();
                for (int j = 1; j <= l; ++j) {
                    const Vec& f = (j == slot) ? phi_raw : psi.amplitudes();
                    Vec next(term.size() * d);
                    for (Eigen::Index a = 0; a < term.size(); ++a)
                        next.segment(a * d, d) = term[a] * f;
                    term = std::move(next);
                }
                return term;
            };
            Vec accept = Vec::Zero(st.dim());
            for (int i = 0; i <= l; ++i) accept += slot_state(i);
            accept /= std::sqrt(double(l + 1));
            Vec reject = double(l) * st.amplitudes();
            for (int i = 1; i <= l; ++i) reject -= slot_state(i);
            reject /= std::sqrt(double(l) * (l + 1));

            worst_branch =
                std::max(worst_branch, (res.post_sym->amplitudes() - accept).norm());
            worst_branch =
                std::max(worst_branch, (res.post_antisym->amplitudes() - reject).norm());
        }
    }
    const bool pass = worst_p <= 1e-9 && worst_branch <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max |p_sym - 1/(l+1)|=%.2e max branch dev=%.2e [%.1fs]",
                  worst_p, worst_branch, elapsed_s(t0));
    report_line(2, "symmetric-subspace lemma", pass, buf);
}

// 3. Shadow tomography accuracy schedule: n = 3, N = ceil((204/eps^2)
//    ln(2M/delta)), eps = 1/3, delta = 1/10, M = 2; estimate errs by > eps in
//    at most delta + 0.05 of 500 independent shadows.
void criterion_shadow_schedule() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c;
    c.experiment = "shadow-bench";
    c.n = 3;
    c.trials = 500;
    c.seed = 20260103;
    ExperimentReport r = run_experiment(c);
    const double rate = r.metrics.at("error_rate");
    const bool pass = rate <= 0.1 + 0.05;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "error_rate=%.4f (cap 0.15) copies=%g batches=%g [%.1fs]",
                  rate, r.metrics.at("copies"), r.metrics.at("batches"), elapsed_s(t0));
    report_line(3, "shadow tomography schedule", pass, buf);
}

// 4. Shadow channel inverse, exhaustive at n = 1: averaging the single-shot
//    reconstruction over all 24 Cliffords x Born-weighted outcomes reproduces
//    20 random density matrices to 1e-12.
void criterion_shadow_channel_inverse() {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(20260104);
    const auto& table = single_qubit_clifford_table();
    double worst = 0.0;
    const bool table_ok = table.size() == 24;
    for (int rep = 0; rep < 20; ++rep) {
        PureState joint = sample_haar_state(4, rng);
        MultiRegisterState mrs({{"a", 2}, {"b", 2}}, joint.amplitudes());
        Mat rho = partial_trace(mrs, {"a"}).matrix();
        Mat acc = Mat::Zero(2, 2);
        for (const auto& c : table) {
            Mat rotated = c * rho * c.adjoint();
            for (int b = 0; b < 2; ++b) {
                Vec e = Vec::Zero(2);
                e[b] = 1.0;
                Vec u = c.adjoint() * e;
                acc += rotated(b, b).real() * (3.0 * (u * u.adjoint()) - Mat::Identity(2, 2));
            }
        }
        worst = std::max(worst, ((acc / 24.0) - rho).cwiseAbs().maxCoeff());
    }
    const bool pass = table_ok && worst <= 1e-12;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "cosets=%zu max reconstruction dev=%.2e [%.2fs]", table.size(),
                  worst, elapsed_s(t0));
    report_line(4, "shadow channel inverse", pass, buf);
}

// 5. Puzzle correctness: honest accept rate >= 0.95 at n = 4, 1000 shots per
//    size index, 200 trials.
void criterion_owpuzz_correctness() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c;
    c.experiment = "owpuzz-correctness";
    c.n = 4;
    c.shots = 1000;
    c.trials = 200;
    c.seed = 20260105;
    ExperimentReport r = run_experiment(c);
    const double rate = r.metrics.at("accept_rate");
    const bool pass = rate >= 0.95;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "accept_rate=%.4f (need >= 0.95) [%.1fs]", rate, elapsed_s(t0));
    report_line(5, "puzzle correctness", pass, buf);
}

// 6. Puzzle no-sample security: random-guess and placebo-statistic adversaries
//    succeed in at most 0.25 of 1000 trials at n = 4.
void criterion_owpuzz_security() {
    const auto t0 = std::chrono::steady_clock::now();
    double rates[2];
    int i = 0;
    for (const char* strategy : {"random", "mle"}) {
        ExperimentConfig c;
        c.experiment = "owpuzz-attack";
        c.n = 4;
        c.shots = 1000;
        c.trials = 1000;
        c.strategy = strategy;
        c.seed = 20260106 + i;
        rates[i++] = run_experiment(c).metrics.at("success_rate");
    }
    const bool pass = rates[0] <= 0.25 && rates[1] <= 0.25;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "random=%.4f mle=%.4f (cap 0.25) [%.1fs]", rates[0], rates[1],
                  elapsed_s(t0));
    report_line(6, "puzzle no-sample security", pass, buf);
}

// 7. Threshold search: planted instance (m = 8, 0.8 vs 0.1, theta = 0.5,
//    9 copies/test) returns the planted index in >= 50% of 200 runs and >= 95%
//    of returned indices re-verify at >= 1/3 - 0.1.
void criterion_threshold_search() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c;
    c.experiment = "threshold-search-planted";
    c.trials = 200;
    c.seed = 20260107;
    ExperimentReport r = run_experiment(c);
    const double planted = r.metrics.at("planted_rate");
    const double reverify = r.metrics.at("reverify_rate");
    const bool pass = planted >= 0.5 && reverify >= 0.95;
    char buf[140];
    std::snprintf(buf, sizeof(buf), "planted_rate=%.3f (>=0.5) reverify_rate=%.3f (>=0.95) [%.1fs]",
                  planted, reverify, elapsed_s(t0));
    report_line(7, "threshold search", pass, buf);
}

// 8. Generator attack: toy target at n = 3, lambda = 3; the returned key
//    re-verifies at >= 1 - 1/(5 lambda) in >= 50% of 100 trials, and the
//    p^(10 lambda) >= 1/3 => p >= 1 - 1/(5 lambda) algebra holds exactly on a
//    1000-point grid.
void criterion_owsg_attack() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c;
    c.experiment = "owsg-attack";
    c.n = 3;
    c.lambda = 3;
    c.trials = 100;
    c.seed = 20260108;
    ExperimentReport r = run_experiment(c);
    const double rate = r.metrics.at("success_rate");

    bool algebra = true;
    for (int lambda : {1, 2, 3, 5}) {
        const int reps = 10 * lambda;
        const double thresh = pi_k_soundness_threshold(reps);
        if (thresh < 1.0 - 1.0 / (5.0 * lambda)) algebra = false;
        for (int i = 0; i <= 1000; ++i) {
            const double p = i / 1000.0;
            if (std::pow(p, reps) >= 1.0 / 3.0 && p < thresh - 1e-12) algebra = false;
        }
    }
    const bool pass = rate >= 0.5 && algebra;
    char buf[140];
    std::snprintf(buf, sizeof(buf), "success_rate=%.3f (>=0.5) bound=%.4f algebra=%s [%.1fs]", rate,
                  r.metrics.at("soundness_bound"), algebra ? "ok" : "violated", elapsed_s(t0));
    report_line(8, "generator attack", pass, buf);
}

// 9. Two-simulator decoherence: d = 4, q = 9, over >= 100 Haar psi the shared
//    path stays within 12/(q+1) while the independent path decoheres
//    (>= 0.2 Haar-averaged).
void criterion_two_simulators() {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(20260109);
    TwoSimulatorReport rep = two_simulator_demo(4, 9, 100, rng);
    const bool pass = rep.td_single_mean <= rep.bound_single && rep.td_double_mean >= 0.2;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "td_single=%.4f (cap %.2f) td_double=%.4f (floor 0.2) [%.1fs]",
                  rep.td_single_mean, rep.bound_single, rep.td_double_mean, elapsed_s(t0));
    report_line(9, "two-simulator decoherence", pass, buf);
}

// 10. Haar moment suite: d = 16, 1e5 samples; mean of <psi|O|psi> within
//     3 sigma of 0 and variance within 10% of Tr[O^2]/(d(d+1)) for a trace-0
//     observable with unit operator norm.
void criterion_haar_moments() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c;
    c.experiment = "haar-moments";
    c.d = 16;
    c.shots = 100000;
    c.seed = 20260110;
    ExperimentReport r = run_experiment(c);
    const double mean_score = r.metrics.at("mean_abs_over_sigma");
    const double ratio = r.metrics.at("var_ratio");
    const bool pass = mean_score <= 3.0 && std::abs(ratio - 1.0) <= 0.10;
    char buf[140];
    std::snprintf(buf, sizeof(buf), "|mean|/sigma=%.2f (<=3) var_ratio=%.4f (within 10%%) [%.1fs]",
                  mean_score, ratio, elapsed_s(t0));
    report_line(10, "haar moment suite", pass, buf);
}

}  // namespace

int main() {
    std::printf("chrslab acceptance suite\n");
    criterion_swap_bound();
    criterion_symmetric_subspace();
    criterion_shadow_schedule();
    criterion_shadow_channel_inverse();
    criterion_owpuzz_correctness();
    criterion_owpuzz_security();
    criterion_threshold_search();
    criterion_owsg_attack();
    criterion_two_simulators();
    criterion_haar_moments();
    std::printf("%d of 10 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
