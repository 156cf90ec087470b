// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "chrslab/experiments.hpp"

namespace {

// Exit codes: 0 success, 2 usage/schema error, 3 resource-guard error,
// 4 I/O error.
constexpr int kUsageExit = 2;
constexpr int kResourceExit = 3;
constexpr int kIoExit = 4;

void add_common_flags(CLI::App* sub, chrslab::ExperimentConfig* cfg) {
    sub->add_option("--n", cfg->n, "Security parameter / test count (experiment default if 0)");
    sub->add_option("--lambda", cfg->lambda, "Amplification parameter (default 3)");
    sub->add_option("--d", cfg->d, "Register dimension (default per experiment)");
    sub->add_option("--q", cfg->q, "Symmetric-projector copies per query (default 9)");
    sub->add_option("--t", cfg->t, "Copies per threshold test (default 9)");
    sub->add_option("--shots", cfg->shots, "Shots / samples (default per experiment)");
    sub->add_option("--trials", cfg->trials, "Trial count (default per experiment)");
    sub->add_option("--batches", cfg->batches, "Median-of-means batches (schedule default if 0)");
    sub->add_option("--inputs", cfg->inputs, "Test inputs per sampled state (default 20)");
    sub->add_option("--ell-lo", cfg->ell_lo, "Smallest size index of the puzzle range (default 2)");
    sub->add_option("--theta", cfg->theta, "Threshold-search theta in [0.4, 0.6] (default 0.5)");
    sub->add_option("--threshold", cfg->threshold, "Per-index acceptance threshold (default 0.5)");
    sub->add_option("--seed", cfg->seed, "Master seed (default 0)");
    sub->add_option("--out", cfg->out_path, "Report output path (stdout when omitted)");
    sub->add_option("--format", cfg->format, "Report format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--variant", cfg->variant, "Toy generator variant: pauli | pauli-mixed")
        ->check(CLI::IsMember({"pauli", "pauli-mixed"}));
    sub->add_option("--strategy", cfg->strategy, "Puzzle adversary: random | mle | zeros")
        ->check(CLI::IsMember({"random", "mle", "zeros"}));
    sub->add_option("--memory-ceiling-gib", cfg->memory_ceiling_gib,
                    "Joint-register memory guard in GiB (default 4)");
    sub->add_flag("--entangle-reference,!--no-entangle-reference", cfg->entangle_reference,
                  "Entangle test inputs with a reference register (default on)");
    sub->add_flag("--exact-mode", cfg->exact_mode,
                  "Run the tiny joint-register cross-check where supported");
    sub->add_flag("--fixed-shots", cfg->fixed_shots,
                  "Use the fixed 10000-copy schedule instead of the accuracy formula");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "chrslab: numerical experiments on reference-state puzzles, shadow "
        "tomography, threshold-search attacks and swap-oracle simulation"};
    app.require_subcommand(1);

    std::vector<std::pair<std::string, std::string>> descriptions = {
        {"owpuzz-correctness", "Honest sample-and-verify acceptance rate of the puzzle"},
        {"owpuzz-attack", "No-sample adversaries against the puzzle verifier"},
        {"owsg-attack", "Threshold-search key recovery against the toy generator"},
        {"threshold-search-planted", "Planted-instance threshold search statistics"},
        {"swap-sim-error", "Simulated vs exact swap-oracle query distances"},
        {"swap-two-simulators", "Double query through shared vs independent simulators"},
        {"shadow-bench", "Fidelity-estimation error rate at the accuracy schedule"},
        {"haar-moments", "First/second moment checks of the state sampler"},
        {"symsub-check", "Symmetric-subspace measurement closed-form checks"},
    };

    chrslab::ExperimentConfig cfg;
    for (auto& [name, desc] : descriptions) {
        CLI::App* sub = app.add_subcommand(name, desc);
        add_common_flags(sub, &cfg);
        sub->callback([&cfg, name = name] { cfg.experiment = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageExit;
    }

    try {
        chrslab::ExperimentReport report = chrslab::run_experiment(cfg);
        if (cfg.out_path.empty()) {
            if (cfg.format == "csv")
                std::cout << chrslab::report_to_csv(report);
            else
                std::cout << report.to_json().dump(2) << std::endl;
        } else {
            std::cout << "report written to " << cfg.out_path << std::endl;
        }
        return 0;
    } catch (const chrslab::resource_error& e) {
        std::cerr << "resource error: " << e.what() << std::endl;
        return kResourceExit;
    } catch (const chrslab::io_error& e) {
        std::cerr << "io error: " << e.what() << std::endl;
        return kIoExit;
    } catch (const chrslab::usage_error& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return kUsageExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
