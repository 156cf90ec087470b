// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chrslab/report.hpp"

namespace chrslab {

/// Fully resolved command line for one experiment run. Zero-valued integer
/// fields select the experiment's documented default.
struct ExperimentConfig {
    std::string experiment;
    int n = 0;
    int lambda = 0;
    int d = 0;
    int q = 0;
    int t = 0;       // copies per test (threshold search)
    int shots = 0;
    int trials = 0;
    int batches = 0;
    int inputs = 0;  // test inputs per psi (swap experiments)
    int ell_lo = 0;  // size-index range start (puzzle experiments)
    double theta = 0.0;
    double threshold = 0.0;
    bool entangle_reference = true;
    bool exact_mode = false;
    bool fixed_shots = false;  // fixed 10000-copy schedule instead of the accuracy formula
    std::string variant = "pauli";     // toy generator variant
    std::string strategy = "random";   // puzzle adversary strategy
    std::uint64_t seed = 0;
    double memory_ceiling_gib = 4.0;
    std::string out_path;
    std::string format = "json";
};

/// Names accepted by run_experiment, in dispatch order.
const std::vector<std::string>& experiment_names();

/// Validates the config against the named experiment's schema, runs it, and
/// (when out_path is set) writes the report.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace chrslab
