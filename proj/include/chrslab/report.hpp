// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "chrslab/errors.hpp"

namespace chrslab {

inline constexpr const char* kReportSchema = "chrslab/1";

/// Result envelope common to every experiment: resolved config echo, metric
/// map (with confidence intervals where sampled), per-trial records for CSV
/// emission, and the wall-clock duration. Metrics are a pure function of
/// (config, seed, build); the duration field is excluded from that promise.
struct ExperimentReport {
    std::string experiment;
    nlohmann::json config;
    std::uint64_t seed = 0;
    std::map<std::string, double> metrics;
    std::map<std::string, std::pair<double, double>> intervals;
    std::vector<std::map<std::string, double>> trial_records;
    double duration_ms = 0.0;

    nlohmann::json to_json() const;
};

/// Rounds to 12 significant digits (the serialization contract).
double round_sig12(double x);

std::string report_to_csv(const ExperimentReport& report);

/// Writes the report in "json" or "csv" format; failures raise io_error.
void write_report(const ExperimentReport& report, const std::string& format,
                  const std::string& path);

}  // namespace chrslab
