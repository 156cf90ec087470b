// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "chrslab/errors.hpp"

namespace chrslab {

double round_sig12(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : metrics) m[k] = round_sig12(v);
    nlohmann::json ci = nlohmann::json::object();
    for (const auto& [k, v] : intervals)
        ci[k] = {round_sig12(v.first), round_sig12(v.second)};
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : trial_records) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [k, v] : rec) row[k] = round_sig12(v);
        records.push_back(std::move(row));
    }
    return nlohmann::json{{"schema", kReportSchema},
                          {"experiment", experiment},
                          {"config", config},
                          {"seed", seed},
                          {"metrics", m},
                          {"intervals", ci},
                          {"trials", records},
                          {"duration_ms", round_sig12(duration_ms)}};
}

std::string report_to_csv(const ExperimentReport& report) {
    // One header row, one row per trial-level record, one summary row. Trial
    // columns are the union of record keys; metric columns (prefixed
    // "metric.") are filled only on the summary row, with the same
    // 12-significant-digit values as the JSON form.
    std::set<std::string> cols;
    for (const auto& rec : report.trial_records)
        for (const auto& [k, v] : rec) cols.insert(k);

    std::ostringstream os;
    os << "row";
    for (const auto& c : cols) os << ',' << c;
    for (const auto& [k, v] : report.metrics) os << ",metric." << k;
    os << '\n';
    char buf[40];
    long i = 0;
    for (const auto& rec : report.trial_records) {
        os << "trial" << i++;
        for (const auto& c : cols) {
            os << ',';
            auto it = rec.find(c);
            if (it != rec.end()) {
                std::snprintf(buf, sizeof(buf), "%.12g", it->second);
                os << buf;
            }
        }
        for (size_t k = 0; k < report.metrics.size(); ++k) os << ',';
        os << '\n';
    }
    os << "summary";
    for (size_t k = 0; k < cols.size(); ++k) os << ',';
    for (const auto& [k, v] : report.metrics) {
        std::snprintf(buf, sizeof(buf), "%.12g", round_sig12(v));
        os << ',' << buf;
    }
    os << '\n';
    return os.str();
}

void write_report(const ExperimentReport& report, const std::string& format,
                  const std::string& path) {
    if (format != "json" && format != "csv")
        throw usage_error("write_report: format must be json or csv");
    std::ofstream out(path);
    if (!out) throw io_error("write_report: cannot open " + path);
    if (format == "json")
        out << report.to_json().dump(2) << '\n';
    else
        out << report_to_csv(report);
    if (!out.good()) throw io_error("write_report: write failed for " + path);
}

}  // namespace chrslab
