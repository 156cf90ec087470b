// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <vector>

namespace chrslab {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 for 95%).
WilsonInterval wilson_interval(long successes, long trials, double z = 1.96);

/// P[Bin(n, p) >= k].
double binomial_tail_geq(int n, int k, double p);

/// Two-sample Kolmogorov-Smirnov p-value (asymptotic Kolmogorov distribution).
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

/// Chi-square p-value for observed vs expected counts (upper tail).
double chi_square_pvalue(const std::vector<double>& observed,
                         const std::vector<double>& expected);

/// Upper regularized incomplete gamma Q(a, x).
double gamma_q(double a, double x);

struct RunningStats {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stddev() const;
    double stderr_mean() const;
};

}  // namespace chrslab
