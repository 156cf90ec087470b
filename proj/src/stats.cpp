// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "chrslab/errors.hpp"

namespace chrslab {

WilsonInterval wilson_interval(long successes, long trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double binomial_tail_geq(int n, int k, double p) {
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    // Sum from the top down in log space for stability at small p.
    double total = 0.0;
    double log_p = std::log(p), log_q = std::log1p(-p);
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    for (int j = k; j <= n; ++j) {
        double log_c = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
        total += std::exp(log_c + j * log_p + (n - j) * log_q);
    }
    return std::min(1.0, total);
}

namespace {

// Kolmogorov survival function Q(lambda) = 2 sum_j (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw usage_error("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw usage_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        // Series for P(a,x), return 1 - P.
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return std::clamp(1.0 - p, 0.0, 1.0);
    }
    // Continued fraction for Q(a,x) (modified Lentz).
    const double fpmin = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::clamp(std::exp(-x + a * std::log(x) - std::lgamma(a)) * h, 0.0, 1.0);
}

double chi_square_pvalue(const std::vector<double>& observed,
                         const std::vector<double>& expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw usage_error("chi_square: size mismatch");
    double stat = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0) throw usage_error("chi_square: nonpositive expected count");
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    const double dof = static_cast<double>(observed.size() - 1);
    return gamma_q(dof / 2.0, stat / 2.0);
}

double RunningStats::stddev() const { return std::sqrt(variance()); }
double RunningStats::stderr_mean() const {
    return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
}

}  // namespace chrslab
