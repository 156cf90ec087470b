// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/shadows.hpp"

#include <algorithm>
#include <cmath>

namespace chrslab {

ClassicalShadow::ClassicalShadow(int n, std::vector<ShadowShot> shots)
    : n_(n), shots_(std::move(shots)) {
    if (n < 1) throw usage_error("ClassicalShadow: need at least one qubit");
    for (const auto& s : shots_) {
        if (s.clifford.qubits() != n)
            throw usage_error("ClassicalShadow: shot qubit count mismatch");
        if (s.outcome >= (std::uint64_t(1) << n))
            throw usage_error("ClassicalShadow: outcome out of range");
    }
}

nlohmann::json ClassicalShadow::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : shots_) {
        std::string bits;
        for (int q = 0; q < n_; ++q) bits.push_back((s.outcome >> (n_ - 1 - q)) & 1 ? '1' : '0');
        arr.push_back({{"clifford", s.clifford.gate_string()}, {"outcome", bits}});
    }
    return nlohmann::json{{"n", n_}, {"shots", arr}};
}

ClassicalShadow ClassicalShadow::from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    std::vector<ShadowShot> shots;
    for (const auto& rec : j.at("shots")) {
        const std::string bits = rec.at("outcome").get<std::string>();
        if (static_cast<int>(bits.size()) != n)
            throw usage_error("ClassicalShadow::from_json: outcome length mismatch");
        std::uint64_t outcome = 0;
        for (char c : bits) {
            if (c != '0' && c != '1')
                throw usage_error("ClassicalShadow::from_json: bad outcome bit");
            outcome = (outcome << 1) | (c == '1' ? 1u : 0u);
        }
        shots.push_back({CliffordElement::parse(n, rec.at("clifford").get<std::string>()), outcome});
    }
    return ClassicalShadow(n, std::move(shots));
}

namespace {

std::uint64_t born_sample(const Vec& amps, RngStream& rng) {
    double r = rng.next_double();
    double acc = 0.0;
    const Eigen::Index d = amps.size();
    for (Eigen::Index i = 0; i < d; ++i) {
        acc += std::norm(amps[i]);
        if (r < acc) return static_cast<std::uint64_t>(i);
    }
    return static_cast<std::uint64_t>(d - 1);
}

}  // namespace

ClassicalShadow shadow_gen(const PureState& state, int n_shots, RngStream& rng) {
    if (n_shots < 1) throw usage_error("shadow_gen: need at least one shot");
    const int n = state.qubits();
    if (n < 1) throw usage_error("shadow_gen: state dimension is not a power of two");
    std::vector<ShadowShot> shots;
    shots.reserve(n_shots);
    for (int i = 0; i < n_shots; ++i) {
        CliffordElement c = sample_uniform_clifford(n, rng);
        const std::uint64_t b = born_sample(c.apply(state.amplitudes()), rng);
        shots.push_back({std::move(c), b});
    }
    return ClassicalShadow(n, std::move(shots));
}

ClassicalShadow shadow_gen(const DensityMatrix& rho, int n_shots, RngStream& rng) {
    if (n_shots < 1) throw usage_error("shadow_gen: need at least one shot");
    int n = 0;
    while ((Eigen::Index(1) << n) < rho.dim()) ++n;
    if ((Eigen::Index(1) << n) != rho.dim())
        throw usage_error("shadow_gen: density dimension is not a power of two");
    // Mixed states sample an ensemble member per shot, then Born-sample.
    auto ensemble = rho.pure_ensemble();
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& member : ensemble) {
        acc += member.first;
        cumulative.push_back(acc);
    }
    std::vector<ShadowShot> shots;
    shots.reserve(n_shots);
    for (int i = 0; i < n_shots; ++i) {
        CliffordElement c = sample_uniform_clifford(n, rng);
        const double r = rng.next_double() * acc;
        size_t pick =
            std::lower_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin();
        if (pick >= ensemble.size()) pick = ensemble.size() - 1;
        const std::uint64_t b = born_sample(c.apply(ensemble[pick].second), rng);
        shots.push_back({std::move(c), b});
    }
    return ClassicalShadow(n, std::move(shots));
}

Mat shadow_single_estimate(int n, const ShadowShot& shot) {
    const Eigen::Index d = Eigen::Index(1) << n;
    Vec e = Vec::Zero(d);
    e[shot.outcome] = 1.0;
    Vec u = shot.clifford.apply_adjoint(e);
    return (static_cast<double>(d) + 1.0) * (u * u.adjoint()) - Mat::Identity(d, d);
}

namespace {

double median_of(std::vector<double>& vals) {
    const size_t k = vals.size() / 2;
    std::nth_element(vals.begin(), vals.begin() + k, vals.end());
    const double hi = vals[k];
    if (vals.size() % 2 == 1) return hi;
    std::nth_element(vals.begin(), vals.begin() + k - 1, vals.begin() + k);
    return 0.5 * (vals[k - 1] + hi);
}

template <typename PerShot>
double median_of_means(const ClassicalShadow& shadow, int n_batches, PerShot&& per_shot) {
    const auto& shots = shadow.shots();
    if (shots.empty()) throw usage_error("shadow estimate: empty shadow");
    if (n_batches < 1) throw usage_error("shadow estimate: need at least one batch");
    const size_t batch = shots.size() / static_cast<size_t>(n_batches);
    if (batch == 0) throw usage_error("shadow estimate: more batches than shots");
    std::vector<double> means;
    means.reserve(n_batches);
    for (int b = 0; b < n_batches; ++b) {
        double sum = 0.0;
        for (size_t i = b * batch; i < (b + 1) * batch; ++i) sum += per_shot(shots[i]);
        means.push_back(sum / static_cast<double>(batch));
    }
    return median_of(means);
}

}  // namespace

double shadow_estimate_observable(const ClassicalShadow& shadow, const Mat& obs, int n_batches) {
    const Eigen::Index d = Eigen::Index(1) << shadow.qubits();
    if (obs.rows() != d || obs.cols() != d)
        throw usage_error("shadow_estimate_observable: observable dimension mismatch");
    const double tr = obs.trace().real();
    const double scale = static_cast<double>(d) + 1.0;
    return median_of_means(shadow, n_batches, [&](const ShadowShot& s) {
        Vec e = Vec::Zero(d);
        e[s.outcome] = 1.0;
        Vec u = s.clifford.apply_adjoint(e);
        return scale * (u.adjoint() * obs * u)(0, 0).real() - tr;
    });
}

double shadow_estimate_fidelity(const ClassicalShadow& shadow, const Vec& w, int n_batches) {
    const Eigen::Index d = Eigen::Index(1) << shadow.qubits();
    if (w.size() != d) throw usage_error("shadow_estimate_fidelity: vector dimension mismatch");
    const double scale = static_cast<double>(d) + 1.0;
    return median_of_means(shadow, n_batches, [&](const ShadowShot& s) {
        // <b| C |w> is a single amplitude of the rotated target.
        const cxd amp = s.clifford.apply(w)[static_cast<Eigen::Index>(s.outcome)];
        return scale * std::norm(amp) - 1.0;
    });
}

int shadow_copies_for(double eps, double delta, int n_observables) {
    if (eps <= 0 || eps > 1 || delta <= 0 || delta >= 1 || n_observables < 1)
        throw usage_error("shadow_copies_for: bad parameters");
    return static_cast<int>(std::ceil(204.0 / (eps * eps) * std::log(2.0 * n_observables / delta)));
}

int shadow_default_batches(int n_observables, double delta) {
    if (delta <= 0 || delta >= 1 || n_observables < 1)
        throw usage_error("shadow_default_batches: bad parameters");
    return static_cast<int>(std::ceil(2.0 * std::log(2.0 * n_observables / delta)));
}

}  // namespace chrslab
