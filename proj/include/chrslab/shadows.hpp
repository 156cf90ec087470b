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

#include <json.hpp>

#include "chrslab/clifford.hpp"
#include "chrslab/rng.hpp"
#include "chrslab/states.hpp"

namespace chrslab {

/// One snapshot: a random Clifford and the computational-basis outcome
/// observed after rotating the state by it.
struct ShadowShot {
    CliffordElement clifford;
    std::uint64_t outcome = 0;
};

/// Classical shadow of an n-qubit state: a list of (Clifford, outcome) shots.
class ClassicalShadow {
  public:
    ClassicalShadow(int n, std::vector<ShadowShot> shots);

    int qubits() const { return n_; }
    const std::vector<ShadowShot>& shots() const { return shots_; }

    nlohmann::json to_json() const;
    static ClassicalShadow from_json(const nlohmann::json& j);

  private:
    int n_;
    std::vector<ShadowShot> shots_;
};

/// Collects n_shots independent global-Clifford snapshots of the state.
ClassicalShadow shadow_gen(const PureState& state, int n_shots, RngStream& rng);
ClassicalShadow shadow_gen(const DensityMatrix& rho, int n_shots, RngStream& rng);

/// Per-shot reconstruction (2^n + 1) C^dag |b><b| C - id; Hermitian, trace 1,
/// generally not PSD.
Mat shadow_single_estimate(int n, const ShadowShot& shot);

/// Median-of-means estimate of Tr[obs rho] from the shadow. The shots are
/// split into n_batches equal batches (trailing remainder dropped).
double shadow_estimate_observable(const ClassicalShadow& shadow, const Mat& obs, int n_batches);

/// Fast path for rank-one observables |w><w|.
double shadow_estimate_fidelity(const ClassicalShadow& shadow, const Vec& w, int n_batches);

/// Copy count N >= (204 / eps^2) ln(2 M / delta) (rank-one observables).
int shadow_copies_for(double eps, double delta, int n_observables);

/// Default median-of-means batch count, ceil(2 ln(2 M / delta)).
int shadow_default_batches(int n_observables, double delta);

}  // namespace chrslab
