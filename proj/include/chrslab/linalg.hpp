// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chrslab/states.hpp"

namespace chrslab {

/// Kronecker product of two operators; register order (a, b).
Mat tensor_product(const Mat& a, const Mat& b);
/// Tensor product of two pure states; register order (a, b).
PureState tensor_product(const PureState& a, const PureState& b);

/// Reduced density matrix of `state` on the registers in `keep`, ordered as
/// listed there. `keep` must be nonempty.
DensityMatrix partial_trace(const MultiRegisterState& state,
                            const std::vector<std::string>& keep);

/// Partial trace of a density matrix over a product of dimensions `dims`;
/// `keep` lists the factor indices to retain, in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<int>& keep);

/// td(rho, sigma) = (1/2) ||rho - sigma||_1 via Hermitian eigendecomposition.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Mat& rho, const Mat& sigma);

/// Uhlmann fidelity F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Applies `u` to the (ordered) target registers, identity elsewhere.
/// `u`'s dimension must equal the product of the target dims and `u` must be
/// unitary within kOperatorTol.
MultiRegisterState apply_unitary_on(const MultiRegisterState& state, const Mat& u,
                                    const std::vector<std::string>& targets);

/// Same as apply_unitary_on but without the unitarity check (projectors etc).
MultiRegisterState apply_operator_on(const MultiRegisterState& state, const Mat& op,
                                     const std::vector<std::string>& targets);

/// Exchanges the contents of two same-dimension registers.
MultiRegisterState swap_registers(const MultiRegisterState& state,
                                  const std::string& a, const std::string& b);

/// n-qubit Pauli string from a label like "IXZY" (qubit 1 leftmost).
Mat pauli_string(int n, const std::string& labels);

enum class MeasureMode { Collapse, Coherent };

struct MeasureResult {
    double p_accept = 0.0;
    /// Collapse mode: renormalized accept/reject branches (absent when the
    /// branch has zero probability).
    std::optional<MultiRegisterState> post_accept;
    std::optional<MultiRegisterState> post_reject;
    /// Coherent mode: joint state with a fresh qubit ancilla appended, |1>
    /// marking the accept branch; unnormalized branches kept in superposition.
    std::optional<MultiRegisterState> coherent;
};

/// Two-outcome measurement of `effect` on the target registers.
/// Coherent mode requires a projector effect (the ancilla-controlled version
/// must be unitary) and `ancilla_label` names the appended record qubit.
MeasureResult measure_binary(const MultiRegisterState& state, const MeasurementEffect& effect,
                             const std::vector<std::string>& targets, MeasureMode mode,
                             const std::string& ancilla_label = "anc");

}  // namespace chrslab
