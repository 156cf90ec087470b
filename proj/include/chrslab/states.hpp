// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "chrslab/errors.hpp"

namespace chrslab {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Tolerance for state-level invariants (norms, traces).
inline constexpr double kStateTol = 1e-10;
/// Tolerance for operator-level invariants (unitarity, PSD checks).
inline constexpr double kOperatorTol = 1e-9;

/// Unit-norm complex amplitude vector. Dimension is usually a power of two
/// (qubits() then reports the register width); subspace-restricted states of
/// general dimension are allowed and report qubits() == -1.
class PureState {
  public:
    explicit PureState(Vec amplitudes);

    static PureState basis(Eigen::Index dim, Eigen::Index index);
    /// |0...0> on `qubits` qubits.
    static PureState zeros(int qubits);

    Eigen::Index dim() const { return amps_.size(); }
    /// Qubit count, or -1 for non-power-of-two dimensions.
    int qubits() const { return qubits_; }
    const Vec& amplitudes() const { return amps_; }

    /// <this|other>
    cxd overlap(const PureState& other) const;

    Mat projector() const { return amps_ * amps_.adjoint(); }

  private:
    Vec amps_;
    int qubits_;
};

/// Hermitian, PSD, trace-one matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(Mat m);

    static DensityMatrix from_pure(const PureState& psi);

    Eigen::Index dim() const { return m_.rows(); }
    const Mat& matrix() const { return m_; }

    /// Spectral decomposition as an ensemble of pure states; eigenvalues
    /// below `cutoff` are dropped and weights renormalized to the trace.
    std::vector<std::pair<double, Vec>> pure_ensemble(double cutoff = 1e-14) const;

  private:
    Mat m_;
};

/// One named register of a multi-register state.
struct Register {
    std::string label;
    Eigen::Index dim;
};

/// State vector over an ordered product of labelled registers. The first
/// register is the most significant index block (tensor order follows the
/// register list). All register-addressed operations take label sets.
class MultiRegisterState {
  public:
    MultiRegisterState(std::vector<Register> regs, Vec amplitudes,
                       bool require_normalized = true);

    /// Product state psi_0 (x) psi_1 (x) ... over the given registers.
    static MultiRegisterState product(const std::vector<Register>& regs,
                                      const std::vector<Vec>& factors);

    const std::vector<Register>& registers() const { return regs_; }
    const Vec& amplitudes() const { return amps_; }
    Vec& amplitudes() { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }

    bool has_register(const std::string& label) const;
    int register_index(const std::string& label) const;  // throws if absent
    Eigen::Index register_dim(const std::string& label) const;
    /// Stride of register i: amplitudes step when that register's index
    /// increments by one.
    Eigen::Index stride(int reg_index) const;

    /// Appends a register in product state `factor` (least significant block).
    void append_register(const Register& reg, const Vec& factor);

    double norm() const { return amps_.norm(); }
    void normalize();

  private:
    std::vector<Register> regs_;
    Vec amps_;
};

/// Two-outcome measurement effect: a PSD operator E with 0 <= E <= id.
/// Projector-ness is tracked so coherent measurement modes can insist on it.
class MeasurementEffect {
  public:
    static MeasurementEffect from_operator(Mat e);
    static MeasurementEffect projector(Mat p);

    const Mat& op() const { return e_; }
    Eigen::Index dim() const { return e_.rows(); }
    bool is_projector() const { return projector_; }

  private:
    MeasurementEffect(Mat e, bool projector) : e_(std::move(e)), projector_(projector) {}
    Mat e_;
    bool projector_;
};

}  // namespace chrslab
