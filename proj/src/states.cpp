// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>

namespace chrslab {

namespace {

int log2_exact(Eigen::Index d) {
    if (d < 1) return -1;
    int n = 0;
    Eigen::Index v = d;
    while ((v & 1) == 0) {
        v >>= 1;
        ++n;
    }
    return v == 1 ? n : -1;
}

}  // namespace

PureState::PureState(Vec amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 1) throw usage_error("PureState: empty amplitude vector");
    const double nrm = amps_.norm();
    if (std::abs(nrm - 1.0) > kStateTol)
        throw usage_error("PureState: norm deviates from 1 by more than 1e-10");
    qubits_ = log2_exact(amps_.size());
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) throw usage_error("PureState::basis: index out of range");
    Vec v = Vec::Zero(dim);
    v[index] = 1.0;
    return PureState(std::move(v));
}

PureState PureState::zeros(int qubits) {
    if (qubits < 1) throw usage_error("PureState::zeros: need at least one qubit");
    return basis(Eigen::Index(1) << qubits, 0);
}

cxd PureState::overlap(const PureState& other) const {
    if (dim() != other.dim()) throw usage_error("PureState::overlap: dimension mismatch");
    return amps_.dot(other.amps_);
}

DensityMatrix::DensityMatrix(Mat m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
        throw usage_error("DensityMatrix: matrix must be square and nonempty");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kStateTol)
        throw usage_error("DensityMatrix: not Hermitian within 1e-10");
    if (std::abs(m_.trace().real() - 1.0) > kStateTol || std::abs(m_.trace().imag()) > kStateTol)
        throw usage_error("DensityMatrix: trace deviates from 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw usage_error("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.projector());
}

std::vector<std::pair<double, Vec>> DensityMatrix::pure_ensemble(double cutoff) const {
    Eigen::SelfAdjointEigenSolver<Mat> es(m_);
    std::vector<std::pair<double, Vec>> out;
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        const double w = es.eigenvalues()[i];
        if (w > cutoff) out.emplace_back(w, es.eigenvectors().col(i));
    }
    return out;
}

MultiRegisterState::MultiRegisterState(std::vector<Register> regs, Vec amplitudes,
                                       bool require_normalized)
    : regs_(std::move(regs)), amps_(std::move(amplitudes)) {
    Eigen::Index expect = 1;
    for (const auto& r : regs_) {
        if (r.dim < 1) throw usage_error("MultiRegisterState: register dim must be >= 1");
        expect *= r.dim;
    }
    if (expect != amps_.size())
        throw usage_error("MultiRegisterState: register dims do not match amplitude length");
    for (size_t i = 0; i < regs_.size(); ++i)
        for (size_t j = i + 1; j < regs_.size(); ++j)
            if (regs_[i].label == regs_[j].label)
                throw usage_error("MultiRegisterState: duplicate register label " + regs_[i].label);
    if (require_normalized && std::abs(amps_.norm() - 1.0) > kStateTol)
        throw usage_error("MultiRegisterState: norm deviates from 1");
}

MultiRegisterState MultiRegisterState::product(const std::vector<Register>& regs,
                                               const std::vector<Vec>& factors) {
    if (regs.size() != factors.size() || regs.empty())
        throw usage_error("MultiRegisterState::product: need one factor per register");
    Vec acc = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) {
        Vec next(acc.size() * factors[i].size());
        for (Eigen::Index a = 0; a < acc.size(); ++a)
            next.segment(a * factors[i].size(), factors[i].size()) = acc[a] * factors[i];
        acc = std::move(next);
    }
    return MultiRegisterState(regs, std::move(acc));
}

bool MultiRegisterState::has_register(const std::string& label) const {
    for (const auto& r : regs_)
        if (r.label == label) return true;
    return false;
}

int MultiRegisterState::register_index(const std::string& label) const {
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].label == label) return static_cast<int>(i);
    throw usage_error("MultiRegisterState: no register labelled " + label);
}

Eigen::Index MultiRegisterState::register_dim(const std::string& label) const {
    return regs_[register_index(label)].dim;
}

Eigen::Index MultiRegisterState::stride(int reg_index) const {
    Eigen::Index s = 1;
    for (size_t j = reg_index + 1; j < regs_.size(); ++j) s *= regs_[j].dim;
    return s;
}

void MultiRegisterState::append_register(const Register& reg, const Vec& factor) {
    if (reg.dim != factor.size())
        throw usage_error("append_register: factor length does not match register dim");
    if (has_register(reg.label))
        throw usage_error("append_register: duplicate label " + reg.label);
    Vec next(amps_.size() * reg.dim);
    for (Eigen::Index a = 0; a < amps_.size(); ++a)
        next.segment(a * reg.dim, reg.dim) = amps_[a] * factor;
    amps_ = std::move(next);
    regs_.push_back(reg);
}

void MultiRegisterState::normalize() {
    const double n = amps_.norm();
    if (n <= 0) throw usage_error("normalize: zero state");
    amps_ /= n;
}

MeasurementEffect MeasurementEffect::from_operator(Mat e) {
    if (e.rows() != e.cols()) throw usage_error("MeasurementEffect: operator must be square");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kOperatorTol)
        throw usage_error("MeasurementEffect: not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo < -1e-9 || hi > 1.0 + 1e-9)
        throw usage_error("MeasurementEffect: eigenvalues outside [0, 1]");
    // A projector has spectrum in {0, 1}.
    bool proj = true;
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        const double v = es.eigenvalues()[i];
        if (std::abs(v) > 1e-9 && std::abs(v - 1.0) > 1e-9) {
            proj = false;
            break;
        }
    }
    return MeasurementEffect(std::move(e), proj);
}

MeasurementEffect MeasurementEffect::projector(Mat p) {
    MeasurementEffect e = from_operator(std::move(p));
    if (!e.is_projector()) throw usage_error("MeasurementEffect::projector: spectrum not {0,1}");
    return e;
}

}  // namespace chrslab
