// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace chrslab {

namespace {

// Enumeration helper for register-addressed operations: strides and dims of
// the target registers plus an iterator over the complementary index set.
struct TargetView {
    std::vector<Eigen::Index> target_strides;
    std::vector<Eigen::Index> target_dims;
    Eigen::Index target_dim = 1;
    // Strides/dims of non-target registers.
    std::vector<Eigen::Index> env_strides;
    std::vector<Eigen::Index> env_dims;
    Eigen::Index env_dim = 1;
};

TargetView make_view(const MultiRegisterState& state, const std::vector<std::string>& targets) {
    if (targets.empty()) throw usage_error("register operation: empty target set");
    TargetView v;
    std::vector<bool> is_target(state.registers().size(), false);
    for (const auto& label : targets) {
        const int idx = state.register_index(label);
        if (is_target[idx]) throw usage_error("register operation: duplicate target " + label);
        is_target[idx] = true;
        v.target_strides.push_back(state.stride(idx));
        v.target_dims.push_back(state.registers()[idx].dim);
        v.target_dim *= state.registers()[idx].dim;
    }
    for (size_t i = 0; i < state.registers().size(); ++i) {
        if (!is_target[i]) {
            v.env_strides.push_back(state.stride(static_cast<int>(i)));
            v.env_dims.push_back(state.registers()[i].dim);
            v.env_dim *= state.registers()[i].dim;
        }
    }
    return v;
}

// Offset of the k-th assignment of a mixed-radix index set.
Eigen::Index offset_of(const std::vector<Eigen::Index>& dims,
                       const std::vector<Eigen::Index>& strides, Eigen::Index k) {
    Eigen::Index off = 0;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        off += (k % dims[i]) * strides[i];
        k /= dims[i];
    }
    return off;
}

Vec apply_on_targets(const MultiRegisterState& state, const Mat& op, const TargetView& v) {
    const Vec& in = state.amplitudes();
    Vec out = Vec::Zero(in.size());
    std::vector<Eigen::Index> toff(v.target_dim);
    for (Eigen::Index t = 0; t < v.target_dim; ++t)
        toff[t] = offset_of(v.target_dims, v.target_strides, t);
    Vec scratch(v.target_dim);
    for (Eigen::Index e = 0; e < v.env_dim; ++e) {
        const Eigen::Index base = offset_of(v.env_dims, v.env_strides, e);
        for (Eigen::Index t = 0; t < v.target_dim; ++t) scratch[t] = in[base + toff[t]];
        Vec res = op * scratch;
        for (Eigen::Index t = 0; t < v.target_dim; ++t) out[base + toff[t]] = res[t];
    }
    return out;
}

}  // namespace

Mat tensor_product(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

PureState tensor_product(const PureState& a, const PureState& b) {
    Vec out(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        out.segment(i * b.dim(), b.dim()) = a.amplitudes()[i] * b.amplitudes();
    return PureState(std::move(out));
}

DensityMatrix partial_trace(const MultiRegisterState& state,
                            const std::vector<std::string>& keep) {
    TargetView v = make_view(state, keep);
    const Vec& amps = state.amplitudes();
    Mat rho = Mat::Zero(v.target_dim, v.target_dim);
    std::vector<Eigen::Index> toff(v.target_dim);
    for (Eigen::Index t = 0; t < v.target_dim; ++t)
        toff[t] = offset_of(v.target_dims, v.target_strides, t);
    for (Eigen::Index e = 0; e < v.env_dim; ++e) {
        const Eigen::Index base = offset_of(v.env_dims, v.env_strides, e);
        for (Eigen::Index i = 0; i < v.target_dim; ++i) {
            const cxd ai = amps[base + toff[i]];
            if (ai == cxd(0, 0)) continue;
            for (Eigen::Index j = 0; j < v.target_dim; ++j)
                rho(i, j) += ai * std::conj(amps[base + toff[j]]);
        }
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Eigen::Index>& dims,
                            const std::vector<int>& keep) {
    Eigen::Index total = 1;
    for (auto d : dims) total *= d;
    if (total != rho.dim()) throw usage_error("partial_trace: dims do not match matrix");
    if (keep.empty()) throw usage_error("partial_trace: empty keep set");

    std::vector<Eigen::Index> strides(dims.size());
    Eigen::Index s = 1;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        strides[i] = s;
        s *= dims[i];
    }
    std::vector<bool> kept(dims.size(), false);
    std::vector<Eigen::Index> kdims, kstrides, edims, estrides;
    for (int k : keep) {
        if (k < 0 || k >= static_cast<int>(dims.size()) || kept[k])
            throw usage_error("partial_trace: bad keep index");
        kept[k] = true;
    }
    for (size_t i = 0; i < dims.size(); ++i) {
        (kept[i] ? kdims : edims).push_back(dims[i]);
        (kept[i] ? kstrides : estrides).push_back(strides[i]);
    }
    Eigen::Index kd = 1, ed = 1;
    for (auto d : kdims) kd *= d;
    for (auto d : edims) ed *= d;

    Mat out = Mat::Zero(kd, kd);
    for (Eigen::Index e = 0; e < ed; ++e) {
        const Eigen::Index base = offset_of(edims, estrides, e);
        for (Eigen::Index i = 0; i < kd; ++i) {
            const Eigen::Index oi = base + offset_of(kdims, kstrides, i);
            for (Eigen::Index j = 0; j < kd; ++j) {
                const Eigen::Index oj = base + offset_of(kdims, kstrides, j);
                out(i, j) += rho.matrix()(oi, oj);
            }
        }
    }
    return DensityMatrix(std::move(out));
}

double trace_distance(const Mat& rho, const Mat& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw usage_error("trace_distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho - sigma, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return trace_distance(rho.matrix(), sigma.matrix());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw usage_error("fidelity: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix());
    Vec sqrt_eigs = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<cxd>();
    Mat sqrt_rho = es.eigenvectors() * sqrt_eigs.asDiagonal() * es.eigenvectors().adjoint();
    Mat inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Mat> es2(inner, Eigen::EigenvaluesOnly);
    double f = 0.0;
    for (Eigen::Index i = 0; i < inner.rows(); ++i)
        f += std::sqrt(std::max(0.0, es2.eigenvalues()[i]));
    return f * f;
}

MultiRegisterState apply_operator_on(const MultiRegisterState& state, const Mat& op,
                                     const std::vector<std::string>& targets) {
    TargetView v = make_view(state, targets);
    if (op.rows() != op.cols() || op.rows() != v.target_dim)
        throw usage_error("apply_operator_on: operator dim does not match targets");
    return MultiRegisterState(state.registers(), apply_on_targets(state, op, v),
                              /*require_normalized=*/false);
}

MultiRegisterState apply_unitary_on(const MultiRegisterState& state, const Mat& u,
                                    const std::vector<std::string>& targets) {
    if (u.rows() != u.cols()) throw usage_error("apply_unitary_on: non-square operator");
    if ((u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > kOperatorTol)
        throw usage_error("apply_unitary_on: operator not unitary within 1e-9");
    return apply_operator_on(state, u, targets);
}

MultiRegisterState swap_registers(const MultiRegisterState& state, const std::string& a,
                                  const std::string& b) {
    const int ia = state.register_index(a), ib = state.register_index(b);
    const Eigen::Index da = state.registers()[ia].dim;
    if (da != state.registers()[ib].dim)
        throw usage_error("swap_registers: dimension mismatch");
    if (ia == ib) return state;
    const Eigen::Index sa = state.stride(ia), sb = state.stride(ib);
    const Vec& in = state.amplitudes();
    Vec out(in.size());
    for (Eigen::Index idx = 0; idx < in.size(); ++idx) {
        const Eigen::Index va = (idx / sa) % da;
        const Eigen::Index vb = (idx / sb) % da;
        const Eigen::Index swapped = idx + (vb - va) * sa + (va - vb) * sb;
        out[swapped] = in[idx];
    }
    return MultiRegisterState(state.registers(), std::move(out), false);
}

Mat pauli_string(int n, const std::string& labels) {
    if (n < 1 || static_cast<int>(labels.size()) != n)
        throw usage_error("pauli_string: label string length must equal qubit count");
    static const Mat I = Mat::Identity(2, 2);
    Mat X(2, 2), Y(2, 2), Z(2, 2);
    X << 0, 1, 1, 0;
    Y << 0, cxd(0, -1), cxd(0, 1), 0;
    Z << 1, 0, 0, -1;
    Mat out = Mat::Identity(1, 1);
    for (char c : labels) {
        switch (c) {
            case 'I': out = tensor_product(out, I); break;
            case 'X': out = tensor_product(out, X); break;
            case 'Y': out = tensor_product(out, Y); break;
            case 'Z': out = tensor_product(out, Z); break;
            default: throw usage_error(std::string("pauli_string: bad label ") + c);
        }
    }
    return out;
}

MeasureResult measure_binary(const MultiRegisterState& state, const MeasurementEffect& effect,
                             const std::vector<std::string>& targets, MeasureMode mode,
                             const std::string& ancilla_label) {
    TargetView v = make_view(state, targets);
    if (effect.dim() != v.target_dim)
        throw usage_error("measure_binary: effect dim does not match targets");

    MeasureResult r;
    if (mode == MeasureMode::Collapse) {
        // Born probability Tr[E |psi><psi|]; branches via the projective parts.
        // For a non-projector effect the post states use sqrt(E), sqrt(id-E).
        Mat sqrt_acc, sqrt_rej;
        if (effect.is_projector()) {
            sqrt_acc = effect.op();
            sqrt_rej = Mat::Identity(v.target_dim, v.target_dim) - effect.op();
        } else {
            Eigen::SelfAdjointEigenSolver<Mat> es(effect.op());
            Vec se = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<cxd>();
            Vec sr = (1.0 - es.eigenvalues().array()).max(0.0).sqrt().cast<cxd>();
            sqrt_acc = es.eigenvectors() * se.asDiagonal() * es.eigenvectors().adjoint();
            sqrt_rej = es.eigenvectors() * sr.asDiagonal() * es.eigenvectors().adjoint();
        }
        Vec acc = apply_on_targets(state, sqrt_acc, v);
        Vec rej = apply_on_targets(state, sqrt_rej, v);
        const double pa = acc.squaredNorm();
        r.p_accept = pa;
        if (pa > 1e-14)
            r.post_accept =
                MultiRegisterState(state.registers(), acc / std::sqrt(pa), false);
        if (1.0 - pa > 1e-14)
            r.post_reject =
                MultiRegisterState(state.registers(), rej / rej.norm(), false);
        return r;
    }

    if (!effect.is_projector())
        throw usage_error("measure_binary: coherent mode requires a projector effect");
    Vec acc = apply_on_targets(state, effect.op(), v);
    Vec rej = state.amplitudes() - acc;
    r.p_accept = acc.squaredNorm();
    // Ancilla appended as least significant register; |1> marks accept.
    Vec joint(state.dim() * 2);
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
        joint[2 * i] = rej[i];
        joint[2 * i + 1] = acc[i];
    }
    auto regs = state.registers();
    regs.push_back({ancilla_label, 2});
    r.coherent = MultiRegisterState(std::move(regs), std::move(joint), false);
    return r;
}

}  // namespace chrslab
