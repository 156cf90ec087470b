// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/swapsim.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>

#include "chrslab/stats.hpp"

namespace chrslab {

Mat swap_oracle_unitary(const PureState& psi) {
    const Eigen::Index d = psi.dim();
    if (d < 2) throw usage_error("swap_oracle_unitary: dimension must be >= 2");
    if (std::abs(psi.amplitudes()[0]) > 1e-12)
        throw usage_error("swap_oracle_unitary: psi must be orthogonal to |0^n>");
    Vec e0 = Vec::Zero(d);
    e0[0] = 1.0;
    const Vec& p = psi.amplitudes();
    return Mat(Mat::Identity(d, d) - e0 * e0.adjoint() - p * p.adjoint() + e0 * p.adjoint() +
               p * e0.adjoint());
}

SwapOracle::SwapOracle(PureState psi) : psi_(std::move(psi)), u_(swap_oracle_unitary(psi_)) {
    const Eigen::Index d = u_.rows();
    if ((u_ - u_.adjoint()).cwiseAbs().maxCoeff() > kOperatorTol)
        throw usage_error("SwapOracle: unitary is not Hermitian");
    if ((u_ * u_ - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > kOperatorTol)
        throw usage_error("SwapOracle: unitary is not self-inverse");
    Vec e0 = Vec::Zero(d);
    e0[0] = 1.0;
    if ((u_ * e0 - psi_.amplitudes()).norm() > kStateTol ||
        (u_ * psi_.amplitudes() - e0).norm() > kStateTol)
        throw usage_error("SwapOracle: swap action check failed");
}

Mat sym_projector_matrix(Eigen::Index d, int copies) {
    if (copies < 1 || copies > 8) throw usage_error("sym_projector_matrix: copies in [1, 8]");
    std::vector<int> perm(copies);
    for (int i = 0; i < copies; ++i) perm[i] = i;
    Eigen::Index dim = 1;
    for (int i = 0; i < copies; ++i) dim *= d;
    Mat acc = Mat::Zero(dim, dim);
    long count = 0;
    do {
        for (Eigen::Index col = 0; col < dim; ++col) {
            std::vector<Eigen::Index> digits(copies);
            Eigen::Index c = col;
            for (int i = copies - 1; i >= 0; --i) {
                digits[i] = c % d;
                c /= d;
            }
            Eigen::Index row = 0;
            for (int i = 0; i < copies; ++i) row = row * d + digits[perm[i]];
            acc(row, col) += 1.0;
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / static_cast<double>(count);
}

MultiRegisterState apply_sym_projector(const MultiRegisterState& state,
                                       const std::vector<std::string>& regs) {
    if (regs.empty() || regs.size() > 8)
        throw usage_error("apply_sym_projector: register count in [1, 8]");
    const Eigen::Index d = state.register_dim(regs[0]);
    for (const auto& r : regs)
        if (state.register_dim(r) != d)
            throw usage_error("apply_sym_projector: register dimensions differ");

    // Pi over regs[first..end): (1/k) sum_i P_(first, i) (id (x) Pi over the tail).
    std::function<MultiRegisterState(const MultiRegisterState&, size_t)> rec =
        [&](const MultiRegisterState& s, size_t first) -> MultiRegisterState {
        const size_t k = regs.size() - first;
        if (k == 1) return s;
        MultiRegisterState inner = rec(s, first + 1);
        Vec acc = inner.amplitudes();
        for (size_t i = first + 1; i < regs.size(); ++i)
            acc += swap_registers(inner, regs[first], regs[i]).amplitudes();
        return MultiRegisterState(s.registers(), acc / static_cast<double>(k), false);
    };
    return rec(state, 0);
}

SymProjectResult sym_project(const MultiRegisterState& state,
                             const std::vector<std::string>& regs) {
    MultiRegisterState sym = apply_sym_projector(state, regs);
    SymProjectResult r;
    r.p_sym = sym.amplitudes().squaredNorm() / state.amplitudes().squaredNorm();
    if (r.p_sym > 1e-14) {
        Vec v = sym.amplitudes() / sym.amplitudes().norm();
        r.post_sym = MultiRegisterState(state.registers(), std::move(v), false);
    }
    Vec anti = state.amplitudes() - sym.amplitudes();
    const double an = anti.norm();
    if (an > 1e-7) r.post_antisym = MultiRegisterState(state.registers(), Vec(anti / an), false);
    return r;
}

MultiRegisterState sym_project_coherent(const MultiRegisterState& state,
                                        const std::vector<std::string>& regs,
                                        const std::string& anc_label) {
    MultiRegisterState sym = apply_sym_projector(state, regs);
    const Vec& s = sym.amplitudes();
    const Vec& in = state.amplitudes();
    Vec joint(in.size() * 2);
    for (Eigen::Index i = 0; i < in.size(); ++i) {
        joint[2 * i] = in[i] - s[i];
        joint[2 * i + 1] = s[i];
    }
    auto regs_out = state.registers();
    regs_out.push_back({anc_label, 2});
    return MultiRegisterState(std::move(regs_out), std::move(joint), false);
}

// ---------------------------------------------------------------------------
// Closed-form branch evaluation of one simulated query.
//
// With psi exactly orthogonal to |0^n>, every measurement record in the
// algorithm is accompanied by junk registers that are exactly orthogonal
// across record values (the swapped-in slot holds |0^n> against |psi>; the
// swap-out slot holds |0^n> against states orthogonal to it), so the branch
// tree with classical probabilities reproduces the coherent circuit's output
// marginal exactly. The dense circuit below is the test oracle for this.
// ---------------------------------------------------------------------------

namespace {

constexpr double kPrune = 1e-13;

struct Branch {
    double weight = 0.0;
    Mat density;  // normalized, on (ref (x) R)
    int a1 = 0;
    int a2 = 0;
};

struct PsiSplit {
    Vec v;       // reference-side coefficients of the psi component
    Vec w;       // remainder, R-part orthogonal to psi (and to |0^n>)
    Mat tr_w;    // Tr_R[w w^dag], reference-side
    double nv = 0.0;
    double nw = 0.0;
};

PsiSplit split_against_psi(const Vec& x, const Vec& psi, Eigen::Index dr, Eigen::Index d) {
    PsiSplit s;
    s.v = Vec::Zero(dr);
    for (Eigen::Index r = 0; r < dr; ++r)
        for (Eigen::Index j = 0; j < d; ++j) s.v[r] += std::conj(psi[j]) * x[r * d + j];
    s.w = x;
    for (Eigen::Index r = 0; r < dr; ++r)
        for (Eigen::Index j = 0; j < d; ++j) s.w[r * d + j] -= s.v[r] * psi[j];
    s.tr_w = Mat::Zero(dr, dr);
    for (Eigen::Index r = 0; r < dr; ++r)
        for (Eigen::Index rp = 0; rp < dr; ++rp)
            for (Eigen::Index j = 0; j < d; ++j)
                s.tr_w(r, rp) += s.w[r * d + j] * std::conj(s.w[rp * d + j]);
    s.nv = s.v.squaredNorm();
    s.nw = s.w.squaredNorm();
    return s;
}

Mat embed_ref_zero(const Mat& ref_part, Eigen::Index dr, Eigen::Index d) {
    Mat out = Mat::Zero(dr * d, dr * d);
    for (Eigen::Index r = 0; r < dr; ++r)
        for (Eigen::Index rp = 0; rp < dr; ++rp) out(r * d, rp * d) = ref_part(r, rp);
    return out;
}

Mat embed_ref_psi(const Mat& ref_part, const Vec& psi, Eigen::Index dr, Eigen::Index d) {
    Mat out = Mat::Zero(dr * d, dr * d);
    for (Eigen::Index r = 0; r < dr; ++r)
        for (Eigen::Index rp = 0; rp < dr; ++rp)
            for (Eigen::Index j = 0; j < d; ++j)
                for (Eigen::Index jp = 0; jp < d; ++jp)
                    out(r * d + j, rp * d + jp) = ref_part(r, rp) * psi[j] * std::conj(psi[jp]);
    return out;
}

// Reject-branch marginal shared by both halves:
// (q/(q+1))^2 w w^dag + (q/(q+1)^2) Tr_R[w w^dag] (x) psi psi^dag.
Mat reject_density(const PsiSplit& s, const Vec& psi, int q, Eigen::Index dr, Eigen::Index d,
                   double* weight_out) {
    const double qd = static_cast<double>(q);
    const double w_rej = s.nw * qd / (qd + 1.0);
    *weight_out = w_rej;
    if (w_rej <= kPrune) return Mat();
    Mat density = (qd * qd / ((qd + 1.0) * (qd + 1.0))) * (s.w * s.w.adjoint()) +
                  (qd / ((qd + 1.0) * (qd + 1.0))) * embed_ref_psi(s.tr_w, psi, dr, d);
    return density / w_rej;
}

std::vector<Branch> first_half(double weight, const Vec& x, const Vec& psi, int q,
                               Eigen::Index dr, Eigen::Index d) {
    std::vector<Branch> out;
    const double qd = static_cast<double>(q);

    // Coherent {|0^n><0^n|, id-} measurement into A1, with the conditional
    // fresh-copy swap-in on the accept branch: R become |psi| exactly.
    Vec r0(dr);
    for (Eigen::Index r = 0; r < dr; ++r) r0[r] = x[r * d];
    const double p0 = r0.squaredNorm();
    if (weight * p0 > kPrune) {
        Vec y = Vec::Zero(dr * d);
        const Vec rn = r0 / std::sqrt(p0);
        for (Eigen::Index r = 0; r < dr; ++r)
            for (Eigen::Index j = 0; j < d; ++j) y[r * d + j] = rn[r] * psi[j];
        out.push_back({weight * p0, Mat(y * y.adjoint()), 1, 0});
    }

    Vec x0 = x;
    for (Eigen::Index r = 0; r < dr; ++r) x0[r * d] = 0.0;
    if (x0.squaredNorm() * weight <= kPrune) return out;
    PsiSplit s = split_against_psi(x0, psi, dr, d);

    // Conditional symmetric-subspace measurement into A2; accepting swaps R
    // out for |0^n>.
    const double w_acc = s.nv + s.nw / (qd + 1.0);
    if (weight * w_acc > kPrune) {
        Mat ref_part = s.v * s.v.adjoint() + s.tr_w / (qd + 1.0);
        out.push_back({weight * w_acc, Mat(embed_ref_zero(ref_part, dr, d) / w_acc), 0, 1});
    }
    double w_rej = 0.0;
    Mat rej = reject_density(s, psi, q, dr, d, &w_rej);
    if (weight * w_rej > kPrune) out.push_back({weight * w_rej, std::move(rej), 0, 0});
    return out;
}

std::vector<Branch> second_half(double weight, const Vec& x, int a1, int a2, const Vec& psi,
                                int q, Eigen::Index dr, Eigen::Index d) {
    std::vector<Branch> out;
    const double qd = static_cast<double>(q);

    // Mirrored first step, outcome recorded into A2 by XOR. The branch
    // structure collapses: A2 flips to 0 on every surviving path, and the
    // mirrored swap-in never fires because its control is the updated A2.
    double p0 = 0.0;
    for (Eigen::Index r = 0; r < dr; ++r) p0 += std::norm(x[r * d]);
    if (a2 == 1) {
        if (p0 < 1.0 - 1e-9)
            throw usage_error("swap session: accept-tagged member is not |0^n> on R");
    } else if (p0 > 1e-9) {
        throw usage_error("swap session: mirrored swap-in branch reached (should be null)");
    }

    // Mirrored symmetric-subspace measurement, recorded into A1 by XOR;
    // the swap-out fires on (A2 = 0, updated A1 = 1), i.e. only when the
    // incoming A1 was 0.
    PsiSplit s = split_against_psi(x, psi, dr, d);
    const double w_acc = s.nv + s.nw / (qd + 1.0);
    if (weight * w_acc > kPrune) {
        if (a1 == 0) {
            Mat ref_part = s.v * s.v.adjoint() + s.tr_w / (qd + 1.0);
            out.push_back({weight * w_acc, Mat(embed_ref_zero(ref_part, dr, d) / w_acc), 1, 0});
        } else {
            Vec y = Vec::Zero(dr * d);
            for (Eigen::Index r = 0; r < dr; ++r)
                for (Eigen::Index j = 0; j < d; ++j)
                    y[r * d + j] = s.v[r] * psi[j] + s.w[r * d + j] / (qd + 1.0);
            Mat density = y * y.adjoint() +
                          (qd / ((qd + 1.0) * (qd + 1.0))) * embed_ref_psi(s.tr_w, psi, dr, d);
            out.push_back({weight * w_acc, Mat(density / w_acc), 0, 0});
        }
    }
    double w_rej = 0.0;
    Mat rej = reject_density(s, psi, q, dr, d, &w_rej);
    if (weight * w_rej > kPrune) out.push_back({weight * w_rej, std::move(rej), a1, a2});
    return out;
}

std::vector<std::pair<double, Vec>> branch_members(const Branch& b) {
    Eigen::SelfAdjointEigenSolver<Mat> es(b.density);
    std::vector<std::pair<double, Vec>> members;
    for (Eigen::Index i = 0; i < b.density.rows(); ++i) {
        const double w = es.eigenvalues()[i] * b.weight;
        if (w > kPrune) members.emplace_back(w, es.eigenvectors().col(i));
    }
    return members;
}

}  // namespace

SwapSimulatorSession::SwapSimulatorSession(PureState psi, int q, int query_budget)
    : psi_(std::move(psi)), q_(q), reservoir_remaining_(static_cast<long>(2 * q + 1) * query_budget) {
    if (q < 1) throw usage_error("SwapSimulatorSession: q must be >= 1");
    if (query_budget < 1) throw usage_error("SwapSimulatorSession: query budget must be >= 1");
    if (std::abs(psi_.amplitudes()[0]) > 1e-12)
        throw usage_error("SwapSimulatorSession: psi must be orthogonal to |0^n>");
}

DensityMatrix SwapSimulatorSession::query(const DensityMatrix& input, Eigen::Index ref_dim) {
    if (ref_dim < 1 || input.dim() % ref_dim != 0)
        throw usage_error("SwapSimulatorSession::query: bad reference dimension");
    const Eigen::Index d = input.dim() / ref_dim;
    if (d != psi_.dim())
        throw usage_error("SwapSimulatorSession::query: R dimension does not match psi");
    if (reservoir_remaining_ < 2 * q_ + 1)
        throw usage_error("SwapSimulatorSession::query: reservoir exhausted");
    reservoir_remaining_ -= 2 * q_ + 1;
    copies_consumed_ += 2 * q_ + 1;

    const Vec& psi = psi_.amplitudes();
    Mat rho_out = Mat::Zero(input.dim(), input.dim());
    double total = 0.0;
    last_branch_weights_.clear();
    for (const auto& [w_in, x_in] : input.pure_ensemble(kPrune)) {
        for (const Branch& mid : first_half(w_in, x_in, psi, q_, ref_dim, d)) {
            for (const auto& [w_mid, x_mid] : branch_members(mid)) {
                for (const Branch& fin :
                     second_half(w_mid, x_mid, mid.a1, mid.a2, psi, q_, ref_dim, d)) {
                    rho_out += fin.weight * fin.density;
                    total += fin.weight;
                    last_branch_weights_.push_back(fin.weight);
                }
            }
        }
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw usage_error("SwapSimulatorSession::query: branch norms do not sum to one");
    rho_out /= rho_out.trace().real();
    return DensityMatrix(std::move(rho_out));
}

// ---------------------------------------------------------------------------
// Dense coherent reference circuit.
// ---------------------------------------------------------------------------

namespace {

Eigen::Index reg_digit(const MultiRegisterState& s, Eigen::Index idx, int reg) {
    return (idx / s.stride(reg)) % s.registers()[reg].dim;
}

// Swaps the contents of registers a and b on index sectors where every
// (control register, value) pair matches.
MultiRegisterState controlled_swap(const MultiRegisterState& s,
                                   const std::vector<std::pair<std::string, Eigen::Index>>& controls,
                                   const std::string& ra, const std::string& rb) {
    const int ia = s.register_index(ra), ib = s.register_index(rb);
    const Eigen::Index da = s.registers()[ia].dim;
    if (da != s.registers()[ib].dim) throw usage_error("controlled_swap: dimension mismatch");
    std::vector<std::pair<int, Eigen::Index>> ctrl;
    for (const auto& [label, value] : controls) ctrl.emplace_back(s.register_index(label), value);
    const Eigen::Index sa = s.stride(ia), sb = s.stride(ib);
    const Vec& in = s.amplitudes();
    Vec out(in.size());
    for (Eigen::Index idx = 0; idx < in.size(); ++idx) {
        bool active = true;
        for (const auto& [reg, value] : ctrl)
            if (reg_digit(s, idx, reg) != value) {
                active = false;
                break;
            }
        if (!active) {
            out[idx] = in[idx];
            continue;
        }
        const Eigen::Index va = (idx / sa) % da, vb = (idx / sb) % da;
        out[idx + (vb - va) * sa + (va - vb) * sb] = in[idx];
    }
    return MultiRegisterState(s.registers(), std::move(out), false);
}

// Coherent {P, id-P} measurement on R with the outcome XOR-ed into an
// existing record qubit (P applied through the given projected amplitudes).
MultiRegisterState xor_record(const MultiRegisterState& s, const Vec& projected,
                              const std::string& record) {
    const int ir = s.register_index(record);
    if (s.registers()[ir].dim != 2) throw usage_error("xor_record: record must be a qubit");
    const Eigen::Index sr = s.stride(ir);
    const Vec& in = s.amplitudes();
    Vec out = Vec::Zero(in.size());
    for (Eigen::Index idx = 0; idx < in.size(); ++idx) {
        const Eigen::Index bit = (idx / sr) % 2;
        const Eigen::Index flipped = idx + (bit ? -sr : sr);
        out[flipped] += projected[idx];          // accept part flips the record
        out[idx] += in[idx] - projected[idx];    // reject part leaves it
    }
    return MultiRegisterState(s.registers(), std::move(out), false);
}

Vec project_zero_on_R(const MultiRegisterState& s) {
    const int ir = s.register_index("R");
    const Eigen::Index sr = s.stride(ir);
    const Eigen::Index dR = s.registers()[ir].dim;
    const Vec& in = s.amplitudes();
    Vec out = Vec::Zero(in.size());
    for (Eigen::Index idx = 0; idx < in.size(); ++idx)
        if ((idx / sr) % dR == 0) out[idx] = in[idx];
    return out;
}

// Symmetric-subspace projection of the listed registers restricted to the
// sectors where the control register holds `cval` (identity elsewhere).
Vec project_sym_controlled(const MultiRegisterState& s, const std::vector<std::string>& regs,
                           const std::string& control, Eigen::Index cval) {
    MultiRegisterState sym = apply_sym_projector(s, regs);
    const int ic = s.register_index(control);
    Vec out = s.amplitudes();
    for (Eigen::Index idx = 0; idx < out.size(); ++idx)
        out[idx] = (reg_digit(s, idx, ic) == cval) ? sym.amplitudes()[idx] : cxd(0, 0);
    return out;
}

double dense_query_bytes(Eigen::Index ref_dim, Eigen::Index d, int q) {
    double dim = static_cast<double>(ref_dim) * d * 4.0;  // ref, R, A1, A2
    dim *= static_cast<double>(d);                        // swap-in slot
    dim *= static_cast<double>(d);                        // swap-out slot
    for (int i = 0; i < q; ++i) dim *= static_cast<double>(d);
    return dim * 16.0;
}

}  // namespace

DensityMatrix swap_query_dense(const PureState& psi, int q, const DensityMatrix& input,
                               Eigen::Index ref_dim, double memory_ceiling_bytes) {
    if (q < 1) throw usage_error("swap_query_dense: q must be >= 1");
    if (ref_dim < 1 || input.dim() % ref_dim != 0)
        throw usage_error("swap_query_dense: bad reference dimension");
    const Eigen::Index d = input.dim() / ref_dim;
    if (d != psi.dim()) throw usage_error("swap_query_dense: R dimension does not match psi");
    if (dense_query_bytes(ref_dim, d, q) > memory_ceiling_bytes)
        throw resource_error("swap_query_dense: joint register exceeds the memory ceiling");

    const Vec& pv = psi.amplitudes();
    Vec e0 = Vec::Zero(d);
    e0[0] = 1.0;
    Vec q0(2);
    q0 << 1.0, 0.0;
    Mat p0 = e0 * e0.adjoint();
    MeasurementEffect p0_eff = MeasurementEffect::projector(p0);

    std::vector<std::string> sym_regs{"R"};
    for (int j = 0; j < q; ++j) sym_regs.push_back("C" + std::to_string(j));

    Mat rho_out = Mat::Zero(input.dim(), input.dim());
    for (const auto& [w_in, x_in] : input.pure_ensemble(1e-14)) {
        // ---- first half ----
        MultiRegisterState st({{"ref", ref_dim}, {"R", d}}, x_in, false);
        auto m1 = measure_binary(st, p0_eff, {"R"}, MeasureMode::Coherent, "A1");
        st = std::move(*m1.coherent);
        st.append_register({"F1", d}, pv);
        st = controlled_swap(st, {{"A1", 1}}, "R", "F1");
        for (int j = 0; j < q; ++j) st.append_register({"C" + std::to_string(j), d}, pv);
        st.append_register({"A2", 2}, q0);
        st = xor_record(st, project_sym_controlled(st, sym_regs, "A1", 0), "A2");
        st.append_register({"Z1", d}, e0);
        st = controlled_swap(st, {{"A1", 0}, {"A2", 1}}, "R", "Z1");
        DensityMatrix mid = partial_trace(st, {"ref", "R", "A1", "A2"});

        // ---- mirrored second half per purified member ----
        for (const auto& [w_mid, x_mid] : mid.pure_ensemble(1e-14)) {
            MultiRegisterState sh({{"ref", ref_dim}, {"R", d}, {"A1", 2}, {"A2", 2}}, x_mid, false);
            sh = xor_record(sh, project_zero_on_R(sh), "A2");
            sh.append_register({"F2", d}, pv);
            sh = controlled_swap(sh, {{"A2", 1}}, "R", "F2");
            std::vector<std::string> sym2{"R"};
            for (int j = 0; j < q; ++j) {
                sh.append_register({"D" + std::to_string(j), d}, pv);
                sym2.push_back("D" + std::to_string(j));
            }
            sh = xor_record(sh, project_sym_controlled(sh, sym2, "A2", 0), "A1");
            sh.append_register({"Z2", d}, e0);
            sh = controlled_swap(sh, {{"A2", 0}, {"A1", 1}}, "R", "Z2");
            rho_out += w_in * w_mid * partial_trace(sh, {"ref", "R"}).matrix();
        }
    }
    rho_out /= rho_out.trace().real();
    return DensityMatrix(std::move(rho_out));
}

// ---------------------------------------------------------------------------
// Experiments.
// ---------------------------------------------------------------------------

SwapErrorReport swap_error_experiment(Eigen::Index d, int q, int n_psi, int n_inputs,
                                      bool entangle_reference, RngStream& rng,
                                      double memory_ceiling_bytes) {
    if (d < 2 || n_psi < 1 || n_inputs < 1) throw usage_error("swap_error_experiment: bad shape");
    // Guard mirrors the joint register the simulated algorithm touches.
    if (dense_query_bytes(entangle_reference ? d : 1, d, q) > memory_ceiling_bytes)
        throw resource_error("swap_error_experiment: joint register exceeds the memory ceiling");

    const Eigen::Index dr = entangle_reference ? d : 1;
    SwapErrorReport report;
    report.bound = 6.0 / (q + 1.0);
    report.n_psi = n_psi;
    report.n_inputs = n_inputs;

    // Fixed inputs shared across psi samples (needed for the channel-average
    // comparison).
    RngStream input_rng = rng.substream(0x1A5);
    std::vector<Vec> inputs;
    for (int i = 0; i < n_inputs; ++i)
        inputs.push_back(sample_haar_state(dr * d, input_rng).amplitudes());

    std::vector<Mat> avg_sim(n_inputs, Mat::Zero(dr * d, dr * d));
    std::vector<Mat> avg_exact(n_inputs, Mat::Zero(dr * d, dr * d));
    std::vector<Mat> avg_sim_half(n_inputs, Mat::Zero(dr * d, dr * d));

    RunningStats tds;
    for (int p = 0; p < n_psi; ++p) {
        RngStream pr = rng.substream(1 + p);
        PureState psi = sample_haar_state_perp_zero(d, pr);
        Mat oracle = swap_oracle_unitary(psi);
        Mat full = tensor_product(Mat::Identity(dr, dr), oracle);

        for (int i = 0; i < n_inputs; ++i) {
            Vec exact_vec = full * inputs[i];
            Mat exact = exact_vec * exact_vec.adjoint();
            SwapSimulatorSession session(psi, q, 1);
            DensityMatrix sim =
                session.query(DensityMatrix(Mat(inputs[i] * inputs[i].adjoint())), dr);
            const double td = trace_distance(sim.matrix(), exact);
            tds.add(td);
            report.max_td = std::max(report.max_td, td);
            report.pairs.push_back({p, i, td});
            avg_sim[i] += sim.matrix();
            avg_exact[i] += exact;
            if (p % 2 == 0) avg_sim_half[i] += sim.matrix();
        }

        // |0^n> input goes through the exact branch.
        Vec zero_in = Vec::Zero(dr * d);
        zero_in[0] = 1.0;
        SwapSimulatorSession session(psi, q, 1);
        DensityMatrix sim0 = session.query(DensityMatrix(Mat(zero_in * zero_in.adjoint())), dr);
        Vec exact0 = full * zero_in;
        report.max_td_zero_input = std::max(
            report.max_td_zero_input, trace_distance(sim0.matrix(), Mat(exact0 * exact0.adjoint())));
    }
    report.mean_td = tds.mean;

    const int half_count = (n_psi + 1) / 2;
    for (int i = 0; i < n_inputs; ++i) {
        const Mat sim_mean = avg_sim[i] / n_psi;
        const Mat exact_mean = avg_exact[i] / n_psi;
        report.haar_avg_td = std::max(report.haar_avg_td, trace_distance(sim_mean, exact_mean));
        if (n_psi >= 4) {
            const Mat half_a = avg_sim_half[i] / half_count;
            const Mat half_b =
                (avg_sim[i] - avg_sim_half[i]) / std::max(1, n_psi - half_count);
            report.haar_avg_mc_error =
                std::max(report.haar_avg_mc_error, 0.5 * trace_distance(half_a, half_b));
        }
    }
    return report;
}

TwoSimulatorReport two_simulator_demo(Eigen::Index d, int q, int n_psi, RngStream& rng) {
    if (d < 2 || n_psi < 1) throw usage_error("two_simulator_demo: bad shape");
    TwoSimulatorReport report;
    report.bound_single = 12.0 / (q + 1.0);
    report.n_psi = n_psi;

    Vec in = Vec::Zero(d);
    in[0] = 1.0 / std::sqrt(2.0);
    in[1] = 1.0 / std::sqrt(2.0);
    Mat input = in * in.adjoint();

    RunningStats singles, doubles;
    for (int p = 0; p < n_psi; ++p) {
        RngStream pr = rng.substream(p);
        PureState psi = sample_haar_state_perp_zero(d, pr);

        // One session, one shared reservoir, queried twice.
        SwapSimulatorSession shared(psi, q, 2);
        DensityMatrix once = shared.query(DensityMatrix(input), 1);
        DensityMatrix twice = shared.query(once, 1);
        const double td_single = trace_distance(twice.matrix(), input);
        singles.add(td_single);
        report.td_single_max = std::max(report.td_single_max, td_single);
        report.per_psi_single.push_back(td_single);

        // Two independent sessions, one query each.
        SwapSimulatorSession first(psi, q, 1), second(psi, q, 1);
        DensityMatrix hop = first.query(DensityMatrix(input), 1);
        DensityMatrix out = second.query(hop, 1);
        const double td_double = trace_distance(out.matrix(), input);
        doubles.add(td_double);
        report.td_double_max = std::max(report.td_double_max, td_double);
        report.per_psi_double.push_back(td_double);
    }
    report.td_single_mean = singles.mean;
    report.td_double_mean = doubles.mean;
    return report;
}

}  // namespace chrslab
