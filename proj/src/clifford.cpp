// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chrslab {

namespace {

// GF(2) vectors over 2n bits, interleaved (x_0, z_0, x_1, z_1, ...).
constexpr std::uint32_t kEvenMask = 0x55555555u;

int parity(std::uint32_t v) { return __builtin_popcount(v) & 1; }

std::uint32_t full_mask(int n) { return (n >= 16) ? 0xFFFFFFFFu : ((1u << (2 * n)) - 1); }

}  // namespace

int gf2_symplectic_inner(std::uint32_t u, std::uint32_t v, int n) {
    (void)n;
    const std::uint32_t ux = u & kEvenMask, uz = (u >> 1) & kEvenMask;
    const std::uint32_t vx = v & kEvenMask, vz = (v >> 1) & kEvenMask;
    return parity((ux & vz) ^ (uz & vx));
}

namespace {

std::uint32_t transvect(std::uint32_t h, std::uint32_t x, int n) {
    return gf2_symplectic_inner(x, h, n) ? (x ^ h) : x;
}

// Applies a list of transvections in order.
std::uint32_t apply_chain(const std::vector<std::uint32_t>& hs, std::uint32_t x, int n) {
    for (std::uint32_t h : hs) x = transvect(h, x, n);
    return x;
}

// Searches (from a random offset) for a nonzero vector satisfying
// <v_i, z> = 1 for every v_i in `conds`.
std::uint32_t find_solution(const std::vector<std::uint32_t>& conds, int n, RngStream& rng) {
    const std::uint32_t mask = full_mask(n);
    const std::uint32_t start = static_cast<std::uint32_t>(rng.next_u64()) & mask;
    for (std::uint32_t i = 0; i <= mask; ++i) {
        const std::uint32_t z = (start + i) & mask;
        if (z == 0) continue;
        bool ok = true;
        for (std::uint32_t c : conds)
            if (!gf2_symplectic_inner(c, z, n)) {
                ok = false;
                break;
            }
        if (ok) return z;
    }
    throw usage_error("symplectic sampling: no transvection solution (unreachable)");
}

// Transvections mapping x onto y (both nonzero).
std::vector<std::uint32_t> find_transvection(std::uint32_t x, std::uint32_t y, int n,
                                             RngStream& rng) {
    if (x == y) return {};
    if (gf2_symplectic_inner(x, y, n)) return {x ^ y};
    const std::uint32_t z = find_solution({x, y}, n, rng);
    return {static_cast<std::uint32_t>(x ^ z), static_cast<std::uint32_t>(z ^ y)};
}

}  // namespace

std::vector<std::uint32_t> sample_symplectic_gf2(int n, RngStream& rng) {
    if (n == 0) return {};
    const std::uint32_t mask = full_mask(n);
    const std::uint32_t e0 = 1u;  // x_0
    const std::uint32_t e1 = 2u;  // z_0

    // Uniform hyperbolic pair (f1, f2).
    std::uint32_t f1 = 0;
    while (f1 == 0) f1 = static_cast<std::uint32_t>(rng.next_u64()) & mask;
    const std::uint32_t w =
        gf2_symplectic_inner(f1, e1, n) ? e1 : find_solution({f1}, n, rng);
    const std::uint32_t u = static_cast<std::uint32_t>(rng.next_u64()) & mask;
    const std::uint32_t f2 = gf2_symplectic_inner(f1, u, n) ? u : (u ^ w);

    // U = T1 o T2 with T2 applied first: U e0 = f1, U e1 = f2.
    std::vector<std::uint32_t> t1 = find_transvection(e0, f1, n, rng);
    std::uint32_t g = f2;
    for (auto it = t1.rbegin(); it != t1.rend(); ++it) g = transvect(*it, g, n);
    std::vector<std::uint32_t> chain;  // T2 then T1
    if (g != e1) {
        if (gf2_symplectic_inner(e1, g, n)) {
            chain.push_back(e1 ^ g);
        } else {
            const std::uint32_t z = find_solution({e1, g, e0}, n, rng);
            chain.push_back(e1 ^ z);
            chain.push_back(z ^ g);
        }
    }
    chain.insert(chain.end(), t1.begin(), t1.end());

    // Recurse on the symplectic complement (bit positions 2..2n-1).
    std::vector<std::uint32_t> inner = sample_symplectic_gf2(n - 1, rng);
    std::vector<std::uint32_t> cols(2 * n);
    cols[0] = apply_chain(chain, e0, n);
    cols[1] = apply_chain(chain, e1, n);
    for (int j = 0; j < 2 * (n - 1); ++j) cols[2 + j] = apply_chain(chain, inner[j] << 2, n);
    return cols;
}

CliffordTableau CliffordTableau::identity(int n) {
    CliffordTableau t;
    t.n = n;
    t.x_image.resize(n);
    t.z_image.resize(n);
    for (int q = 0; q < n; ++q) {
        t.x_image[q] = {1u << q, 0, false};
        t.z_image[q] = {0, 1u << q, false};
    }
    return t;
}

bool CliffordTableau::is_identity() const {
    for (int q = 0; q < n; ++q) {
        const PauliBits& x = x_image[q];
        const PauliBits& z = z_image[q];
        if (x.x != (1u << q) || x.z != 0 || x.neg) return false;
        if (z.x != 0 || z.z != (1u << q) || z.neg) return false;
    }
    return true;
}

bool CliffordTableau::is_valid() const {
    auto inner = [](const PauliBits& a, const PauliBits& b) {
        return parity((a.x & b.z) ^ (a.z & b.x));
    };
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (inner(x_image[p], x_image[q]) != 0) return false;
            if (inner(z_image[p], z_image[q]) != 0) return false;
            if (inner(x_image[p], z_image[q]) != (p == q ? 1 : 0)) return false;
        }
    }
    return true;
}

namespace {

// Conjugation update rules for the generating gates.
void gate_on_pauli(const CliffordGate& g, PauliBits& p) {
    switch (g.kind) {
        case CliffordGate::Kind::H: {
            const std::uint32_t m = 1u << g.a;
            const bool xb = p.x & m, zb = p.z & m;
            if (xb && zb) p.neg = !p.neg;
            p.x = (p.x & ~m) | (zb ? m : 0);
            p.z = (p.z & ~m) | (xb ? m : 0);
            break;
        }
        case CliffordGate::Kind::S: {
            const std::uint32_t m = 1u << g.a;
            const bool xb = p.x & m, zb = p.z & m;
            if (xb && zb) p.neg = !p.neg;
            if (xb) p.z ^= m;
            break;
        }
        case CliffordGate::Kind::CX: {
            const std::uint32_t mc = 1u << g.a, mt = 1u << g.b;
            const bool xc = p.x & mc, zc = p.z & mc, xt = p.x & mt, zt = p.z & mt;
            if (xc && zt && (xt == zc)) p.neg = !p.neg;
            if (xc) p.x ^= mt;
            if (zt) p.z ^= mc;
            break;
        }
    }
}

void gate_on_tableau(const CliffordGate& g, CliffordTableau& t) {
    for (auto& p : t.x_image) gate_on_pauli(g, p);
    for (auto& p : t.z_image) gate_on_pauli(g, p);
}

void gate_on_state(const CliffordGate& g, Vec& v, int n, bool dagger) {
    const Eigen::Index dim = v.size();
    switch (g.kind) {
        case CliffordGate::Kind::H: {
            const Eigen::Index bit = Eigen::Index(1) << (n - 1 - g.a);
            const double inv = 1.0 / std::sqrt(2.0);
            for (Eigen::Index i = 0; i < dim; ++i) {
                if (i & bit) continue;
                const cxd a = v[i], b = v[i | bit];
                v[i] = inv * (a + b);
                v[i | bit] = inv * (a - b);
            }
            break;
        }
        case CliffordGate::Kind::S: {
            const Eigen::Index bit = Eigen::Index(1) << (n - 1 - g.a);
            const cxd phase = dagger ? cxd(0, -1) : cxd(0, 1);
            for (Eigen::Index i = 0; i < dim; ++i)
                if (i & bit) v[i] *= phase;
            break;
        }
        case CliffordGate::Kind::CX: {
            const Eigen::Index cb = Eigen::Index(1) << (n - 1 - g.a);
            const Eigen::Index tb = Eigen::Index(1) << (n - 1 - g.b);
            for (Eigen::Index i = 0; i < dim; ++i)
                if ((i & cb) && !(i & tb)) std::swap(v[i], v[i | tb]);
            break;
        }
    }
}

}  // namespace

CliffordElement::CliffordElement(int n, std::vector<CliffordGate> gates)
    : n_(n), gates_(std::move(gates)) {
    if (n < 1) throw usage_error("CliffordElement: need at least one qubit");
    for (const auto& g : gates_) {
        if (g.a < 0 || g.a >= n ||
            (g.kind == CliffordGate::Kind::CX && (g.b < 0 || g.b >= n || g.b == g.a)))
            throw usage_error("CliffordElement: gate qubit out of range");
    }
}

Vec CliffordElement::apply(const Vec& state) const {
    if (state.size() != (Eigen::Index(1) << n_))
        throw usage_error("CliffordElement::apply: dimension mismatch");
    Vec v = state;
    for (const auto& g : gates_) gate_on_state(g, v, n_, false);
    return v;
}

Vec CliffordElement::apply_adjoint(const Vec& state) const {
    if (state.size() != (Eigen::Index(1) << n_))
        throw usage_error("CliffordElement::apply_adjoint: dimension mismatch");
    Vec v = state;
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) gate_on_state(*it, v, n_, true);
    return v;
}

const Mat& CliffordElement::unitary() const {
    if (!unitary_) {
        const Eigen::Index d = Eigen::Index(1) << n_;
        Mat u(d, d);
        for (Eigen::Index b = 0; b < d; ++b) {
            Vec e = Vec::Zero(d);
            e[b] = 1.0;
            u.col(b) = apply(e);
        }
        unitary_ = std::move(u);
    }
    return *unitary_;
}

CliffordTableau CliffordElement::tableau() const {
    CliffordTableau t = CliffordTableau::identity(n_);
    for (const auto& g : gates_) gate_on_tableau(g, t);
    return t;
}

std::string CliffordElement::gate_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& g : gates_) {
        if (!first) os << ' ';
        first = false;
        switch (g.kind) {
            case CliffordGate::Kind::H: os << 'H' << g.a; break;
            case CliffordGate::Kind::S: os << 'S' << g.a; break;
            case CliffordGate::Kind::CX: os << "CX" << g.a << ',' << g.b; break;
        }
    }
    return os.str();
}

CliffordElement CliffordElement::parse(int n, const std::string& tokens) {
    std::vector<CliffordGate> gates;
    std::istringstream is(tokens);
    std::string tok;
    while (is >> tok) {
        if (tok.rfind("CX", 0) == 0) {
            const auto comma = tok.find(',');
            if (comma == std::string::npos)
                throw usage_error("CliffordElement::parse: bad CX token " + tok);
            gates.push_back({CliffordGate::Kind::CX, std::stoi(tok.substr(2, comma - 2)),
                             std::stoi(tok.substr(comma + 1))});
        } else if (tok[0] == 'H') {
            gates.push_back({CliffordGate::Kind::H, std::stoi(tok.substr(1)), 0});
        } else if (tok[0] == 'S') {
            gates.push_back({CliffordGate::Kind::S, std::stoi(tok.substr(1)), 0});
        } else {
            throw usage_error("CliffordElement::parse: bad token " + tok);
        }
    }
    return CliffordElement(n, std::move(gates));
}

namespace {

void emit(std::vector<CliffordGate>& out, CliffordTableau& t, CliffordGate g) {
    gate_on_tableau(g, t);
    out.push_back(g);
}

void emit_h(std::vector<CliffordGate>& out, CliffordTableau& t, int q) {
    emit(out, t, {CliffordGate::Kind::H, q, 0});
}
void emit_s(std::vector<CliffordGate>& out, CliffordTableau& t, int q) {
    emit(out, t, {CliffordGate::Kind::S, q, 0});
}
void emit_cx(std::vector<CliffordGate>& out, CliffordTableau& t, int c, int x) {
    emit(out, t, {CliffordGate::Kind::CX, c, x});
}
// Pauli fixes in terms of the generating set.
void emit_z(std::vector<CliffordGate>& out, CliffordTableau& t, int q) {
    emit_s(out, t, q);
    emit_s(out, t, q);
}
void emit_x(std::vector<CliffordGate>& out, CliffordTableau& t, int q) {
    emit_h(out, t, q);
    emit_z(out, t, q);
    emit_h(out, t, q);
}

}  // namespace

std::vector<CliffordGate> synthesize_tableau(const CliffordTableau& input) {
    if (!input.is_valid()) throw usage_error("synthesize_tableau: inconsistent tableau");
    CliffordTableau t = input;
    const int n = t.n;
    std::vector<CliffordGate> red;  // gates reducing t to the identity

    for (int q = 0; q < n; ++q) {
        // Bring the image of X_q to X_q.
        {
            PauliBits& dx = t.x_image[q];
            if (!(dx.x & (1u << q))) {
                int src = -1;
                for (int s = q + 1; s < n; ++s)
                    if (dx.x & (1u << s)) {
                        src = s;
                        break;
                    }
                if (src >= 0) {
                    emit_cx(red, t, src, q);
                } else {
                    for (int s = q; s < n; ++s)
                        if (dx.z & (1u << s)) {
                            emit_h(red, t, s);
                            if (s != q) emit_cx(red, t, s, q);
                            break;
                        }
                }
            }
            for (int s = q + 1; s < n; ++s)
                if (dx.x & (1u << s)) emit_cx(red, t, q, s);
            if (dx.z >> q) {
                if (!(dx.z & (1u << q))) emit_s(red, t, q);
                for (int s = q + 1; s < n; ++s)
                    if (dx.z & (1u << s)) emit_cx(red, t, s, q);
                emit_s(red, t, q);
            }
        }
        // Bring the image of Z_q to Z_q (X_q's image is left untouched).
        {
            PauliBits& sz = t.z_image[q];
            for (int s = q + 1; s < n; ++s)
                if (sz.z & (1u << s)) emit_cx(red, t, s, q);
            if (sz.x >> q) {
                emit_h(red, t, q);
                for (int s = q + 1; s < n; ++s)
                    if (sz.x & (1u << s)) emit_cx(red, t, q, s);
                if (sz.z & (1u << q)) emit_s(red, t, q);
                emit_h(red, t, q);
            }
        }
    }
    for (int q = 0; q < n; ++q) {
        if (t.z_image[q].neg) emit_x(red, t, q);
        if (t.x_image[q].neg) emit_z(red, t, q);
    }
    if (!t.is_identity()) throw usage_error("synthesize_tableau: reduction failed");

    // input = red_1^† ... red_m^†: reverse and adjoint (S^† = SSS).
    std::vector<CliffordGate> gates;
    for (auto it = red.rbegin(); it != red.rend(); ++it) {
        if (it->kind == CliffordGate::Kind::S) {
            gates.push_back(*it);
            gates.push_back(*it);
            gates.push_back(*it);
        } else {
            gates.push_back(*it);
        }
    }
    return gates;
}

CliffordElement sample_uniform_clifford(int n, RngStream& rng) {
    if (n < 1 || n > kMaxCliffordQubits)
        throw usage_error("sample_uniform_clifford: qubit count out of range [1, 6]");
    const auto cols = sample_symplectic_gf2(n, rng);
    CliffordTableau t;
    t.n = n;
    t.x_image.resize(n);
    t.z_image.resize(n);
    auto to_pauli = [&](std::uint32_t col, bool neg) {
        PauliBits p;
        for (int q = 0; q < n; ++q) {
            if (col & (1u << (2 * q))) p.x |= 1u << q;
            if (col & (1u << (2 * q + 1))) p.z |= 1u << q;
        }
        p.neg = neg;
        return p;
    };
    for (int q = 0; q < n; ++q) {
        t.x_image[q] = to_pauli(cols[2 * q], rng.next_bit());
        t.z_image[q] = to_pauli(cols[2 * q + 1], rng.next_bit());
    }
    return CliffordElement(n, synthesize_tableau(t));
}

std::uint64_t clifford_group_order_mod_phase(int n) {
    if (n < 1 || n > 4)
        throw usage_error("clifford_group_order_mod_phase: supported for n in [1, 4]");
    std::uint64_t sp = 1;
    for (int j = 1; j <= n; ++j)
        sp *= ((std::uint64_t(1) << (2 * j)) - 1) * (std::uint64_t(1) << (2 * j - 1));
    return sp * (std::uint64_t(1) << (2 * n));
}

const std::vector<Mat>& single_qubit_clifford_table() {
    static const std::vector<Mat> table = [] {
        Mat h(2, 2), s(2, 2);
        h << 1, 1, 1, -1;
        h /= std::sqrt(2.0);
        s << 1, 0, 0, cxd(0, 1);
        auto same_coset = [](const Mat& a, const Mat& b) {
            return std::abs(std::abs((a.adjoint() * b).trace()) - 2.0) < 1e-9;
        };
        std::vector<Mat> found = {Mat::Identity(2, 2)};
        for (size_t i = 0; i < found.size(); ++i) {
            for (const Mat* g : {&h, &s}) {
                Mat cand = (*g) * found[i];
                bool fresh = true;
                for (const auto& f : found)
                    if (same_coset(f, cand)) {
                        fresh = false;
                        break;
                    }
                if (fresh) found.push_back(cand);
            }
        }
        return found;
    }();
    return table;
}

int single_qubit_coset_index(const Mat& u) {
    const auto& table = single_qubit_clifford_table();
    for (size_t i = 0; i < table.size(); ++i)
        if (std::abs(std::abs((table[i].adjoint() * u).trace()) - 2.0) < 1e-6)
            return static_cast<int>(i);
    return -1;
}

}  // namespace chrslab
