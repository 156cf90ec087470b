// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chrslab/rng.hpp"
#include "chrslab/states.hpp"

namespace chrslab {

/// Qubit index cap for exact-uniform Clifford sampling.
inline constexpr int kMaxCliffordQubits = 6;

/// A Pauli on n qubits encoded as x/z bitmasks (qubit q at bit q) plus a sign
/// bit; the phase is restricted to +/-1 since conjugation by Cliffords of the
/// Hermitian generators never leaves that set.
struct PauliBits {
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    bool neg = false;
};

/// Images of the generators X_q, Z_q under conjugation. Together with the
/// sign bits this fixes the Clifford element up to global phase.
struct CliffordTableau {
    int n = 0;
    std::vector<PauliBits> x_image;  // U X_q U^dagger
    std::vector<PauliBits> z_image;  // U Z_q U^dagger

    static CliffordTableau identity(int n);
    bool is_identity() const;
    /// Symplectic + anticommutation consistency of the images.
    bool is_valid() const;
};

struct CliffordGate {
    enum class Kind { H, S, CX };
    Kind kind;
    int a = 0;  // qubit (H/S) or control (CX)
    int b = 0;  // target (CX)
};

/// A Clifford group element, stored as a gate sequence over {H, S, CNOT} with
/// a lazily built dense unitary.
class CliffordElement {
  public:
    CliffordElement(int n, std::vector<CliffordGate> gates);

    int qubits() const { return n_; }
    const std::vector<CliffordGate>& gates() const { return gates_; }

    /// Dense 2^n x 2^n unitary (cached after first use).
    const Mat& unitary() const;

    /// Applies the element (or its adjoint) to a state vector without
    /// materializing the matrix; qubit 0 is the most significant bit.
    Vec apply(const Vec& state) const;
    Vec apply_adjoint(const Vec& state) const;

    /// Tableau of conjugation images implied by the gate list.
    CliffordTableau tableau() const;

    /// Token string like "H0 S1 CX0,1"; empty string for the identity.
    std::string gate_string() const;
    static CliffordElement parse(int n, const std::string& tokens);

  private:
    int n_;
    std::vector<CliffordGate> gates_;
    mutable std::optional<Mat> unitary_;
};

/// Exactly uniform sample from the n-qubit Clifford group (mod global phase):
/// uniform symplectic part via transvection-built hyperbolic pairs, uniform
/// Pauli sign part, decoded to a gate sequence.
CliffordElement sample_uniform_clifford(int n, RngStream& rng);

/// Uniform 2n x 2n symplectic matrix over GF(2); column j holds the image of
/// basis vector j, bits in (x_0, z_0, x_1, z_1, ...) order.
std::vector<std::uint32_t> sample_symplectic_gf2(int n, RngStream& rng);

/// Symplectic inner product of GF(2) vectors in interleaved bit order.
int gf2_symplectic_inner(std::uint32_t u, std::uint32_t v, int n);

/// Gate sequence whose tableau equals `t` (up to global phase).
std::vector<CliffordGate> synthesize_tableau(const CliffordTableau& t);

/// |Sp(2n, 2)| * 4^n, the Clifford group order mod global phase (n <= 6).
std::uint64_t clifford_group_order_mod_phase(int n);

/// All 24 single-qubit Clifford unitaries (mod phase), as a test oracle and
/// for coset identification.
const std::vector<Mat>& single_qubit_clifford_table();
/// Index of `u` in single_qubit_clifford_table(), matching mod global phase.
int single_qubit_coset_index(const Mat& u);

}  // namespace chrslab
