// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "chrslab/rng.hpp"
#include "chrslab/states.hpp"

namespace chrslab {

/// Haar-random state on C^d: i.i.d. standard complex Gaussian amplitudes,
/// normalized. Unitary invariance of the Gaussian makes this exact.
PureState sample_haar_state(Eigen::Index d, RngStream& rng);

/// Haar-random state on the (d-1)-dim subspace orthogonal to the first basis
/// vector (first amplitude exactly zero).
PureState sample_haar_state_perp_zero(Eigen::Index d, RngStream& rng);

/// The common reference state family {|psi_ell>}: one fixed Haar sample per
/// size index ell, lazily drawn and memoized from the family seed. The same
/// (seed, ell) always reproduces the bit-identical state. "Query access" is
/// bookkept by a copy counter so experiments can report sample complexity;
/// exact reads of the stored description (the sample-unbounded verifier path)
/// are counted separately.
class ChrsFamily {
  public:
    ChrsFamily(std::uint64_t seed, int ell_min, int ell_max, bool orthogonal_mode = false);

    int ell_min() const { return ell_min_; }
    int ell_max() const { return ell_max_; }
    bool orthogonal_mode() const { return orthogonal_mode_; }
    std::uint64_t seed() const { return seed_; }

    /// The family's state for size index ell (2^ell amplitudes), counted as an
    /// unbounded-access read.
    const PureState& state(int ell) const;

    /// `count` identical copies of |psi_ell>; the query counter advances by
    /// `count`.
    std::vector<PureState> copies(int ell, int count) const;

    /// Advances the query counter without materializing copies (for samplers
    /// that consume the state description directly, shot by shot).
    const PureState& consume_copies(int ell, long count) const;

    std::uint64_t copies_consumed() const { return copy_queries_.load(); }
    std::uint64_t exact_reads() const { return exact_reads_.load(); }

  private:
    const PureState& state_nocount(int ell) const;

    std::uint64_t seed_;
    int ell_min_;
    int ell_max_;
    bool orthogonal_mode_;
    mutable std::mutex mu_;
    mutable std::map<int, PureState> cache_;
    mutable std::atomic<std::uint64_t> copy_queries_{0};
    mutable std::atomic<std::uint64_t> exact_reads_{0};
};

}  // namespace chrslab
