// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "chrslab/haar.hpp"

namespace chrslab {

PureState sample_haar_state(Eigen::Index d, RngStream& rng) {
    if (d < 2) throw usage_error("sample_haar_state: dimension must be >= 2");
    Vec v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.next_complex_gaussian();
    v /= v.norm();
    return PureState(std::move(v));
}

PureState sample_haar_state_perp_zero(Eigen::Index d, RngStream& rng) {
    if (d < 2) throw usage_error("sample_haar_state_perp_zero: dimension must be >= 2");
    Vec v(d);
    v[0] = 0.0;
    for (Eigen::Index i = 1; i < d; ++i) v[i] = rng.next_complex_gaussian();
    v /= v.norm();
    return PureState(std::move(v));
}

ChrsFamily::ChrsFamily(std::uint64_t seed, int ell_min, int ell_max, bool orthogonal_mode)
    : seed_(seed), ell_min_(ell_min), ell_max_(ell_max), orthogonal_mode_(orthogonal_mode) {
    if (ell_min < 1 || ell_max < ell_min)
        throw usage_error("ChrsFamily: bad size-index range");
}

const PureState& ChrsFamily::state_nocount(int ell) const {
    if (ell < ell_min_ || ell > ell_max_)
        throw usage_error("ChrsFamily: size index out of configured range");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(ell);
    if (it == cache_.end()) {
        // The sampling stream is a pure function of (seed, ell): racers would
        // compute the identical state.
        RngStream rng(seed_, 0x43485253ULL * 65536ULL + static_cast<std::uint64_t>(ell));
        const Eigen::Index d = Eigen::Index(1) << ell;
        PureState psi = orthogonal_mode_ ? sample_haar_state_perp_zero(d, rng)
                                         : sample_haar_state(d, rng);
        it = cache_.emplace(ell, std::move(psi)).first;
    }
    return it->second;
}

const PureState& ChrsFamily::state(int ell) const {
    exact_reads_.fetch_add(1);
    return state_nocount(ell);
}

std::vector<PureState> ChrsFamily::copies(int ell, int count) const {
    if (count < 1) throw usage_error("ChrsFamily::copies: count must be >= 1");
    const PureState& psi = state_nocount(ell);
    copy_queries_.fetch_add(static_cast<std::uint64_t>(count));
    return std::vector<PureState>(static_cast<size_t>(count), psi);
}

const PureState& ChrsFamily::consume_copies(int ell, long count) const {
    if (count < 0) throw usage_error("ChrsFamily::consume_copies: negative count");
    copy_queries_.fetch_add(static_cast<std::uint64_t>(count));
    return state_nocount(ell);
}

}  // namespace chrslab
