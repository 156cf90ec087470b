// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace chrslab {

/// Counter-based splittable PRNG.
///
/// Every output is a pure function of (seed, stream, counter), so replay from
/// a recorded triple is exact and distinct stream ids give independent
/// sequences. Experiments derive one stream per trial so trial counts can grow
/// without perturbing earlier trials.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), counter_(0) {
        key_ = mix(mix(seed + kGolden) ^ mix(stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t counter() const { return counter_; }

    /// Repositions the stream; outputs are a pure function of
    /// (seed, stream, counter), so replay from a recorded counter is exact.
    void seek(std::uint64_t counter) { counter_ = counter; }

    /// Derived stream with the same seed; independent of this one.
    RngStream substream(std::uint64_t id) const {
        return RngStream(seed_, stream_ * 0x100000001ULL + id + 1);
    }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in {0, ..., bound-1}; unbiased via rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v >= threshold) return v % bound;
        }
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    /// Standard normal via Box-Muller; consumes exactly two words.
    double next_gaussian() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Complex Gaussian with i.i.d. N(0,1) real and imaginary parts.
    std::complex<double> next_complex_gaussian() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_;
    std::uint64_t key_;
};

}  // namespace chrslab
