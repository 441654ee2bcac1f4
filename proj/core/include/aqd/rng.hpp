// SPDX-License-Identifier: Apache-2.0
//
// Counter-derived random streams for reproducible Monte Carlo runs.
//
// A stream is identified by (master_seed, stream_id). The i-th output of a
// stream is finalize(state0 + i * gamma) where state0 is a strong mix of the
// identifiers, so the whole sequence is a pure function of the descriptor.
// Trials indexed by stream_id are therefore independent of batch size,
// thread count, and evaluation order.

#ifndef AQD_RNG_HPP
#define AQD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "aqd/types.hpp"

namespace aqd {

/// Immutable stream descriptor; cheap to copy and safe to share.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

// SplitMix64 finalizer (Stafford variant 13 mixing constants).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

} // namespace detail

/// Stateful sampler over one stream. All draws are deterministic given the
/// descriptor; distinct stream ids decorrelate through the 64-bit mixer.
class Sampler {
public:
    explicit Sampler(RngStream s)
        : state_(detail::mix64(s.master_seed ^ detail::mix64(s.stream_id + detail::kGamma))) {}

    std::uint64_t next_u64() {
        state_ += detail::kGamma;
        return detail::mix64(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe as a log() argument.
    double next_double_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    /// One Box-Muller pair of independent standard normals.
    void next_normal_pair(double& n0, double& n1) {
        const double u1 = next_double_open();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        n0 = r * std::cos(t);
        n1 = r * std::sin(t);
    }

    double next_normal() {
        double a, b;
        next_normal_pair(a, b);
        return a;
    }

    /// Draw from CN(0, complex_variance): quadratures are i.i.d.
    /// N(0, complex_variance / 2). A zero-variance spec yields exactly 0.
    Complex next_circular_gaussian(double complex_variance) {
        if (!(complex_variance >= 0.0)) {
            throw std::domain_error("next_circular_gaussian: variance must be >= 0");
        }
        double a, b;
        next_normal_pair(a, b);
        const double scale = std::sqrt(0.5 * complex_variance);
        return Complex(scale * a, scale * b);
    }

private:
    std::uint64_t state_;
};

/// Single CN(0, spec) draw from a sampler position.
inline Complex sample_circular_gaussian(const CircularGaussianSpec& spec, Sampler& rng) {
    return rng.next_circular_gaussian(spec.complex_variance);
}

} // namespace aqd

#endif
