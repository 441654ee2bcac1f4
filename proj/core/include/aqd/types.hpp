// SPDX-License-Identifier: Apache-2.0
//
// Shared phase-space scalar types. A complex amplitude carries the position
// quadrature in its real part and the momentum quadrature in its imaginary
// part; all variances quoted through the library are *complex* variances
// (E[|z|^2]), twice the per-quadrature variance.

#ifndef AQD_TYPES_HPP
#define AQD_TYPES_HPP

#include <complex>
#include <stdexcept>

namespace aqd {

using Complex = std::complex<double>;

/// Which quadrature of a complex amplitude to read.
enum class Quadrature { X, P };

inline double quadrature(const Complex& z, Quadrature q) {
    return q == Quadrature::X ? z.real() : z.imag();
}

/// Descriptor of a zero-mean circular symmetric complex Gaussian,
/// parameterized by its complex variance E[|z|^2]. Each quadrature then
/// has variance complex_variance / 2.
struct CircularGaussianSpec {
    double complex_variance = 0.0;

    CircularGaussianSpec() = default;
    explicit CircularGaussianSpec(double cv) : complex_variance(cv) {
        if (!(cv >= 0.0)) {
            throw std::domain_error("CircularGaussianSpec: complex variance must be >= 0");
        }
    }

    double quadrature_variance() const { return 0.5 * complex_variance; }
};

} // namespace aqd

#endif
