// SPDX-License-Identifier: Apache-2.0

#include "aqd/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aqd {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Twiddle table from long-double trig so table error stays near 1 ulp.
std::vector<Complex> twiddles(std::size_t n, double sign) {
    std::vector<Complex> w(n);
    const long double step = sign * 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long double a = step * static_cast<long double>(k);
        w[k] = Complex(static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a)));
    }
    return w;
}

// Iterative radix-2 Cooley-Tukey, in place. sign = -1 forward, +1 inverse.
void fft_pow2(std::vector<Complex>& a, double sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    const auto w = twiddles(n, sign);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Direct O(n^2) evaluation for the (rare, small) non power-of-two sizes.
std::vector<Complex> dft_direct(const std::vector<Complex>& v, double sign) {
    const std::size_t n = v.size();
    const auto w = twiddles(n, sign);
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            acc += v[j] * w[(j * k) % n];
        }
        out[k] = acc;
    }
    return out;
}

std::vector<Complex> transform(const std::vector<Complex>& v, double sign) {
    if (v.empty()) {
        throw std::domain_error("unitary_dft: empty vector");
    }
    std::vector<Complex> out;
    if (is_pow2(v.size())) {
        out = v;
        fft_pow2(out, sign);
    } else {
        out = dft_direct(v, sign);
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(v.size()));
    for (auto& z : out) {
        z *= norm;
    }
    return out;
}

} // namespace

std::vector<Complex> unitary_dft(const std::vector<Complex>& v) { return transform(v, -1.0); }

std::vector<Complex> unitary_idft(const std::vector<Complex>& v) { return transform(v, +1.0); }

} // namespace aqd
