// SPDX-License-Identifier: Apache-2.0

#include "aqd/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aqd {

double q_function(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("q_function: input must be finite");
    }
    // Q(x) = erfc(x / sqrt(2)) / 2. erfc is accurate to a few ulp, so the
    // absolute error stays far below 1e-12 for any representable x.
    return 0.5 * std::erfc(x * 0x1.6a09e667f3bcdp-1); // x / sqrt(2)
}

double chi2_2l_density(double x, int l) {
    if (l < 1) {
        throw std::domain_error("chi2_2l_density: l must be >= 1");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("chi2_2l_density: x must be >= 0");
    }
    if (l == 1) {
        return std::exp(-x);
    }
    if (x == 0.0) {
        return 0.0;
    }
    return std::exp((l - 1) * std::log(x) - x - std::lgamma(static_cast<double>(l)));
}

double chi2_2l_cdf(double x, int l) {
    if (l < 1) {
        throw std::domain_error("chi2_2l_cdf: l must be >= 1");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("chi2_2l_cdf: x must be >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x < l + 1.0) {
        // Lower series: P(l, x) = x^l e^-x / l! * sum_k x^k / ((l+1)...(l+k)).
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 10000; ++k) {
            term *= x / (l + k);
            sum += term;
            if (term < sum * 1e-17) {
                break;
            }
        }
        return sum * std::exp(l * std::log(x) - x - std::lgamma(l + 1.0));
    }
    // Integer l: Q(l, x) = e^-x * sum_{k<l} x^k / k! is a finite sum.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < l; ++k) {
        term *= x / k;
        sum += term;
    }
    const double q = sum * std::exp(-x);
    return q >= 1.0 ? 0.0 : 1.0 - q;
}

double log_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        throw std::domain_error("log_binomial: need 0 <= k <= n");
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace aqd
