// SPDX-License-Identifier: Apache-2.0
//
// Scalar special functions used by the error-probability formulas.

#ifndef AQD_SPECIAL_HPP
#define AQD_SPECIAL_HPP

namespace aqd {

/// Gaussian tail function Q(x) = P(G > x) for standard normal G.
/// Evaluated through erfc; absolute error below 1e-12 on the real line.
double q_function(double x);

/// Density x^(l-1) e^(-x) / (l-1)! of the normalized chi-square law with
/// 2l degrees of freedom (the law of a sum of l unit-mean exponentials).
double chi2_2l_density(double x, int l);

/// CDF of the same law: the regularized lower incomplete gamma P(l, x),
/// evaluated with relative error <= 1e-10.
double chi2_2l_cdf(double x, int l);

/// log of the binomial coefficient C(n, k); exact enough for n up to a few
/// hundred when exponentiated.
double log_binomial(int n, int k);

} // namespace aqd

#endif
