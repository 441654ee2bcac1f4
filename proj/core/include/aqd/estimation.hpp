// SPDX-License-Identifier: Apache-2.0
//
// Pilot-based sub-channel estimation: projection sufficient statistics,
// linear MMSE estimates, and the closed-form error / deep-fade
// probabilities of the pilot detection stage.
//
// SNR bookkeeping. The complex SNR of a pilot is |p|^2 / (2 sigma_N^2)
// where 2 sigma_N^2 is the complex noise variance; the scaled quantity
// snr_hat is exactly half of it. All closed forms below take snr_hat
// explicitly to keep the factor of two at one named boundary.

#ifndef AQD_ESTIMATION_HPP
#define AQD_ESTIMATION_HPP

#include <vector>

#include "aqd/types.hpp"

namespace aqd::estimation {

/// A known calibration symbol; must have positive energy.
struct PilotSymbol {
    Complex value;
    double energy; // |value|^2

    explicit PilotSymbol(Complex v);
};

/// Per-sub-channel pilots of one single-carrier channel.
struct PilotVector {
    std::vector<Complex> values;
    double energy; // sum of |values[i]|^2

    explicit PilotVector(std::vector<Complex> v);
};

/// Pilot-normalized observation: value = (true gain) + residual noise,
/// residual complex variance = channel noise variance / pilot energy.
struct Statistic {
    Complex value;
    double residual_noise_variance;
};

/// Linear MMSE estimate of a gain (or averaged gain) with its error power.
struct Estimate {
    Complex value;
    double mmse;
    double prior_variance;
};

/// S = conj(p) * observed / |p|^2 for a scalar pilot.
Statistic scalar_statistic(const PilotSymbol& pilot, Complex observed, double noise_var);

/// S = q^dag q' / |q|^2 for a pilot vector; reduces to scalar_statistic at l=1.
Statistic vector_statistic(const PilotVector& pilots, const std::vector<Complex>& observed,
                           double noise_var);

/// Wiener shrinkage of a pilot-normalized statistic:
///   value = prior * E / (prior * E + noise) * stat.value
///   mmse  = prior * noise / (prior * E + noise)
/// where E is the pilot energy behind the statistic.
Estimate mmse_estimate(const Statistic& stat, double prior_variance, double pilot_energy,
                       double noise_var);

/// Per-quadrature noise ratio of the estimation process,
///   theta = (chi(C)^T chi(q))^2 E[chi(A)^2] / (|chi(C)|^2 sigma_N^2),
/// bounded above by |chi(q)|^2 E[chi(A)^2] / sigma_N^2 (Cauchy-Schwarz).
double quadrature_noise_ratio(const std::vector<Complex>& c_vector, const PilotVector& pilots,
                              double prior_quadrature_variance,
                              double noise_quadrature_variance, Quadrature which);

/// Rayleigh-diversity antipodal pilot detection error over l sub-channels
/// with unit-variance CN gains:
///   ((1-mu)/2)^l * sum_{i<l} C(l-1+i, i) ((1+mu)/2)^i,
///   mu = sqrt(snr_hat / (1 + snr_hat)).
double pilot_error_probability(int l, double snr_hat);

/// High-SNR simplification (1 / (4 snr_hat))^l C(2l-1, l); requires snr_hat > 1.
double pilot_error_high_snr(int l, double snr_hat);

/// Probability of the deep-fade event (combined gain below 1/snr_hat),
/// small-argument approximation 1 / (l! snr_hat^l), clamped to [0, 1].
/// The exact value is chi2_2l_cdf(1 / snr_hat, l); see deep_fade_exact.
double deep_fade_probability(int l, double snr_hat);

/// Exact CDF companion of deep_fade_probability, reported alongside it so
/// the approximation gap stays visible.
double deep_fade_exact(int l, double snr_hat);

/// Error probability conditioned on a realized combined gain power:
/// Q(sqrt(2 * combined_gain_sq * snr_hat)).
double conditional_error(double combined_gain_sq, double snr_hat);

/// snr_hat = 0.5 * |p|^2 / noise_var. Exact arithmetic (one multiply, one divide).
double snr_hat_from_pilot(double pilot_energy, double noise_var);

/// snr_hat = snr / 2, exact.
inline double snr_hat_from_snr(double snr) { return 0.5 * snr; }

/// snr = 2 * snr_hat, exact.
inline double snr_from_snr_hat(double snr_hat) { return 2.0 * snr_hat; }

} // namespace aqd::estimation

#endif
