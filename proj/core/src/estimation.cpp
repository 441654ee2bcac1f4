// SPDX-License-Identifier: Apache-2.0

#include "aqd/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "aqd/special.hpp"

namespace aqd::estimation {

PilotSymbol::PilotSymbol(Complex v) : value(v), energy(std::norm(v)) {
    if (!(energy > 0.0)) {
        throw std::domain_error("PilotSymbol: pilot must have positive energy");
    }
}

PilotVector::PilotVector(std::vector<Complex> v) : values(std::move(v)), energy(0.0) {
    for (const Complex& p : values) {
        energy += std::norm(p);
    }
    if (!(energy > 0.0)) {
        throw std::domain_error("PilotVector: pilot vector must have positive energy");
    }
}

Statistic scalar_statistic(const PilotSymbol& pilot, Complex observed, double noise_var) {
    return Statistic{std::conj(pilot.value) * observed / pilot.energy,
                     noise_var / pilot.energy};
}

Statistic vector_statistic(const PilotVector& pilots, const std::vector<Complex>& observed,
                           double noise_var) {
    if (pilots.values.size() != observed.size()) {
        throw std::domain_error("vector_statistic: pilot/observation length mismatch");
    }
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < observed.size(); ++i) {
        acc += std::conj(pilots.values[i]) * observed[i];
    }
    return Statistic{acc / pilots.energy, noise_var / pilots.energy};
}

Estimate mmse_estimate(const Statistic& stat, double prior_variance, double pilot_energy,
                       double noise_var) {
    if (!(prior_variance >= 0.0) || !(pilot_energy > 0.0) || !(noise_var >= 0.0)) {
        throw std::domain_error("mmse_estimate: variances must be non-negative, energy positive");
    }
    const double denom = prior_variance * pilot_energy + noise_var;
    if (denom == 0.0) {
        // prior 0 and noiseless: the gain is deterministically zero.
        return Estimate{Complex(0.0, 0.0), 0.0, prior_variance};
    }
    const double shrink = prior_variance * pilot_energy / denom;
    return Estimate{shrink * stat.value, prior_variance * noise_var / denom, prior_variance};
}

double quadrature_noise_ratio(const std::vector<Complex>& c_vector, const PilotVector& pilots,
                              double prior_quadrature_variance,
                              double noise_quadrature_variance, Quadrature which) {
    if (c_vector.size() != pilots.values.size()) {
        throw std::domain_error("quadrature_noise_ratio: length mismatch");
    }
    if (!(noise_quadrature_variance > 0.0)) {
        throw std::domain_error("quadrature_noise_ratio: noise variance must be positive");
    }
    double inner = 0.0;
    double c_norm_sq = 0.0;
    for (std::size_t i = 0; i < c_vector.size(); ++i) {
        const double c = quadrature(c_vector[i], which);
        inner += c * quadrature(pilots.values[i], which);
        c_norm_sq += c * c;
    }
    if (c_norm_sq == 0.0) {
        throw std::domain_error("quadrature_noise_ratio: selected quadrature of C is zero");
    }
    return inner * inner * prior_quadrature_variance / (c_norm_sq * noise_quadrature_variance);
}

double pilot_error_probability(int l, double snr_hat) {
    if (l < 1 || !(snr_hat > 0.0)) {
        throw std::domain_error("pilot_error_probability: need l >= 1 and snr_hat > 0");
    }
    const double mu = std::sqrt(snr_hat / (1.0 + snr_hat));
    // (1 - mu) evaluated as (1 - mu^2) / (1 + mu) to avoid cancellation at
    // high SNR where mu -> 1.
    const double one_minus_mu = 1.0 / ((1.0 + snr_hat) * (1.0 + mu));
    const double log_lo = std::log(0.5 * one_minus_mu);
    const double log_hi = std::log(0.5 * (1.0 + mu));
    double sum = 0.0;
    for (int i = 0; i < l; ++i) {
        sum += std::exp(l * log_lo + log_binomial(l - 1 + i, i) + i * log_hi);
    }
    return sum;
}

double pilot_error_high_snr(int l, double snr_hat) {
    if (l < 1) {
        throw std::domain_error("pilot_error_high_snr: need l >= 1");
    }
    if (!(snr_hat > 1.0)) {
        throw std::domain_error("pilot_error_high_snr: approximation needs snr_hat > 1");
    }
    return std::exp(-l * std::log(4.0 * snr_hat) + log_binomial(2 * l - 1, l));
}

double deep_fade_probability(int l, double snr_hat) {
    if (l < 1 || !(snr_hat > 0.0)) {
        throw std::domain_error("deep_fade_probability: need l >= 1 and snr_hat > 0");
    }
    const double p = std::exp(-std::lgamma(l + 1.0) - l * std::log(snr_hat));
    return p > 1.0 ? 1.0 : p;
}

double deep_fade_exact(int l, double snr_hat) {
    if (l < 1 || !(snr_hat > 0.0)) {
        throw std::domain_error("deep_fade_exact: need l >= 1 and snr_hat > 0");
    }
    return chi2_2l_cdf(1.0 / snr_hat, l);
}

double conditional_error(double combined_gain_sq, double snr_hat) {
    if (!(combined_gain_sq >= 0.0) || !(snr_hat > 0.0)) {
        throw std::domain_error("conditional_error: need gain^2 >= 0 and snr_hat > 0");
    }
    return q_function(std::sqrt(2.0 * combined_gain_sq * snr_hat));
}

double snr_hat_from_pilot(double pilot_energy, double noise_var) {
    if (!(pilot_energy > 0.0) || !(noise_var > 0.0)) {
        throw std::domain_error("snr_hat_from_pilot: energy and noise must be positive");
    }
    return 0.5 * pilot_energy / noise_var;
}

} // namespace aqd::estimation
