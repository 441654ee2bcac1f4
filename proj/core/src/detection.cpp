// SPDX-License-Identifier: Apache-2.0

#include "aqd/detection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "aqd/special.hpp"

namespace aqd::detection {

namespace {

// Effective received codeword: componentwise gain * codeword entry.
std::vector<Complex> effective(const GainVector& gains, const Codeword& z) {
    if (gains.dim() != z.entries.size()) {
        throw std::domain_error("detection: gain/codeword dimension mismatch");
    }
    std::vector<Complex> u(z.entries.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        u[j] = gains.entries[j] * z.entries[j];
    }
    return u;
}

double norm_of(const std::vector<Complex>& v) {
    double acc = 0.0;
    for (const Complex& z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

} // namespace

GainVector::GainVector(std::vector<Complex> gains) : entries(std::move(gains)), magnitude_sum(0.0) {
    for (const Complex& g : entries) {
        magnitude_sum += std::abs(g);
    }
}

void Codebook::validate() const {
    if (codewords.size() < 2) {
        throw std::domain_error("Codebook: need at least two codewords");
    }
    const std::size_t d = codewords[0].entries.size();
    for (const Codeword& c : codewords) {
        if (c.entries.size() != d) {
            throw std::domain_error("Codebook: codeword dimensions differ");
        }
    }
    for (std::size_t a = 0; a < codewords.size(); ++a) {
        for (std::size_t b = a + 1; b < codewords.size(); ++b) {
            if (codewords[a].entries == codewords[b].entries) {
                throw std::domain_error("Codebook: codewords must be distinct");
            }
        }
    }
}

double homodyne_channel_gain(const std::vector<Complex>& subchannel_gains, Quadrature which) {
    if (subchannel_gains.empty()) {
        throw std::domain_error("homodyne_channel_gain: no sub-channel gains");
    }
    double acc = 0.0;
    for (const Complex& g : subchannel_gains) {
        acc += std::abs(quadrature(g, which));
    }
    return acc / static_cast<double>(subchannel_gains.size());
}

SingleStatistic single_statistic(Complex observed, const std::vector<Complex>& subchannel_gains,
                                 const Measurement& measurement) {
    if (subchannel_gains.empty()) {
        throw std::domain_error("single_statistic: no sub-channel gains");
    }
    Complex avg(0.0, 0.0);
    for (const Complex& g : subchannel_gains) {
        avg += g;
    }
    avg /= static_cast<double>(subchannel_gains.size());

    if (measurement.kind == MeasurementKind::Heterodyne) {
        const double mag = std::abs(avg);
        if (mag == 0.0) {
            throw std::domain_error("single_statistic: degenerate gain (|A| = 0)");
        }
        if (!(measurement.heterodyne_c > 0.0)) {
            throw std::domain_error("single_statistic: heterodyne noise scale must be positive");
        }
        return SingleStatistic{std::conj(avg / mag) * observed, false,
                               measurement.heterodyne_c};
    }
    const Quadrature q =
        measurement.kind == MeasurementKind::HomodyneX ? Quadrature::X : Quadrature::P;
    const double denom = homodyne_channel_gain(subchannel_gains, q);
    if (denom == 0.0) {
        throw std::domain_error("single_statistic: degenerate gain on the selected quadrature");
    }
    const double nu = quadrature(avg, q) / denom;
    return SingleStatistic{Complex(nu * quadrature(observed, q), 0.0), true, 0.5};
}

DifferenceMatrix difference_matrix(const Codeword& z_a, const Codeword& z_b) {
    if (z_a.entries.size() != z_b.entries.size()) {
        throw std::domain_error("difference_matrix: dimension mismatch");
    }
    DifferenceMatrix diff;
    diff.pair = {0, 1};
    diff.diff_entries.resize(z_a.entries.size());
    diff.singular_values_sq.resize(z_a.entries.size());
    for (std::size_t j = 0; j < z_a.entries.size(); ++j) {
        diff.diff_entries[j] = z_a.entries[j] - z_b.entries[j];
        diff.singular_values_sq[j] = std::norm(diff.diff_entries[j]);
    }
    return diff;
}

DecisionOutcome collective_statistic(const std::vector<Complex>& observed,
                                     const GainVector& gains, const Codeword& z_a,
                                     const Codeword& z_b) {
    const auto u_a = effective(gains, z_a);
    const auto u_b = effective(gains, z_b);
    if (observed.size() != u_a.size()) {
        throw std::domain_error("collective_statistic: observation dimension mismatch");
    }
    std::vector<Complex> direction(u_a.size());
    for (std::size_t j = 0; j < u_a.size(); ++j) {
        direction[j] = u_a[j] - u_b[j];
    }
    const double sep = norm_of(direction);
    if (sep == 0.0) {
        throw std::domain_error("collective_statistic: ambiguous pair (A^dag M = 0)");
    }
    Complex gamma(0.0, 0.0);
    Complex threshold(0.0, 0.0);
    for (std::size_t j = 0; j < u_a.size(); ++j) {
        const Complex nu = direction[j] / sep;
        const Complex mid = 0.5 * (u_a[j] + u_b[j]);
        gamma += std::conj(nu) * (observed[j] - mid);
        threshold += std::conj(nu) * mid;
    }
    const bool first = gamma.real() >= 0.0;
    return DecisionOutcome{first ? std::size_t{0} : std::size_t{1}, gamma,
                           first ? 0.5 : -0.5, threshold};
}

std::size_t ml_decide(const std::vector<Complex>& observed, const GainVector& gains,
                      const Codebook& codebook) {
    codebook.validate();
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < codebook.size(); ++k) {
        const auto u = effective(gains, codebook.codewords[k]);
        if (observed.size() != u.size()) {
            throw std::domain_error("ml_decide: observation dimension mismatch");
        }
        double dist = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            dist += std::norm(observed[j] - u[j]);
        }
        if (dist < best_dist) {
            best_dist = dist;
            best = k;
        }
    }
    return best;
}

double pairwise_error(const GainVector& gains, const Codeword& z_a, const Codeword& z_b,
                      double noise_var, SignalSpace space) {
    if (!(noise_var > 0.0)) {
        throw std::domain_error("pairwise_error: noise variance must be positive");
    }
    const auto u_a = effective(gains, z_a);
    const auto u_b = effective(gains, z_b);
    double sep_sq = 0.0;
    for (std::size_t j = 0; j < u_a.size(); ++j) {
        sep_sq += std::norm(u_a[j] - u_b[j]);
    }
    const double sigma_n = std::sqrt(0.5 * noise_var); // per-quadrature deviation
    const double denom = space == SignalSpace::Complex ? 2.0 * std::sqrt(2.0) * sigma_n
                                                       : 2.0 * sigma_n;
    return q_function(std::sqrt(sep_sq) / denom);
}

double conditional_pair_error(const GainVector& gains, const DifferenceMatrix& diff,
                              double noise_var) {
    if (!(noise_var > 0.0)) {
        throw std::domain_error("conditional_pair_error: noise variance must be positive");
    }
    if (gains.dim() != diff.diff_entries.size()) {
        throw std::domain_error("conditional_pair_error: dimension mismatch");
    }
    double sep_sq = 0.0;
    for (std::size_t j = 0; j < diff.diff_entries.size(); ++j) {
        sep_sq += std::norm(gains.entries[j] * diff.diff_entries[j]);
    }
    const double sigma_n = std::sqrt(0.5 * noise_var);
    return q_function(std::sqrt(sep_sq) / (2.0 * sigma_n));
}

double diversity_bound(const DifferenceMatrix& diff, double snr) {
    if (!(snr > 0.0)) {
        throw std::domain_error("diversity_bound: snr must be positive");
    }
    double bound = 1.0;
    for (double lambda_sq : diff.singular_values_sq) {
        bound /= 1.0 + 0.25 * snr * lambda_sq;
    }
    return bound;
}

double success_bound(const DifferenceMatrix& diff, double snr) {
    if (!(snr > 0.0)) {
        throw std::domain_error("success_bound: snr must be positive");
    }
    double log_term = 0.0;
    for (double lambda_sq : diff.singular_values_sq) {
        if (!(lambda_sq > 0.0)) {
            throw std::domain_error("success_bound: requires all singular values positive");
        }
        log_term += std::log(4.0) - std::log(snr) - std::log(lambda_sq);
    }
    const double complement = std::exp(log_term);
    return complement >= 1.0 ? 0.0 : 1.0 - complement;
}

double exhaustive_error_rate(const GainVector& gains, const Codebook& codebook,
                             double noise_var, std::uint64_t trials, RngStream stream) {
    codebook.validate();
    if (trials < 1) {
        throw std::domain_error("exhaustive_error_rate: need trials >= 1");
    }
    const std::size_t n = codebook.size();
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Sampler rng(RngStream{stream.master_seed, stream.stream_id + t});
        const std::size_t sent = static_cast<std::size_t>(rng.next_u64() % n);
        auto observed = effective(gains, codebook.codewords[sent]);
        for (auto& z : observed) {
            z += rng.next_circular_gaussian(noise_var);
        }
        if (ml_decide(observed, gains, codebook) != sent) {
            ++errors;
        }
    }
    return static_cast<double>(errors) / static_cast<double>(trials);
}

double rayleigh_error_rate(const Codebook& codebook, double snr, std::uint64_t trials,
                           RngStream stream) {
    codebook.validate();
    if (!(snr > 0.0) || trials < 1) {
        throw std::domain_error("rayleigh_error_rate: need snr > 0 and trials >= 1");
    }
    const std::size_t n = codebook.size();
    const std::size_t d = codebook.dim();
    const double noise_var = 1.0 / snr;
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Sampler rng(RngStream{stream.master_seed, stream.stream_id + t});
        std::vector<Complex> g(d);
        for (auto& gj : g) {
            gj = rng.next_circular_gaussian(1.0);
        }
        const GainVector gains(std::move(g));
        const std::size_t sent = static_cast<std::size_t>(rng.next_u64() % n);
        auto observed = effective(gains, codebook.codewords[sent]);
        for (auto& z : observed) {
            z += rng.next_circular_gaussian(noise_var);
        }
        if (ml_decide(observed, gains, codebook) != sent) {
            ++errors;
        }
    }
    return static_cast<double>(errors) / static_cast<double>(trials);
}

Codebook sample_codebook(std::size_t n_codewords, std::size_t dim, double complex_variance,
                         Sampler& rng) {
    if (n_codewords < 2 || dim < 1) {
        throw std::domain_error("sample_codebook: need at least 2 codewords of dimension >= 1");
    }
    Codebook book;
    book.codewords.resize(n_codewords);
    for (auto& cw : book.codewords) {
        cw.entries.resize(dim);
        for (auto& z : cw.entries) {
            z = rng.next_circular_gaussian(complex_variance);
        }
    }
    book.validate();
    return book;
}

} // namespace aqd::detection
