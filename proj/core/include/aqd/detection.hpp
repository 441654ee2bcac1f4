// SPDX-License-Identifier: Apache-2.0
//
// Adaptive quadrature detection. Single-symbol matched statistics
// (homodyne / heterodyne), collective codeword detection by projecting the
// d-dimensional output onto the gain-weighted codeword-difference
// direction, maximum-likelihood decisions, pairwise error probabilities,
// and the singular-value diversity bounds.
//
// Codewords are diagonal, so the codeword difference matrix is diagonal and
// its singular values are the squared entry magnitudes; no general
// eigensolver is needed.

#ifndef AQD_DETECTION_HPP
#define AQD_DETECTION_HPP

#include <cstdint>
#include <cstddef>
#include <vector>

#include "aqd/rng.hpp"
#include "aqd/types.hpp"

namespace aqd::detection {

/// Effective per-component gains A_j (each the average of l sub-channel
/// gains) together with the l1 magnitude sum.
struct GainVector {
    std::vector<Complex> entries;
    double magnitude_sum; // sum of |entries[j]|

    explicit GainVector(std::vector<Complex> gains);

    std::size_t dim() const { return entries.size(); }
};

/// Diagonal d-dimensional codeword, stored as its diagonal.
struct Codeword {
    std::vector<Complex> entries;
};

struct Codebook {
    std::vector<Codeword> codewords;

    std::size_t size() const { return codewords.size(); }
    std::size_t dim() const { return codewords.empty() ? 0 : codewords[0].entries.size(); }
    void validate() const;
};

/// Componentwise difference of a codeword pair with the squared singular
/// values of the (diagonal) difference matrix.
struct DifferenceMatrix {
    std::pair<std::size_t, std::size_t> pair;
    std::vector<Complex> diff_entries;
    std::vector<double> singular_values_sq; // |diff_entries[j]|^2
};

/// Outcome of the pairwise projection decision. gamma is the projection of
/// the midpoint-shifted observation onto the difference direction; its
/// signal part is s * |A^dag M| with s in {-0.5, +0.5}.
struct DecisionOutcome {
    std::size_t decided_index; // 0 = first of the pair, 1 = second
    Complex gamma;
    double s;
    Complex threshold; // projection of the pair midpoint (the hyperplane)
};

enum class MeasurementKind { HomodyneX, HomodyneP, Heterodyne };

/// Measurement model for the single-symbol statistic. The heterodyne noise
/// scale c multiplies the complex noise variance; c = 1 recovers the plain
/// complex matched statistic.
struct Measurement {
    MeasurementKind kind = MeasurementKind::Heterodyne;
    double heterodyne_c = 1.0;
};

/// Single-symbol matched statistic. Homodyne variants operate on one
/// quadrature and return a real value (imaginary part zero) whose residual
/// noise variance is noise_scale * the complex channel noise variance;
/// heterodyne returns the complex statistic conj(A/|A|) * z'.
struct SingleStatistic {
    Complex value;
    bool real_valued;
    double noise_scale; // 0.5 for homodyne (one quadrature), c for heterodyne
};

SingleStatistic single_statistic(Complex observed, const std::vector<Complex>& subchannel_gains,
                                 const Measurement& measurement);

/// Effective quadrature gain of the homodyne channel: the mean of
/// |chi(gain_i)| over the l sub-channels.
double homodyne_channel_gain(const std::vector<Complex>& subchannel_gains, Quadrature which);

DifferenceMatrix difference_matrix(const Codeword& z_a, const Codeword& z_b);

/// Pairwise projection decision for an observed d-vector. Decides the first
/// codeword when Re(gamma) >= 0, which coincides with the maximum-likelihood
/// rule (ties go to the first / lower index).
DecisionOutcome collective_statistic(const std::vector<Complex>& observed,
                                     const GainVector& gains, const Codeword& z_a,
                                     const Codeword& z_b);

/// Nearest effective codeword in Euclidean distance; ties break to the
/// lowest index.
std::size_t ml_decide(const std::vector<Complex>& observed, const GainVector& gains,
                      const Codebook& codebook);

enum class SignalSpace { Complex, RealSubspace };

/// Pairwise N = 2 error probability at fixed gains. noise_var is the
/// complex noise variance 2 sigma_N^2 per component;
///   Complex:      Q(|A^dag M| / (2 sqrt(2) sigma_N))
///   RealSubspace: Q(|A^dag M| / (2 sigma_N)).
double pairwise_error(const GainVector& gains, const Codeword& z_a, const Codeword& z_b,
                      double noise_var, SignalSpace space);

/// Conditional pair error Q(|A^dag M| / (2 sigma_N)) from a precomputed
/// difference; identical to pairwise_error in the real subspace.
double conditional_pair_error(const GainVector& gains, const DifferenceMatrix& diff,
                              double noise_var);

/// Diversity upper bound prod_j 1 / (1 + snr * lambda_j^2 / 4); the
/// expectation over per-component CN(0,1) effective gains is already taken.
double diversity_bound(const DifferenceMatrix& diff, double snr);

/// Success-probability lower bound max(0, 1 - 4^d / (snr^d prod lambda_j^2));
/// requires every singular value positive.
double success_bound(const DifferenceMatrix& diff, double snr);

/// Monte Carlo error rate of full ML decoding at fixed gains; noise_var is
/// the complex per-component noise variance.
double exhaustive_error_rate(const GainVector& gains, const Codebook& codebook,
                             double noise_var, std::uint64_t trials, RngStream stream);

/// Monte Carlo error rate with per-trial CN(0,1) effective gains and noise
/// variance 1/snr (unit-energy codeword convention: snr = Es / (2 sigma_N^2)
/// with Es = 1 absorbed into the codeword scale).
double rayleigh_error_rate(const Codebook& codebook, double snr, std::uint64_t trials,
                           RngStream stream);

/// Codebook of N distinct diagonal codewords with CN(0, complex_variance)
/// components.
Codebook sample_codebook(std::size_t n_codewords, std::size_t dim, double complex_variance,
                         Sampler& rng);

} // namespace aqd::detection

#endif
