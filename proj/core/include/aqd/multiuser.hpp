// SPDX-License-Identifier: Apache-2.0
//
// Multiuser extension: the d output dimensions are partitioned into
// per-user blocks of r_k components (sum r_k = d). Each user's block is an
// independent instance of the collective detection model, so per-user
// statistics, decisions, and error bounds reduce to the single-user forms
// with d replaced by r_k. SNR_k is the per-component codeword complex
// variance divided by the complex noise variance.

#ifndef AQD_MULTIUSER_HPP
#define AQD_MULTIUSER_HPP

#include <cstddef>
#include <vector>

#include "aqd/detection.hpp"
#include "aqd/rng.hpp"
#include "aqd/types.hpp"

namespace aqd::multiuser {

struct UserAllocation {
    std::size_t k_in = 0;
    std::size_t k_out = 0;
    std::vector<std::size_t> dims; // r_k per user, length k_out
    std::size_t d = 0;             // sum of dims

    static UserAllocation make(std::size_t k_in, std::size_t k_out,
                               std::vector<std::size_t> dims);
    void validate() const;

    /// Offset of user k's block within the composed d-vector.
    std::size_t block_offset(std::size_t user) const;
};

struct UserChannel {
    std::size_t user = 0;
    detection::GainVector gains; // length r_k
    double snr = 0.0;
    double noise_var = 0.0; // complex noise variance per component
};

struct UserDecision {
    std::size_t user;
    Complex gamma;
    double s; // +0.5 first of the pair, -0.5 second
    std::size_t decided_index;
};

/// Superpose the per-user blocks: user k's slice is gains_k (.) input_k plus
/// independent CN(0, noise_var_k) noise, concatenated in allocation order.
std::vector<Complex> compose_output(const UserAllocation& allocation,
                                    const std::vector<std::vector<Complex>>& per_user_inputs,
                                    const std::vector<UserChannel>& channels, Sampler& rng);

/// Pairwise projection decision on one user's block; identical to the
/// single-user collective statistic on that block.
UserDecision user_statistic(const std::vector<Complex>& block, const UserChannel& chan,
                            const detection::Codeword& z_a, const detection::Codeword& z_b);

/// Per-user diversity bound prod_{j < r_k} 1 / (1 + snr_k lambda_j^2 / 4).
double user_error_bound(const detection::DifferenceMatrix& diff, double snr_k,
                        std::size_t r_k);

/// Channel-inversion decoder: componentwise z'_j / A_j. Amplifies the noise
/// on weak components to CN(0, noise_var / |A_j|^2), hence strictly
/// suboptimal. Throws when any |A_j| <= epsilon.
std::vector<Complex> kappa_decode(const std::vector<Complex>& observed,
                                  const detection::GainVector& gains,
                                  double epsilon = 1e-9);

/// Nearest raw codeword to the inverted block in unweighted Euclidean
/// distance: the naive decision the inversion decoder induces.
std::size_t kappa_threshold_decide(const std::vector<Complex>& block,
                                   const detection::GainVector& gains,
                                   const detection::Codeword& z_a,
                                   const detection::Codeword& z_b, double epsilon = 1e-9);

/// Scalar statistic of the inversion path: the block projected onto the
/// conjugate-gain direction scaled by 1 / |A|_l1. Its noise term
/// (sum_j F_j) / |A|_l1 carries gain-phase-free coefficients, so over
/// circular gain ensembles it decorrelates from the projection detector's
/// noise.
Complex kappa_path_statistic(const std::vector<Complex>& block,
                             const detection::GainVector& gains);

} // namespace aqd::multiuser

#endif
