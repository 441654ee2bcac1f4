// SPDX-License-Identifier: Apache-2.0
//
// Subcarrier-spreading estimation: each of the l scan iterations sends an
// n-dimensional frame holding a g-pilot window between vacuum padding
// (g + (l-1) = n), slides the window by one position per iteration, and
// projects the received frame back onto the frame direction to obtain one
// statistic per good sub-channel. Repeating the scan k times combines
// coherently and scales the effective snr_hat by k.

#ifndef AQD_SPREADING_HPP
#define AQD_SPREADING_HPP

#include <cstddef>
#include <vector>

#include "aqd/channel.hpp"
#include "aqd/estimation.hpp"
#include "aqd/rng.hpp"
#include "aqd/types.hpp"

namespace aqd::spreading {

struct SpreadPlan {
    std::size_t n = 0; // total sub-channels
    std::size_t l = 0; // good sub-channels; also the number of scan iterations
    std::size_t g = 0; // pilots per frame, g + (l - 1) = n
    std::size_t k = 1; // scan repetitions
    std::vector<std::size_t> good_indices;

    static SpreadPlan make(std::size_t n, std::size_t l, std::size_t k,
                           std::vector<std::size_t> good_indices);
    void validate() const;
};

/// One scan frame: zeros, then the pilot window, then zeros. Vacuum
/// positions are exact complex zeros.
struct SpreadFrame {
    std::vector<Complex> entries; // length n
    std::size_t pilot_window_start = 0;
    std::vector<Complex> pilot_values; // the g-dimensional window content
};

struct SpreadChannelEstimate {
    std::size_t channel_index;      // index of the good sub-channel
    Complex raw_projection;         // gain * |frame| + noise, before normalization
    estimation::Statistic statistic; // normalized: gain + noise / |frame|
    estimation::Estimate estimate;   // shrunk linear estimate (unit prior)
};

struct SpreadScanResult {
    std::vector<SpreadChannelEstimate> per_channel; // exactly l entries
    std::vector<Complex> aggregate_output;          // sum of the l frame outputs
};

/// Frame for iteration i: i leading zeros, the window, l-1-i trailing zeros.
SpreadFrame build_frame(const SpreadPlan& plan, std::size_t iteration,
                        const std::vector<Complex>& q_x);

/// Hermitian inner product <f1, f2> = sum conj(f1) * f2. Frames with
/// disjoint windows are exactly orthogonal.
Complex frame_inner_product(const SpreadFrame& f1, const SpreadFrame& f2);

/// Run the l scan iterations through the channel's good sub-channels.
/// Iteration i transmits its whole frame through the gain of the i-th good
/// sub-channel; non-good outputs carry no statistic of their own.
SpreadScanResult scan(const SpreadPlan& plan, const std::vector<Complex>& q_x,
                      const channel::ChannelModel& chan, Sampler& rng);

/// Combine k raw scan statistics of one sub-channel:
///   zeta_k = |P| / (k |P|^2 + noise) * sum_k S,
/// with mean-square error noise / (noise + k |P|^2) under a unit prior.
estimation::Estimate repeated_estimate(const SpreadPlan& plan,
                                       const std::vector<Complex>& raw_statistics,
                                       double frame_energy, double noise_var);

/// Effective scaled SNR after k repetitions.
inline double repeated_snr_hat(std::size_t k, double snr_hat) {
    return static_cast<double>(k) * snr_hat;
}

/// Estimation error after spreading with k repetitions: Q(sqrt(k * snr)),
/// with snr the complex SNR (twice snr_hat).
double spread_error_probability(std::size_t k, double snr);

} // namespace aqd::spreading

#endif
