// SPDX-License-Identifier: Apache-2.0
//
// Gaussian sub-channel model: each of n sub-channels applies a complex
// transmittance gain and adds circular Gaussian noise. Only the l
// "good" sub-channels listed in the model carry usable symbols; gains are
// drawn once per trial and held fixed across a frame.

#ifndef AQD_CHANNEL_HPP
#define AQD_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "aqd/rng.hpp"
#include "aqd/types.hpp"

namespace aqd::channel {

/// Fourier-domain transmittance of one sub-channel.
using SubChannelGain = Complex;

/// Arithmetic mean of the gains over a set of sub-channels.
using AveragedGain = Complex;

enum class GainModelKind {
    /// Gain ~ CN(0, gain_variance); the regime behind every closed-form
    /// error probability in this library.
    Fading,
    /// Fixed gain list with quadrature components bounded to [0, 1/sqrt(2)];
    /// the physically constrained regime. Physical channels additionally
    /// have Re = Im per quadrature symmetry, which is not enforced here so
    /// that arbitrary calibration vectors stay expressible.
    Bounded,
};

struct ChannelModel {
    GainModelKind kind = GainModelKind::Fading;
    double gain_variance = 1.0;             // Fading only, >= 0
    std::vector<Complex> fixed_gains;       // Bounded only, length n
    CircularGaussianSpec noise;             // complex noise variance 2*sigma_N^2
    std::size_t n = 0;                      // total sub-channels
    std::vector<std::size_t> good_indices;  // the l data-bearing sub-channels

    static ChannelModel fading(double gain_variance, CircularGaussianSpec noise,
                               std::size_t n, std::vector<std::size_t> good_indices);
    static ChannelModel bounded(std::vector<Complex> gains, CircularGaussianSpec noise,
                                std::vector<std::size_t> good_indices);

    /// Throws std::domain_error describing the first violated constraint.
    void validate() const;
};

/// One gain per sub-channel, deterministic given the sampler position.
std::vector<SubChannelGain> draw_gains(const ChannelModel& model, Sampler& rng);

/// Single use of one sub-channel: gain * input + CN(0, noise) draw.
Complex transmit(SubChannelGain gain, Complex input, const CircularGaussianSpec& noise,
                 Sampler& rng);

/// Elementwise transmit with independent noise per element.
std::vector<Complex> transmit_block(const std::vector<SubChannelGain>& gains,
                                    const std::vector<Complex>& d,
                                    const CircularGaussianSpec& noise, Sampler& rng);

/// Mean of the gains over the selected indices.
AveragedGain average_gain(const std::vector<SubChannelGain>& gains,
                          const std::vector<std::size_t>& good_indices);

} // namespace aqd::channel

#endif
