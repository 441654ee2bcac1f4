// SPDX-License-Identifier: Apache-2.0

#include "aqd/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aqd::channel {

ChannelModel ChannelModel::fading(double gain_variance, CircularGaussianSpec noise,
                                  std::size_t n, std::vector<std::size_t> good_indices) {
    ChannelModel m;
    m.kind = GainModelKind::Fading;
    m.gain_variance = gain_variance;
    m.noise = noise;
    m.n = n;
    m.good_indices = std::move(good_indices);
    m.validate();
    return m;
}

ChannelModel ChannelModel::bounded(std::vector<Complex> gains, CircularGaussianSpec noise,
                                   std::vector<std::size_t> good_indices) {
    ChannelModel m;
    m.kind = GainModelKind::Bounded;
    m.fixed_gains = std::move(gains);
    m.noise = noise;
    m.n = m.fixed_gains.size();
    m.good_indices = std::move(good_indices);
    m.validate();
    return m;
}

void ChannelModel::validate() const {
    if (n == 0) {
        throw std::domain_error("ChannelModel: n must be >= 1");
    }
    if (good_indices.empty()) {
        throw std::domain_error("ChannelModel: good_indices must be non-empty");
    }
    for (std::size_t idx : good_indices) {
        if (idx >= n) {
            throw std::domain_error("ChannelModel: good index " + std::to_string(idx) +
                                    " out of range for n=" + std::to_string(n));
        }
    }
    if (!(noise.complex_variance >= 0.0)) {
        throw std::domain_error("ChannelModel: noise variance must be >= 0");
    }
    if (kind == GainModelKind::Fading) {
        if (!(gain_variance >= 0.0)) {
            throw std::domain_error("ChannelModel: gain variance must be >= 0");
        }
    } else {
        if (fixed_gains.size() != n) {
            throw std::domain_error("ChannelModel: fixed gain list must have length n");
        }
        constexpr double kMax = 0.7071067811865476; // 1/sqrt(2)
        constexpr double kTol = 1e-12;
        for (const Complex& g : fixed_gains) {
            if (g.real() < -kTol || g.real() > kMax + kTol ||
                g.imag() < -kTol || g.imag() > kMax + kTol) {
                throw std::domain_error(
                    "ChannelModel: bounded gain quadratures must lie in [0, 1/sqrt(2)]");
            }
        }
    }
}

std::vector<SubChannelGain> draw_gains(const ChannelModel& model, Sampler& rng) {
    model.validate();
    if (model.kind == GainModelKind::Bounded) {
        return model.fixed_gains;
    }
    std::vector<SubChannelGain> gains(model.n);
    for (auto& g : gains) {
        g = rng.next_circular_gaussian(model.gain_variance);
    }
    return gains;
}

Complex transmit(SubChannelGain gain, Complex input, const CircularGaussianSpec& noise,
                 Sampler& rng) {
    return gain * input + rng.next_circular_gaussian(noise.complex_variance);
}

std::vector<Complex> transmit_block(const std::vector<SubChannelGain>& gains,
                                    const std::vector<Complex>& d,
                                    const CircularGaussianSpec& noise, Sampler& rng) {
    if (gains.size() != d.size()) {
        throw std::domain_error("transmit_block: gain/input length mismatch");
    }
    std::vector<Complex> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        out[i] = transmit(gains[i], d[i], noise, rng);
    }
    return out;
}

AveragedGain average_gain(const std::vector<SubChannelGain>& gains,
                          const std::vector<std::size_t>& good_indices) {
    if (good_indices.empty()) {
        throw std::domain_error("average_gain: empty index set");
    }
    Complex sum(0.0, 0.0);
    for (std::size_t idx : good_indices) {
        if (idx >= gains.size()) {
            throw std::domain_error("average_gain: index out of range");
        }
        sum += gains[idx];
    }
    return sum / static_cast<double>(good_indices.size());
}

} // namespace aqd::channel
