// SPDX-License-Identifier: Apache-2.0

#include "aqd/spreading.hpp"

#include <cmath>
#include <stdexcept>

#include "aqd/special.hpp"

namespace aqd::spreading {

SpreadPlan SpreadPlan::make(std::size_t n, std::size_t l, std::size_t k,
                            std::vector<std::size_t> good_indices) {
    SpreadPlan plan;
    plan.n = n;
    plan.l = l;
    plan.g = n + 1 - l; // g + (l - 1) = n
    plan.k = k;
    plan.good_indices = std::move(good_indices);
    plan.validate();
    return plan;
}

void SpreadPlan::validate() const {
    if (l < 1 || l > n) {
        throw std::domain_error("SpreadPlan: need 1 <= l <= n");
    }
    if (g + (l - 1) != n || g < 1) {
        throw std::domain_error("SpreadPlan: need g + (l - 1) = n with g >= 1");
    }
    if (k < 1) {
        throw std::domain_error("SpreadPlan: need k >= 1");
    }
    if (good_indices.size() != l) {
        throw std::domain_error("SpreadPlan: good_indices must list exactly l sub-channels");
    }
    for (std::size_t idx : good_indices) {
        if (idx >= n) {
            throw std::domain_error("SpreadPlan: good index out of range");
        }
    }
}

SpreadFrame build_frame(const SpreadPlan& plan, std::size_t iteration,
                        const std::vector<Complex>& q_x) {
    plan.validate();
    if (iteration >= plan.l) {
        throw std::domain_error("build_frame: iteration must be in [0, l)");
    }
    if (q_x.size() != plan.g) {
        throw std::domain_error("build_frame: pilot window must have length g");
    }
    SpreadFrame frame;
    frame.entries.assign(plan.n, Complex(0.0, 0.0));
    frame.pilot_window_start = iteration;
    frame.pilot_values = q_x;
    for (std::size_t j = 0; j < plan.g; ++j) {
        frame.entries[iteration + j] = q_x[j];
    }
    return frame;
}

Complex frame_inner_product(const SpreadFrame& f1, const SpreadFrame& f2) {
    if (f1.entries.size() != f2.entries.size()) {
        throw std::domain_error("frame_inner_product: frame length mismatch");
    }
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < f1.entries.size(); ++j) {
        acc += std::conj(f1.entries[j]) * f2.entries[j];
    }
    return acc;
}

SpreadScanResult scan(const SpreadPlan& plan, const std::vector<Complex>& q_x,
                      const channel::ChannelModel& chan, Sampler& rng) {
    plan.validate();
    if (chan.n != plan.n || chan.good_indices != plan.good_indices) {
        throw std::domain_error("scan: plan and channel disagree on layout");
    }
    const auto gains = channel::draw_gains(chan, rng);
    const double noise_var = chan.noise.complex_variance;

    SpreadScanResult result;
    result.per_channel.reserve(plan.l);
    result.aggregate_output.assign(plan.n, Complex(0.0, 0.0));

    for (std::size_t i = 0; i < plan.l; ++i) {
        const SpreadFrame frame = build_frame(plan, i, q_x);
        const double frame_energy = frame_inner_product(frame, frame).real();
        if (!(frame_energy > 0.0)) {
            throw std::domain_error("scan: pilot window must have positive energy");
        }
        const Complex gain = gains[plan.good_indices[i]];
        const auto output =
            channel::transmit_block(std::vector<Complex>(plan.n, gain), frame.entries,
                                    chan.noise, rng);
        for (std::size_t j = 0; j < plan.n; ++j) {
            result.aggregate_output[j] += output[j];
        }
        // Project onto the unit frame direction: raw = gain * |P| + noise.
        const double frame_norm = std::sqrt(frame_energy);
        Complex raw(0.0, 0.0);
        for (std::size_t j = 0; j < plan.n; ++j) {
            raw += std::conj(frame.entries[j]) * output[j];
        }
        raw /= frame_norm;

        const estimation::Statistic stat{raw / frame_norm, noise_var / frame_energy};
        // Unit-prior shrinkage: zeta = |P| / (|P|^2 + noise) * raw.
        const estimation::Estimate est =
            estimation::mmse_estimate(stat, 1.0, frame_energy, noise_var);
        result.per_channel.push_back(
            SpreadChannelEstimate{plan.good_indices[i], raw, stat, est});
    }
    return result;
}

estimation::Estimate repeated_estimate(const SpreadPlan& plan,
                                       const std::vector<Complex>& raw_statistics,
                                       double frame_energy, double noise_var) {
    plan.validate();
    if (raw_statistics.size() != plan.k) {
        throw std::domain_error("repeated_estimate: expected exactly k statistics");
    }
    if (!(frame_energy > 0.0) || !(noise_var >= 0.0)) {
        throw std::domain_error("repeated_estimate: need positive energy, non-negative noise");
    }
    Complex sum(0.0, 0.0);
    for (const Complex& s : raw_statistics) {
        sum += s;
    }
    const double kk = static_cast<double>(plan.k);
    const double frame_norm = std::sqrt(frame_energy);
    const Complex value = frame_norm / (kk * frame_energy + noise_var) * sum;
    const double mse = noise_var / (noise_var + kk * frame_energy);
    return estimation::Estimate{value, mse, 1.0};
}

double spread_error_probability(std::size_t k, double snr) {
    if (k < 1 || !(snr > 0.0)) {
        throw std::domain_error("spread_error_probability: need k >= 1 and snr > 0");
    }
    return q_function(std::sqrt(static_cast<double>(k) * snr));
}

} // namespace aqd::spreading
