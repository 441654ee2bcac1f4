// SPDX-License-Identifier: Apache-2.0

#include "aqd/multiuser.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aqd::multiuser {

UserAllocation UserAllocation::make(std::size_t k_in, std::size_t k_out,
                                    std::vector<std::size_t> dims) {
    UserAllocation alloc;
    alloc.k_in = k_in;
    alloc.k_out = k_out;
    alloc.dims = std::move(dims);
    alloc.d = 0;
    for (std::size_t r : alloc.dims) {
        alloc.d += r;
    }
    alloc.validate();
    return alloc;
}

void UserAllocation::validate() const {
    if (k_out == 0 || dims.size() != k_out) {
        throw std::domain_error("UserAllocation: dims must list r_k for each of k_out users");
    }
    std::size_t total = 0;
    for (std::size_t r : dims) {
        if (r < 1 || r > d) {
            throw std::domain_error("UserAllocation: each r_k must satisfy 1 <= r_k <= d");
        }
        total += r;
    }
    if (total != d) {
        throw std::domain_error("UserAllocation: sum of r_k must equal d");
    }
}

std::size_t UserAllocation::block_offset(std::size_t user) const {
    if (user >= k_out) {
        throw std::domain_error("UserAllocation: user index out of range");
    }
    std::size_t off = 0;
    for (std::size_t k = 0; k < user; ++k) {
        off += dims[k];
    }
    return off;
}

std::vector<Complex> compose_output(const UserAllocation& allocation,
                                    const std::vector<std::vector<Complex>>& per_user_inputs,
                                    const std::vector<UserChannel>& channels, Sampler& rng) {
    allocation.validate();
    if (per_user_inputs.size() != allocation.k_out || channels.size() != allocation.k_out) {
        throw std::domain_error("compose_output: need one input and one channel per user");
    }
    std::vector<Complex> out(allocation.d, Complex(0.0, 0.0));
    std::size_t off = 0;
    for (std::size_t k = 0; k < allocation.k_out; ++k) {
        const std::size_t r = allocation.dims[k];
        const auto& input = per_user_inputs[k];
        const auto& chan = channels[k];
        if (input.size() != r || chan.gains.dim() != r) {
            throw std::domain_error("compose_output: block dimension mismatch for user " +
                                    std::to_string(k));
        }
        for (std::size_t j = 0; j < r; ++j) {
            out[off + j] = chan.gains.entries[j] * input[j] +
                           rng.next_circular_gaussian(chan.noise_var);
        }
        off += r;
    }
    return out;
}

UserDecision user_statistic(const std::vector<Complex>& block, const UserChannel& chan,
                            const detection::Codeword& z_a, const detection::Codeword& z_b) {
    const auto outcome = detection::collective_statistic(block, chan.gains, z_a, z_b);
    return UserDecision{chan.user, outcome.gamma, outcome.s, outcome.decided_index};
}

double user_error_bound(const detection::DifferenceMatrix& diff, double snr_k,
                        std::size_t r_k) {
    if (diff.singular_values_sq.size() != r_k) {
        throw std::domain_error("user_error_bound: difference dimension must equal r_k");
    }
    return detection::diversity_bound(diff, snr_k);
}

std::vector<Complex> kappa_decode(const std::vector<Complex>& observed,
                                  const detection::GainVector& gains, double epsilon) {
    if (observed.size() != gains.dim()) {
        throw std::domain_error("kappa_decode: dimension mismatch");
    }
    std::vector<Complex> out(observed.size());
    for (std::size_t j = 0; j < observed.size(); ++j) {
        if (std::abs(gains.entries[j]) <= epsilon) {
            throw std::domain_error("kappa_decode: near-singular gain at component " +
                                    std::to_string(j));
        }
        out[j] = observed[j] / gains.entries[j];
    }
    return out;
}

std::size_t kappa_threshold_decide(const std::vector<Complex>& block,
                                   const detection::GainVector& gains,
                                   const detection::Codeword& z_a,
                                   const detection::Codeword& z_b, double epsilon) {
    const auto inverted = kappa_decode(block, gains, epsilon);
    if (z_a.entries.size() != inverted.size() || z_b.entries.size() != inverted.size()) {
        throw std::domain_error("kappa_threshold_decide: codeword dimension mismatch");
    }
    double da = 0.0;
    double db = 0.0;
    for (std::size_t j = 0; j < inverted.size(); ++j) {
        da += std::norm(inverted[j] - z_a.entries[j]);
        db += std::norm(inverted[j] - z_b.entries[j]);
    }
    return da <= db ? 0 : 1;
}

Complex kappa_path_statistic(const std::vector<Complex>& block,
                             const detection::GainVector& gains) {
    if (block.size() != gains.dim()) {
        throw std::domain_error("kappa_path_statistic: dimension mismatch");
    }
    if (!(gains.magnitude_sum > 0.0)) {
        throw std::domain_error("kappa_path_statistic: degenerate gains");
    }
    const auto inverted = kappa_decode(block, gains);
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < inverted.size(); ++j) {
        acc += gains.entries[j] * inverted[j];
    }
    return acc / gains.magnitude_sum;
}

} // namespace aqd::multiuser
