// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "aqd/detection.hpp"
#include "aqd/estimation.hpp"
#include "aqd/special.hpp"
#include "test_util.hpp"

using aqd::Complex;
using namespace aqd::detection;

namespace {

Codeword cw(std::initializer_list<Complex> entries) { return Codeword{entries}; }

std::vector<Complex> effective(const GainVector& g, const Codeword& z) {
    std::vector<Complex> u(z.entries.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        u[j] = g.entries[j] * z.entries[j];
    }
    return u;
}

} // namespace

TEST_CASE("single_statistic: matched filter identity and heterodyne forms") {
    const Measurement het{MeasurementKind::Heterodyne, 1.0};
    const auto s = single_statistic(Complex(0.7, -0.3), {Complex(1, 0)}, het);
    CHECK(s.value == Complex(0.7, -0.3));
    CHECK_FALSE(s.real_valued);
    CHECK(s.noise_scale == 1.0);

    // The statistic value does not depend on the heterodyne noise scale.
    const Measurement het2{MeasurementKind::Heterodyne, 2.0};
    const auto s2 = single_statistic(Complex(0.7, -0.3), {Complex(0.3, 0.4)}, het2);
    const auto s1 = single_statistic(Complex(0.7, -0.3), {Complex(0.3, 0.4)},
                                     Measurement{MeasurementKind::Heterodyne, 1.0});
    CHECK(s2.value == s1.value);
    CHECK(s2.noise_scale == 2.0);

    // Homodyne on the position quadrature with equal gains (0.5, 0.5):
    // the quadrature channel gain is 0.5, so an input with x = 2 arrives
    // as x' = 1; the statistic returns it with unit direction.
    const std::vector<Complex> gains{{0.5, 0.5}, {0.5, 0.5}};
    CHECK(homodyne_channel_gain(gains, aqd::Quadrature::X) == doctest::Approx(0.5));
    const double x_observed = homodyne_channel_gain(gains, aqd::Quadrature::X) * 2.0;
    const auto hom = single_statistic(Complex(x_observed, 123.0), gains,
                                      Measurement{MeasurementKind::HomodyneX, 1.0});
    CHECK(hom.real_valued);
    CHECK(hom.value.imag() == 0.0);
    CHECK(hom.value.real() == doctest::Approx(1.0));
    CHECK(hom.noise_scale == 0.5);

    CHECK_THROWS_AS(single_statistic(Complex(1, 0), {}, het), std::domain_error);
    CHECK_THROWS_AS(single_statistic(Complex(1, 0), {Complex(0, 0)}, het),
                    std::domain_error);
}

TEST_CASE("gain vector magnitude sum is the exact l1 norm") {
    const GainVector gains({Complex(3, 4), Complex(0, -2), Complex(0.5, 0)});
    CHECK(gains.magnitude_sum == 5.0 + 2.0 + 0.5);
    CHECK(GainVector({}).magnitude_sum == 0.0);
}

TEST_CASE("difference_matrix: values, symmetry, and degenerate pair") {
    const auto zero = difference_matrix(cw({{2, 0}, {0, 2}}), cw({{2, 0}, {0, 2}}));
    CHECK(zero.singular_values_sq == std::vector<double>{0.0, 0.0});

    const auto diff = difference_matrix(cw({{2, 0}, {0, 0}}), cw({{0, 0}, {0, 2}}));
    CHECK(diff.singular_values_sq == std::vector<double>{4.0, 4.0});

    const auto swapped = difference_matrix(cw({{0, 0}, {0, 2}}), cw({{2, 0}, {0, 0}}));
    CHECK(swapped.singular_values_sq == diff.singular_values_sq);

    CHECK_THROWS_AS(difference_matrix(cw({{1, 0}}), cw({{1, 0}, {2, 0}})),
                    std::domain_error);
}

TEST_CASE("singular values match a dense SVD oracle on random instances") {
    aqd::Sampler rng(aqd::RngStream{41, 0});
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 1 + rep % 8;
        Codeword a, b;
        a.entries.resize(d);
        b.entries.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            a.entries[j] = rng.next_circular_gaussian(2.0);
            b.entries[j] = rng.next_circular_gaussian(2.0);
        }
        const auto diff = difference_matrix(a, b);

        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            m(j, j) = diff.diff_entries[j];
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        std::vector<double> oracle(d);
        for (std::size_t j = 0; j < d; ++j) {
            oracle[j] = svd.singularValues()[j] * svd.singularValues()[j];
        }
        std::vector<double> ours = diff.singular_values_sq;
        std::sort(ours.begin(), ours.end(), std::greater<>());
        for (std::size_t j = 0; j < d; ++j) {
            CHECK(std::abs(ours[j] - oracle[j]) <= 1e-10 * std::max(1.0, oracle[j]));
        }
    }
}

TEST_CASE("collective_statistic: noiseless decisions and the d=1 hand case") {
    const GainVector gains({Complex(0.6, 0.2), Complex(-0.3, 0.5)});
    const Codeword z_a = cw({{1, 0}, {0, 1}});
    const Codeword z_b = cw({{-1, 0}, {0, -1}});

    const auto from_a = collective_statistic(effective(gains, z_a), gains, z_a, z_b);
    CHECK(from_a.decided_index == 0);
    CHECK(from_a.s == 0.5);
    const auto from_b = collective_statistic(effective(gains, z_b), gains, z_a, z_b);
    CHECK(from_b.decided_index == 1);
    CHECK(from_b.s == -0.5);

    // d = 1, A = 1, pair (+1, -1), observed 0.3: midpoint 0, gamma = 0.3.
    const GainVector unit({Complex(1, 0)});
    const auto hand = collective_statistic({Complex(0.3, 0.0)}, unit, cw({{1, 0}}),
                                           cw({{-1, 0}}));
    CHECK(hand.decided_index == 0);
    CHECK(std::abs(hand.gamma - Complex(0.3, 0.0)) < 1e-15);
    CHECK(std::abs(hand.threshold) < 1e-15);

    CHECK_THROWS_AS(collective_statistic({Complex(0, 0)}, unit, cw({{1, 0}}), cw({{1, 0}})),
                    std::domain_error);
}

TEST_CASE("gamma magnitude carries s |A^dag M| in the noiseless case") {
    const GainVector gains({Complex(0.4, -0.2), Complex(0.1, 0.9)});
    const Codeword z_a = cw({{1.2, 0.3}, {-0.5, 0.8}});
    const Codeword z_b = cw({{-0.7, 0.1}, {0.4, 0.4}});
    double sep_sq = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
        sep_sq += std::norm(gains.entries[j] * (z_a.entries[j] - z_b.entries[j]));
    }
    const auto outcome = collective_statistic(effective(gains, z_a), gains, z_a, z_b);
    CHECK(std::abs(outcome.gamma - Complex(0.5 * std::sqrt(sep_sq), 0.0)) < 1e-12);
}

TEST_CASE("ml_decide: zero distance, tie-breaking, and dimension checks") {
    const GainVector gains({Complex(0.5, 0.5), Complex(1, 0)});
    Codebook book;
    book.codewords = {cw({{1, 0}, {1, 0}}), cw({{-1, 0}, {-1, 0}}), cw({{1, 0}, {-1, 0}})};
    for (std::size_t m = 0; m < book.size(); ++m) {
        CHECK(ml_decide(effective(gains, book.codewords[m]), gains, book) == m);
    }

    // All codewords identical under a masking gain: lowest index wins.
    const GainVector mask({Complex(0, 0), Complex(0, 0)});
    CHECK(ml_decide({Complex(5, 5), Complex(1, 2)}, mask, book) == 0);

    Codebook degenerate;
    degenerate.codewords = {cw({{1, 0}})};
    CHECK_THROWS_AS(ml_decide({Complex(0, 0)}, GainVector({Complex(1, 0)}), degenerate),
                    std::domain_error);
}

TEST_CASE("projection decision equals the full ML decision (randomized)") {
    std::uint64_t mismatches = 0;
    for (std::uint64_t t = 0; t < 20000; ++t) {
        aqd::Sampler rng(aqd::RngStream{42, t});
        const std::size_t d = 1 + (t % 4);
        std::vector<Complex> g(d);
        for (auto& gj : g) {
            gj = rng.next_circular_gaussian(1.0);
        }
        const GainVector gains(std::move(g));
        Codebook book;
        book.codewords.resize(2);
        for (auto& c : book.codewords) {
            c.entries.resize(d);
            for (auto& z : c.entries) {
                z = rng.next_circular_gaussian(2.0);
            }
        }
        std::vector<Complex> observed(d);
        const std::size_t sent = rng.next_bool() ? 0 : 1;
        for (std::size_t j = 0; j < d; ++j) {
            observed[j] = gains.entries[j] * book.codewords[sent].entries[j] +
                          rng.next_circular_gaussian(0.8);
        }
        const auto proj =
            collective_statistic(observed, gains, book.codewords[0], book.codewords[1]);
        if (proj.decided_index != ml_decide(observed, gains, book)) {
            ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("scale covariance: positive gain scaling preserves decisions") {
    aqd::Sampler rng(aqd::RngStream{43, 0});
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t d = 1 + rep % 3;
        std::vector<Complex> g(d);
        Codeword z_a, z_b;
        z_a.entries.resize(d);
        z_b.entries.resize(d);
        std::vector<Complex> observed(d);
        for (std::size_t j = 0; j < d; ++j) {
            g[j] = rng.next_circular_gaussian(1.0);
            z_a.entries[j] = rng.next_circular_gaussian(2.0);
            z_b.entries[j] = rng.next_circular_gaussian(2.0);
        }
        const GainVector gains(g);
        const double c = 0.5 + rng.next_double() * 3.0;
        std::vector<Complex> scaled_g(d);
        for (std::size_t j = 0; j < d; ++j) {
            scaled_g[j] = c * g[j];
        }
        const GainVector scaled(scaled_g);

        const auto u = effective(gains, z_a);
        const auto u_scaled = effective(scaled, z_a);
        const auto base = collective_statistic(u, gains, z_a, z_b);
        const auto cov = collective_statistic(u_scaled, scaled, z_a, z_b);
        CHECK(base.decided_index == cov.decided_index);
        CHECK(std::abs(std::abs(cov.gamma) - c * std::abs(base.gamma)) <
              1e-9 * std::max(1.0, c * std::abs(base.gamma)));
    }
}

TEST_CASE("pairwise_error: degenerate pair, calibrated separation, and space identity") {
    const GainVector unit({Complex(1, 0)});
    CHECK(pairwise_error(unit, cw({{1, 1}}), cw({{1, 1}}), 1.0, SignalSpace::Complex) ==
          doctest::Approx(0.5).epsilon(1e-15));

    // Separation 2 sqrt(2) sigma_N in the complex space gives Q(1).
    const double noise_var = 2.0; // sigma_N = 1
    const double sep = 2.0 * std::sqrt(2.0);
    CHECK(pairwise_error(unit, cw({{sep, 0}}), cw({{0, 0}}), noise_var,
                         SignalSpace::Complex) ==
          doctest::Approx(aqd::q_function(1.0)).epsilon(1e-14));

    // Real-subspace error at separation delta equals complex-space error at
    // delta * sqrt(2), exactly as formulas.
    for (double delta : {0.5, 1.0, 2.5}) {
        const double real_err = pairwise_error(unit, cw({{delta, 0}}), cw({{0, 0}}), 1.0,
                                               SignalSpace::RealSubspace);
        const double cplx_err = pairwise_error(unit, cw({{delta * std::sqrt(2.0), 0}}),
                                               cw({{0, 0}}), 1.0, SignalSpace::Complex);
        CHECK(real_err == doctest::Approx(cplx_err).epsilon(1e-14));
    }
    CHECK_THROWS_AS(pairwise_error(unit, cw({{1, 0}}), cw({{0, 0}}), 0.0,
                                   SignalSpace::Complex),
                    std::domain_error);
}

TEST_CASE("conditional_pair_error: hand value and consistency with pairwise_error") {
    const GainVector unit({Complex(1, 0)});
    const auto diff = difference_matrix(cw({{2, 0}}), cw({{0, 0}}));
    // sigma_N = 1 -> noise_var = 2; Q(2 / 2) = Q(1).
    CHECK(conditional_pair_error(unit, diff, 2.0) ==
          doctest::Approx(aqd::q_function(1.0)).epsilon(1e-14));
    CHECK(conditional_pair_error(unit, difference_matrix(cw({{1, 0}}), cw({{1, 0}})), 1.0) ==
          doctest::Approx(0.5).epsilon(1e-15));

    aqd::Sampler rng(aqd::RngStream{44, 0});
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 1 + rep % 4;
        std::vector<Complex> g(d);
        Codeword a, b;
        a.entries.resize(d);
        b.entries.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            g[j] = rng.next_circular_gaussian(1.0);
            a.entries[j] = rng.next_circular_gaussian(2.0);
            b.entries[j] = rng.next_circular_gaussian(2.0);
        }
        const GainVector gains(g);
        const double nv = 0.5 + rng.next_double();
        CHECK(conditional_pair_error(gains, difference_matrix(a, b), nv) ==
              doctest::Approx(pairwise_error(gains, a, b, nv, SignalSpace::RealSubspace))
                  .epsilon(1e-13));
    }
}

TEST_CASE("fixed-gain N=2 collective detection matches the closed form (MC)") {
    const GainVector gains({Complex(0.9, 0.1), Complex(0.2, -0.6)});
    Codebook book;
    book.codewords = {cw({{1.1, 0.2}, {-0.4, 0.5}}), cw({{-0.8, -0.1}, {0.7, 0.3}})};
    const double noise_var = 1.1;
    const std::size_t trials = 200000;
    const double empirical =
        exhaustive_error_rate(gains, book, noise_var, trials, aqd::RngStream{45, 0});
    const double analytic = conditional_pair_error(
        gains, difference_matrix(book.codewords[0], book.codewords[1]), noise_var);
    const double se = std::sqrt(analytic * (1 - analytic) / double(trials));
    CHECK(std::abs(empirical - analytic) <= 3.0 * se);
}

TEST_CASE("exhaustive_error_rate: noiseless runs are error-free and deterministic") {
    const GainVector gains({Complex(0.5, 0.5)});
    Codebook book;
    book.codewords = {cw({{2, 0}}), cw({{-2, 0}}), cw({{0, 2}})};
    CHECK(exhaustive_error_rate(gains, book, 1e-12, 2000, aqd::RngStream{46, 0}) == 0.0);
    const double a = exhaustive_error_rate(gains, book, 0.5, 5000, aqd::RngStream{46, 1});
    const double b = exhaustive_error_rate(gains, book, 0.5, 5000, aqd::RngStream{46, 1});
    CHECK(a == b);
}

TEST_CASE("diversity_bound: values, monotonicity, and log-log slope") {
    const auto diff1 = difference_matrix(cw({{2, 0}}), cw({{0, 0}})); // lambda^2 = 4
    CHECK(diversity_bound(diff1, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    const auto zero = difference_matrix(cw({{1, 0}}), cw({{1, 0}}));
    CHECK(diversity_bound(zero, 10.0) == 1.0);

    double prev = 1.0;
    for (double snr : {0.5, 1.0, 2.0, 8.0, 64.0}) {
        const double b = diversity_bound(diff1, snr);
        CHECK(b < prev);
        prev = b;
    }

    for (std::size_t d : {1u, 2u}) {
        Codeword a, b;
        a.entries.assign(d, Complex(1.5, 0.5));
        b.entries.assign(d, Complex(-0.5, -0.3));
        const auto diff = difference_matrix(a, b);
        const double b3 = diversity_bound(diff, 1e3);
        const double b4 = diversity_bound(diff, 1e4);
        const double slope = (std::log(b4) - std::log(b3)) / (std::log(1e4) - std::log(1e3));
        CHECK(std::abs(slope + double(d)) < 0.15);
    }
}

TEST_CASE("success_bound: values, limits, and high-SNR agreement with the diversity bound") {
    const auto diff = difference_matrix(cw({{2, 0}}), cw({{0, 0}}));
    CHECK(success_bound(diff, 10.0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(success_bound(diff, 1e12) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(success_bound(diff, 0.1) == 0.0); // clamped at zero

    const auto degenerate = difference_matrix(cw({{1, 0}, {1, 0}}), cw({{0, 0}, {1, 0}}));
    CHECK_THROWS_AS(success_bound(degenerate, 1.0), std::domain_error);

    // Complements agree asymptotically: (1 - success) / diversity -> 1.
    for (std::size_t d : {1u, 2u}) {
        Codeword a, b;
        a.entries.assign(d, Complex(1, 0));
        b.entries.assign(d, Complex(-1, 0));
        const auto dd = difference_matrix(a, b);
        const double ratio = diversity_bound(dd, 1e4) / (1.0 - success_bound(dd, 1e4));
        CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("random-gain error rate is dominated by the diversity bound") {
    aqd::Sampler cw_rng(aqd::RngStream{47, 0});
    const auto book = sample_codebook(2, 2, 1.0, cw_rng);
    const auto diff = difference_matrix(book.codewords[0], book.codewords[1]);
    for (double snr : {1.0, 4.0, 16.0}) {
        const double empirical =
            rayleigh_error_rate(book, snr, 100000, aqd::RngStream{48, 0});
        CHECK(empirical <= diversity_bound(diff, snr));
    }
}

TEST_CASE("random-gain d=1 error equals the diversity-order closed form (MC)") {
    // At d = 1 the expectation over CN(0,1) gains has the same closed form
    // as the pilot detection error at snr * lambda^2 / 4.
    aqd::Sampler cw_rng(aqd::RngStream{49, 0});
    const auto book = sample_codebook(2, 1, 1.0, cw_rng);
    const auto diff = difference_matrix(book.codewords[0], book.codewords[1]);
    const double snr = 4.0;
    const std::size_t trials = 200000;
    const double empirical = rayleigh_error_rate(book, snr, trials, aqd::RngStream{50, 0});
    const double analytic = aqd::estimation::pilot_error_probability(
        1, 0.25 * snr * diff.singular_values_sq[0]);
    const double se = std::sqrt(analytic * (1 - analytic) / double(trials));
    CHECK(std::abs(empirical - analytic) <= 3.0 * se);
}

TEST_CASE("codebook sampling and validation") {
    aqd::Sampler rng(aqd::RngStream{51, 0});
    const auto book = sample_codebook(4, 3, 2.0, rng);
    CHECK(book.size() == 4);
    CHECK(book.dim() == 3);
    book.validate();

    Codebook dupe;
    dupe.codewords = {cw({{1, 0}}), cw({{1, 0}})};
    CHECK_THROWS_AS(dupe.validate(), std::domain_error);
}
