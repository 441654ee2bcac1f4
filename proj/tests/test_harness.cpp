// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "aqd/estimation.hpp"
#include "aqd/experiments.hpp"
#include "aqd/multiuser.hpp"
#include "aqd/special.hpp"
#include "aqd/spreading.hpp"

using namespace aqd::harness;

namespace {

SimulationConfig base_config(Experiment e) {
    SimulationConfig c;
    c.experiment = e;
    c.snr_grid = {1.0};
    c.l_grid = {1};
    c.k_grid = {1};
    c.trials = 1000;
    c.master_seed = 99;
    return c;
}

} // namespace

TEST_CASE("config validation reports field paths") {
    SimulationConfig c = base_config(Experiment::PilotEstimation);
    c.trials = 0;
    c.master_seed.reset();
    c.snr_grid.clear();
    c.l_grid.clear();
    const auto problems = validate(c);
    REQUIRE(problems.size() == 4);
    CHECK(problems[0].rfind("trials:", 0) == 0);
    CHECK(problems[1].rfind("seed:", 0) == 0);
    CHECK(problems[2].rfind("snr_grid:", 0) == 0);
    CHECK(problems[3].rfind("l_grid:", 0) == 0);

    CHECK_THROWS_AS(run(c), ConfigError);
}

TEST_CASE("config validation: detect-specific constraints") {
    SimulationConfig c = base_config(Experiment::CollectiveDetection);
    c.d = 2;
    c.model.kind = GainModelConfig::Kind::Bounded;
    c.model.fixed_gains = {aqd::Complex(0.5, 0.5)}; // wrong length
    auto problems = validate(c);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].rfind("model.bounded:", 0) == 0);

    c.model.fixed_gains.push_back(aqd::Complex(0.5, 0.5));
    CHECK(validate(c).empty());

    c.measurement.kind = aqd::detection::MeasurementKind::HomodyneX;
    c.n_codewords = 3;
    problems = validate(c);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].rfind("measurement:", 0) == 0);
}

TEST_CASE("compare: exact match, boundary, and degenerate analytic values") {
    CHECK(compare(0.5, 0.5, 1000).z_score == 0.0);

    const auto boundary = compare(0.1009, 0.1, 1000000);
    CHECK(boundary.z_score == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(boundary.pass);
    CHECK_FALSE(compare(0.10091, 0.1, 1000000).pass);

    // Wilson fallback keeps the score finite at analytic 0 or 1.
    const auto zero = compare(0.0, 0.0, 1000);
    CHECK(zero.z_score == 0.0);
    CHECK(zero.pass);
    const auto small = compare(0.001, 0.0, 1000);
    CHECK(std::isfinite(small.z_score));
    CHECK_THROWS_AS(compare(1.5, 0.5, 10), std::domain_error);
}

TEST_CASE("wilson interval brackets the empirical rate") {
    for (std::uint64_t errors : {0ull, 1ull, 50ull, 999ull, 1000ull}) {
        const auto ci = wilson_interval(errors, 1000);
        const double p = double(errors) / 1000.0;
        CHECK(ci.low <= p + 1e-12);
        CHECK(ci.high >= p - 1e-12);
        CHECK(ci.low >= 0.0);
        CHECK(ci.high <= 1.0);
    }
    // Degenerate one-trial report is still well-formed.
    const auto one = wilson_interval(1, 1);
    CHECK(one.low >= 0.0);
    CHECK(one.high <= 1.0);
}

TEST_CASE("csv round-trip is exact") {
    SimulationConfig c = base_config(Experiment::PilotEstimation);
    c.l_grid = {1, 2};
    c.snr_grid = {1.0, 4.0};
    const auto report = run(c);
    const auto parsed = from_csv(to_csv(report));
    CHECK(parsed == report);
    CHECK(to_csv(parsed) == to_csv(report));
}

TEST_CASE("reports are deterministic and thread-count independent") {
    SimulationConfig c = base_config(Experiment::PilotEstimation);
    c.trials = 20001;
    const auto a = to_csv(run(c));
    const auto b = to_csv(run(c));
    CHECK(a == b);
    c.threads = 4;
    CHECK(to_csv(run(c)) == a);
    c.threads = 16;
    CHECK(to_csv(run(c)) == a);
}

TEST_CASE("one-trial smoke run emits a well-formed report") {
    SimulationConfig c = base_config(Experiment::PilotEstimation);
    c.trials = 1;
    const auto report = run(c);
    REQUIRE(report.rows.size() == 1);
    const auto& row = report.rows[0];
    CHECK((row.empirical_p == 0.0 || row.empirical_p == 1.0));
    CHECK(row.ci_low <= row.empirical_p);
    CHECK(row.ci_high >= row.empirical_p);
}

TEST_CASE("analytic columns match an independent re-evaluation") {
    SimulationConfig c = base_config(Experiment::Fig3);
    c.l_grid = {1, 2};
    c.k_grid = {1, 2};
    c.snr_grid = {1.0, 4.0};
    c.trials = 2000;
    const auto report = run(c);
    for (const auto& row : report.rows) {
        double expected = 0.0;
        if (row.analytic_ref == "eq57") {
            const double snr_hat = row.snr_convention == "snr_hat"
                                       ? row.snr
                                       : aqd::estimation::snr_hat_from_snr(row.snr);
            expected = aqd::estimation::pilot_error_probability(*row.l, snr_hat);
        } else if (row.analytic_ref == "eq87") {
            expected = aqd::spreading::spread_error_probability(
                static_cast<std::size_t>(*row.k), row.snr);
        } else if (row.analytic_ref == "eq78") {
            expected = aqd::q_function(std::sqrt(row.snr));
        } else {
            FAIL("unexpected analytic_ref " << row.analytic_ref);
        }
        CHECK(std::abs(row.analytic_p - expected) <= 1e-12);
    }
}

TEST_CASE("detect and multiuser analytic columns re-derive from the config") {
    SimulationConfig c = base_config(Experiment::CollectiveDetection);
    c.d = 2;
    c.snr_grid = {4.0, 16.0};
    c.trials = 2000;
    c.model.kind = GainModelConfig::Kind::Bounded;
    c.model.fixed_gains = {aqd::Complex(0.5, 0.5), aqd::Complex(0.6, 0.6)};
    {
        const auto book = detection_codebook(c);
        const auto diff =
            aqd::detection::difference_matrix(book.codewords[0], book.codewords[1]);
        const aqd::detection::GainVector gains(c.model.fixed_gains);
        for (const auto& row : run(c).rows) {
            const double expected =
                aqd::detection::conditional_pair_error(gains, diff, 1.0 / row.snr);
            CHECK(std::abs(row.analytic_p - expected) <= 1e-12);
        }
    }

    c.model = GainModelConfig{}; // rayleigh, variance 1
    {
        const auto book = detection_codebook(c);
        const auto diff =
            aqd::detection::difference_matrix(book.codewords[0], book.codewords[1]);
        for (const auto& row : run(c).rows) {
            const double expected = aqd::detection::diversity_bound(diff, row.snr);
            CHECK(std::abs(row.analytic_p - expected) <= 1e-12);
        }
    }

    SimulationConfig mu = base_config(Experiment::Multiuser);
    mu.rk = {1, 2};
    mu.snr_grid = {4.0};
    mu.trials = 2000;
    const auto pairs = multiuser_codebooks(mu);
    for (const auto& row : run(mu).rows) {
        const auto diff = aqd::detection::difference_matrix(
            pairs[*row.k].codewords[0], pairs[*row.k].codewords[1]);
        const double expected = aqd::multiuser::user_error_bound(
            diff, row.snr, static_cast<std::size_t>(*row.d));
        CHECK(std::abs(row.analytic_p - expected) <= 1e-12);
    }
}

TEST_CASE("fig3 sweep satisfies the qualitative curve ordering") {
    SimulationConfig c = base_config(Experiment::Fig3);
    c.l_grid = {2, 4, 6, 8};
    c.k_grid = {1, 2};
    c.snr_grid = {150.0, 200.0, 300.0};
    c.trials = 100; // ordering checks read the analytic columns
    const auto report = run(c);

    for (double snr : c.snr_grid) {
        double prev = 1.0;
        double eq87_k1 = -1.0;
        double eq87_k2 = -1.0;
        double limit = -1.0;
        double l8 = -1.0;
        double l4 = -1.0;
        for (const auto& row : report.rows) {
            if (row.snr != snr) {
                continue;
            }
            if (row.analytic_ref == "eq57") {
                // Monotone decreasing in l pointwise.
                CHECK(row.analytic_p < prev);
                prev = row.analytic_p;
                if (*row.l == 4) {
                    l4 = row.analytic_p;
                }
                if (*row.l == 8) {
                    l8 = row.analytic_p;
                }
            } else if (row.analytic_ref == "eq87" && *row.k == 1) {
                eq87_k1 = row.analytic_p;
            } else if (row.analytic_ref == "eq87" && *row.k == 2) {
                eq87_k2 = row.analytic_p;
            } else if (row.analytic_ref == "eq78") {
                limit = row.analytic_p;
            }
        }
        // The k = 1 repetition curve is the large-l limit curve.
        CHECK(std::abs(eq87_k1 - limit) <= 1e-12);
        // Repetition strictly helps.
        CHECK(eq87_k2 < eq87_k1);
        // At high SNR the estimation curves converge toward the limit from
        // above: l = 8 sits between l = 4 and the limit curve.
        CHECK(l8 < l4);
        CHECK(l8 > limit);
    }
}

TEST_CASE("multiuser rows carry per-user bounds and pass one-sided") {
    SimulationConfig c = base_config(Experiment::Multiuser);
    c.rk = {1, 2};
    c.snr_grid = {4.0};
    c.trials = 20000;
    const auto report = run(c);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        CHECK(row.analytic_ref == "eq155");
        CHECK(is_bound_row(row));
        CHECK(row_passes(row));
        CHECK(row.empirical_p <= row.analytic_p);
    }
    CHECK(report.rows[0].d == 1);
    CHECK(report.rows[1].d == 2);
}

TEST_CASE("detect rows: fixed gains give exact references, random gains give bounds") {
    SimulationConfig fixed = base_config(Experiment::CollectiveDetection);
    fixed.d = 2;
    fixed.snr_grid = {4.0};
    fixed.trials = 50000;
    fixed.model.kind = GainModelConfig::Kind::Bounded;
    fixed.model.fixed_gains = {aqd::Complex(0.5, 0.5), aqd::Complex(0.6, 0.6)};
    const auto fixed_report = run(fixed);
    REQUIRE(fixed_report.rows.size() == 1);
    CHECK(fixed_report.rows[0].analytic_ref == "eq127");
    CHECK_FALSE(is_bound_row(fixed_report.rows[0]));
    CHECK(row_passes(fixed_report.rows[0]));

    SimulationConfig rayleigh = fixed;
    rayleigh.model = GainModelConfig{};
    const auto rayleigh_report = run(rayleigh);
    CHECK(rayleigh_report.rows[0].analytic_ref == "eq135");
    CHECK(is_bound_row(rayleigh_report.rows[0]));
    CHECK(rayleigh_report.rows[0].empirical_p <= rayleigh_report.rows[0].analytic_p);
}

TEST_CASE("homodyne detect path matches its quadrature-restricted closed form") {
    SimulationConfig c = base_config(Experiment::CollectiveDetection);
    c.d = 2;
    c.snr_grid = {2.0, 8.0};
    c.trials = 100000;
    c.model.kind = GainModelConfig::Kind::Bounded;
    c.model.fixed_gains = {aqd::Complex(0.5, 0.5), aqd::Complex(0.7, 0.7)};
    c.measurement.kind = aqd::detection::MeasurementKind::HomodyneX;
    const auto report = run(c);
    for (const auto& row : report.rows) {
        CHECK(row_passes(row));
    }

    c.measurement.kind = aqd::detection::MeasurementKind::HomodyneP;
    for (const auto& row : run(c).rows) {
        CHECK(row_passes(row));
    }
}

TEST_CASE("json report carries the rows and a config echo") {
    SimulationConfig c = base_config(Experiment::Spreading);
    c.format = OutputFormat::Json;
    c.trials = 500;
    const auto report = run(c);
    const auto text = render_report(report, c);
    CHECK(text.find("\"config\"") != std::string::npos);
    CHECK(text.find("\"experiment\": \"spreading\"") != std::string::npos);
    CHECK(text.find("\"rows\"") != std::string::npos);
    CHECK(text.find("\"analytic_ref\": \"eq87\"") != std::string::npos);
}
