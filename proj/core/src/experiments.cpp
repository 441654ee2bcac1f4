// SPDX-License-Identifier: Apache-2.0

#include "aqd/experiments.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "aqd/channel.hpp"
#include "aqd/detection.hpp"
#include "aqd/estimation.hpp"
#include "aqd/multiuser.hpp"
#include "aqd/rng.hpp"
#include "aqd/special.hpp"
#include "aqd/spreading.hpp"

namespace aqd::harness {

namespace {

// Stream id space reserved for codebook draws, far above any trial index.
constexpr std::uint64_t kCodebookStream = 0xC0DEB00C00000000ULL;

template <class TrialFn>
std::uint64_t count_errors(std::uint64_t trials, int threads, std::uint64_t seed,
                           std::uint64_t stream_base, const TrialFn& trial) {
    const int nt = std::max(1, threads);
    if (nt == 1 || trials < 2) {
        std::uint64_t errors = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Sampler rng(RngStream{seed, stream_base + t});
            if (trial(rng)) {
                ++errors;
            }
        }
        return errors;
    }
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(nt), 0);
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(nt));
    const std::uint64_t chunk = (trials + nt - 1) / nt;
    for (int w = 0; w < nt; ++w) {
        workers.emplace_back([&, w] {
            const std::uint64_t lo = std::min(trials, static_cast<std::uint64_t>(w) * chunk);
            const std::uint64_t hi = std::min(trials, lo + chunk);
            std::uint64_t e = 0;
            for (std::uint64_t t = lo; t < hi; ++t) {
                Sampler rng(RngStream{seed, stream_base + t});
                if (trial(rng)) {
                    ++e;
                }
            }
            partial[static_cast<std::size_t>(w)] = e;
        });
    }
    for (auto& th : workers) {
        th.join();
    }
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

// Per-trial vector of outcomes (one per counter), summed as integers.
template <class TrialFn>
std::vector<std::uint64_t> count_errors_multi(std::uint64_t trials, int threads,
                                              std::uint64_t seed, std::uint64_t stream_base,
                                              std::size_t counters, const TrialFn& trial) {
    const int nt = std::max(1, threads);
    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<std::size_t>(nt), std::vector<std::uint64_t>(counters, 0));
    auto work = [&](int w, std::uint64_t lo, std::uint64_t hi) {
        std::vector<bool> errs(counters);
        for (std::uint64_t t = lo; t < hi; ++t) {
            Sampler rng(RngStream{seed, stream_base + t});
            std::fill(errs.begin(), errs.end(), false);
            trial(rng, errs);
            for (std::size_t c = 0; c < counters; ++c) {
                if (errs[c]) {
                    ++partial[static_cast<std::size_t>(w)][c];
                }
            }
        }
    };
    if (nt == 1 || trials < 2) {
        work(0, 0, trials);
    } else {
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (trials + nt - 1) / nt;
        for (int w = 0; w < nt; ++w) {
            const std::uint64_t lo = std::min(trials, static_cast<std::uint64_t>(w) * chunk);
            const std::uint64_t hi = std::min(trials, lo + chunk);
            workers.emplace_back(work, w, lo, hi);
        }
        for (auto& th : workers) {
            th.join();
        }
    }
    std::vector<std::uint64_t> total(counters, 0);
    for (const auto& p : partial) {
        for (std::size_t c = 0; c < counters; ++c) {
            total[c] += p[c];
        }
    }
    return total;
}

ReportRow make_row(const SimulationConfig& config, std::string experiment, double snr,
                   std::string convention, std::uint64_t errors, double analytic,
                   std::string ref) {
    ReportRow row;
    row.experiment = std::move(experiment);
    row.snr = snr;
    row.snr_convention = std::move(convention);
    row.trials = config.trials;
    row.seed = config.seed();
    row.empirical_p = static_cast<double>(errors) / static_cast<double>(config.trials);
    const Interval ci = wilson_interval(errors, config.trials);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    row.analytic_p = analytic;
    row.analytic_ref = std::move(ref);
    row.z_score = compare(row.empirical_p, std::min(analytic, 1.0), config.trials).z_score;
    return row;
}

// Antipodal pilot detection over l fading sub-channels with maximal-ratio
// combining. The effective antipodal amplitude sqrt(snr_hat) against unit
// complex noise realizes the snr_hat = 0.5 |p_x|^2 / (2 sigma_N^2)
// bookkeeping, i.e. the sign rides on |p_x| / sqrt(2) per quadrature.
bool pilot_trial(Sampler& rng, int l, double amplitude) {
    static const CircularGaussianSpec unit_noise(1.0);
    const double s = rng.next_bool() ? 1.0 : -1.0;
    Complex stat(0.0, 0.0);
    for (int i = 0; i < l; ++i) {
        const Complex gain = rng.next_circular_gaussian(1.0);
        const Complex received =
            channel::transmit(gain, Complex(s * amplitude, 0.0), unit_noise, rng);
        stat += std::conj(gain) * received;
    }
    return (stat.real() >= 0.0 ? 1.0 : -1.0) != s;
}

// k coherent repetitions of a g-pilot window through a fixed unit gain,
// each repetition projected onto the window direction. The per-pilot
// amplitude keeps the window energy fixed, so the error is independent of
// the frame geometry.
bool spread_trial(Sampler& rng, int k, int g, double window_amplitude) {
    static const CircularGaussianSpec unit_noise(1.0);
    const double s = rng.next_bool() ? 1.0 : -1.0;
    const double pilot = window_amplitude / std::sqrt(static_cast<double>(g));
    const double unit = 1.0 / std::sqrt(static_cast<double>(g));
    Complex stat(0.0, 0.0);
    for (int rep = 0; rep < k; ++rep) {
        for (int j = 0; j < g; ++j) {
            stat += unit * channel::transmit(Complex(1.0, 0.0), Complex(s * pilot, 0.0),
                                             unit_noise, rng);
        }
    }
    return (stat.real() >= 0.0 ? 1.0 : -1.0) != s;
}

ErrorRateReport run_pilot_estimation(const SimulationConfig& config) {
    ErrorRateReport report;
    std::uint64_t base = 0;
    for (double snr_hat : config.snr_grid) {
        for (int l : config.l_grid) {
            const double amplitude = std::sqrt(snr_hat);
            const std::uint64_t errors =
                count_errors(config.trials, config.threads, config.seed(), base,
                             [&](Sampler& rng) { return pilot_trial(rng, l, amplitude); });
            base += config.trials;
            ReportRow row = make_row(config, "pilot-estimation", snr_hat, "snr_hat", errors,
                                     estimation::pilot_error_probability(l, snr_hat), "eq57");
            row.l = l;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

ErrorRateReport run_spreading(const SimulationConfig& config) {
    ErrorRateReport report;
    std::uint64_t base = 0;
    for (double snr : config.snr_grid) {
        for (int k : config.k_grid) {
            const double amplitude = std::sqrt(0.5 * snr);
            const int g = config.spread_g;
            const std::uint64_t errors =
                count_errors(config.trials, config.threads, config.seed(), base,
                             [&](Sampler& rng) { return spread_trial(rng, k, g, amplitude); });
            base += config.trials;
            ReportRow row =
                make_row(config, "spreading", snr, "snr", errors,
                         spreading::spread_error_probability(static_cast<std::size_t>(k), snr),
                         "eq87");
            row.k = k;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

struct DetectSetup {
    detection::Codebook codebook;
    std::vector<detection::DifferenceMatrix> pair_diffs; // all unordered pairs a < b
};

DetectSetup make_detect_setup(const SimulationConfig& config) {
    DetectSetup setup;
    setup.codebook = detection_codebook(config);
    for (std::size_t a = 0; a < setup.codebook.size(); ++a) {
        for (std::size_t b = a + 1; b < setup.codebook.size(); ++b) {
            auto diff = detection::difference_matrix(setup.codebook.codewords[a],
                                                     setup.codebook.codewords[b]);
            diff.pair = {a, b};
            setup.pair_diffs.push_back(std::move(diff));
        }
    }
    return setup;
}

// Quadrature-restricted separation of the effective pair under fixed gains.
double quadrature_separation(const detection::GainVector& gains,
                             const detection::DifferenceMatrix& diff, Quadrature q) {
    double acc = 0.0;
    for (std::size_t j = 0; j < diff.diff_entries.size(); ++j) {
        const double v = quadrature(gains.entries[j] * diff.diff_entries[j], q);
        acc += v * v;
    }
    return std::sqrt(acc);
}

ErrorRateReport run_detection(const SimulationConfig& config) {
    const DetectSetup setup = make_detect_setup(config);
    const std::size_t n = setup.codebook.size();
    const bool rayleigh = config.model.kind == GainModelConfig::Kind::Rayleigh;
    const bool heterodyne = config.measurement.kind == detection::MeasurementKind::Heterodyne;
    const Quadrature hom_quadrature =
        config.measurement.kind == detection::MeasurementKind::HomodyneX ? Quadrature::X
                                                                         : Quadrature::P;
    const double noise_scale = heterodyne ? config.measurement.heterodyne_c : 1.0;

    ErrorRateReport report;
    std::uint64_t base = 0;
    for (double snr : config.snr_grid) {
        const double noise_var = noise_scale / snr; // complex variance per component
        std::uint64_t errors = 0;
        double analytic = 0.0;
        std::string ref;

        if (rayleigh) {
            // Per-trial CN(0, variance) effective gains; the bound absorbs the
            // gain variance and heterodyne scale into the effective SNR.
            const double snr_eff = snr * config.model.variance / noise_scale;
            errors = count_errors(
                config.trials, config.threads, config.seed(), base, [&](Sampler& rng) {
                    std::vector<Complex> g(static_cast<std::size_t>(config.d));
                    for (auto& gj : g) {
                        gj = rng.next_circular_gaussian(config.model.variance);
                    }
                    const detection::GainVector gains(std::move(g));
                    const std::size_t sent = static_cast<std::size_t>(rng.next_u64() % n);
                    std::vector<Complex> obs(setup.codebook.dim());
                    for (std::size_t j = 0; j < obs.size(); ++j) {
                        obs[j] = gains.entries[j] * setup.codebook.codewords[sent].entries[j] +
                                 rng.next_circular_gaussian(noise_var);
                    }
                    return detection::ml_decide(obs, gains, setup.codebook) != sent;
                });
            double sum = 0.0;
            for (const auto& diff : setup.pair_diffs) {
                sum += 2.0 * detection::diversity_bound(diff, snr_eff); // both directions
            }
            analytic = std::min(1.0, sum / static_cast<double>(n));
            ref = "eq135";
        } else {
            const detection::GainVector gains(config.model.fixed_gains);
            if (heterodyne) {
                errors = count_errors(
                    config.trials, config.threads, config.seed(), base, [&](Sampler& rng) {
                        const std::size_t sent = static_cast<std::size_t>(rng.next_u64() % n);
                        std::vector<Complex> obs(setup.codebook.dim());
                        for (std::size_t j = 0; j < obs.size(); ++j) {
                            obs[j] =
                                gains.entries[j] * setup.codebook.codewords[sent].entries[j] +
                                rng.next_circular_gaussian(noise_var);
                        }
                        return detection::ml_decide(obs, gains, setup.codebook) != sent;
                    });
                double sum = 0.0;
                for (const auto& diff : setup.pair_diffs) {
                    sum += 2.0 * detection::conditional_pair_error(gains, diff, noise_var);
                }
                analytic = std::min(1.0, sum / static_cast<double>(n));
            } else {
                // Homodyne: only the selected quadrature is observed; N = 2.
                const auto& diff = setup.pair_diffs.front();
                const double separation = quadrature_separation(gains, diff, hom_quadrature);
                if (!(separation > 0.0)) {
                    throw std::domain_error(
                        "detect: codeword pair is ambiguous on the measured quadrature");
                }
                const double sigma_q = std::sqrt(0.5 * noise_var);
                std::vector<double> mid(setup.codebook.dim());
                std::vector<double> dir(setup.codebook.dim());
                for (std::size_t j = 0; j < mid.size(); ++j) {
                    const Complex ua =
                        gains.entries[j] * setup.codebook.codewords[0].entries[j];
                    const Complex ub =
                        gains.entries[j] * setup.codebook.codewords[1].entries[j];
                    mid[j] = 0.5 * (quadrature(ua, hom_quadrature) +
                                    quadrature(ub, hom_quadrature));
                    dir[j] = (quadrature(ua, hom_quadrature) -
                              quadrature(ub, hom_quadrature)) /
                             separation;
                }
                errors = count_errors(
                    config.trials, config.threads, config.seed(), base, [&](Sampler& rng) {
                        const std::size_t sent = static_cast<std::size_t>(rng.next_u64() % 2);
                        double stat = 0.0;
                        for (std::size_t j = 0; j < mid.size(); ++j) {
                            const Complex u =
                                gains.entries[j] * setup.codebook.codewords[sent].entries[j];
                            const double y =
                                quadrature(u, hom_quadrature) + sigma_q * rng.next_normal();
                            stat += dir[j] * (y - mid[j]);
                        }
                        return (stat >= 0.0 ? std::size_t{0} : std::size_t{1}) != sent;
                    });
                analytic = q_function(separation / (2.0 * sigma_q));
            }
            ref = "eq127";
        }
        base += config.trials;
        ReportRow row = make_row(config, experiment_name(config.experiment), snr, "snr",
                                 errors, analytic, ref);
        row.d = config.d;
        row.n_codewords = config.n_codewords;
        report.rows.push_back(std::move(row));
    }
    return report;
}

ErrorRateReport run_multiuser(const SimulationConfig& config) {
    const auto allocation = multiuser::UserAllocation::make(
        config.rk.size(), config.rk.size(),
        std::vector<std::size_t>(config.rk.begin(), config.rk.end()));

    const std::vector<detection::Codebook> pairs = multiuser_codebooks(config);
    std::vector<detection::DifferenceMatrix> diffs;
    for (std::size_t k = 0; k < allocation.k_out; ++k) {
        diffs.push_back(detection::difference_matrix(pairs[k].codewords[0],
                                                     pairs[k].codewords[1]));
    }

    ErrorRateReport report;
    std::uint64_t base = 0;
    for (double snr : config.snr_grid) {
        const double noise_var = 1.0 / snr; // unit per-component codeword variance
        const auto errors = count_errors_multi(
            config.trials, config.threads, config.seed(), base, allocation.k_out,
            [&](Sampler& rng, std::vector<bool>& errs) {
                std::vector<multiuser::UserChannel> chans;
                std::vector<std::vector<Complex>> inputs;
                std::vector<std::size_t> sent(allocation.k_out);
                chans.reserve(allocation.k_out);
                inputs.reserve(allocation.k_out);
                for (std::size_t k = 0; k < allocation.k_out; ++k) {
                    std::vector<Complex> g(allocation.dims[k]);
                    for (auto& gj : g) {
                        gj = rng.next_circular_gaussian(1.0);
                    }
                    chans.push_back(multiuser::UserChannel{
                        k, detection::GainVector(std::move(g)), snr, noise_var});
                    sent[k] = rng.next_bool() ? 0 : 1;
                    inputs.push_back(pairs[k].codewords[sent[k]].entries);
                }
                const auto out = multiuser::compose_output(allocation, inputs, chans, rng);
                for (std::size_t k = 0; k < allocation.k_out; ++k) {
                    const std::size_t off = allocation.block_offset(k);
                    const std::vector<Complex> block(out.begin() + off,
                                                     out.begin() + off + allocation.dims[k]);
                    const auto decision = multiuser::user_statistic(
                        block, chans[k], pairs[k].codewords[0], pairs[k].codewords[1]);
                    errs[k] = decision.decided_index != sent[k];
                }
            });
        base += config.trials;
        for (std::size_t k = 0; k < allocation.k_out; ++k) {
            ReportRow row =
                make_row(config, "multiuser", snr, "snr", errors[k],
                         multiuser::user_error_bound(diffs[k], snr, allocation.dims[k]),
                         "eq155");
            row.k = static_cast<int>(k); // user index
            row.d = static_cast<int>(allocation.dims[k]);
            row.n_codewords = 2;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

} // namespace

detection::Codebook detection_codebook(const SimulationConfig& config) {
    Sampler rng(RngStream{config.codebook_seed(), kCodebookStream});
    return detection::sample_codebook(static_cast<std::size_t>(config.n_codewords),
                                      static_cast<std::size_t>(config.d), 1.0, rng);
}

std::vector<detection::Codebook> multiuser_codebooks(const SimulationConfig& config) {
    Sampler rng(RngStream{config.codebook_seed(), kCodebookStream});
    std::vector<detection::Codebook> pairs;
    pairs.reserve(config.rk.size());
    for (int r : config.rk) {
        pairs.push_back(detection::sample_codebook(2, static_cast<std::size_t>(r), 1.0, rng));
    }
    return pairs;
}

ErrorRateReport sweep_figure3(const SimulationConfig& config) {
    ErrorRateReport report;
    std::uint64_t base = 0;
    for (double snr : config.snr_grid) {
        const double snr_hat = estimation::snr_hat_from_snr(snr);
        for (int l : config.l_grid) {
            const double amplitude = std::sqrt(snr_hat);
            const std::uint64_t errors =
                count_errors(config.trials, config.threads, config.seed(), base,
                             [&](Sampler& rng) { return pilot_trial(rng, l, amplitude); });
            base += config.trials;
            ReportRow row = make_row(config, "fig3", snr, "snr", errors,
                                     estimation::pilot_error_probability(l, snr_hat), "eq57");
            row.l = l;
            report.rows.push_back(std::move(row));
        }
        for (int k : config.k_grid) {
            const double amplitude = std::sqrt(0.5 * snr);
            const std::uint64_t errors =
                count_errors(config.trials, config.threads, config.seed(), base,
                             [&](Sampler& rng) { return spread_trial(rng, k, 1, amplitude); });
            base += config.trials;
            ReportRow row =
                make_row(config, "fig3", snr, "snr", errors,
                         spreading::spread_error_probability(static_cast<std::size_t>(k), snr),
                         "eq87");
            row.k = k;
            report.rows.push_back(std::move(row));
        }
        {
            // Large-l limit: combined gain concentrates at 1, so the error
            // equals a single repetition at unit gain.
            const double amplitude = std::sqrt(0.5 * snr);
            const std::uint64_t errors =
                count_errors(config.trials, config.threads, config.seed(), base,
                             [&](Sampler& rng) { return spread_trial(rng, 1, 1, amplitude); });
            base += config.trials;
            ReportRow row = make_row(config, "fig3", snr, "snr", errors,
                                     q_function(std::sqrt(snr)), "eq78");
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

ErrorRateReport run(const SimulationConfig& config) {
    auto problems = validate(config);
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
    switch (config.experiment) {
    case Experiment::PilotEstimation:
        return run_pilot_estimation(config);
    case Experiment::Spreading:
        return run_spreading(config);
    case Experiment::SingleDetection:
    case Experiment::CollectiveDetection:
        return run_detection(config);
    case Experiment::Multiuser:
        return run_multiuser(config);
    case Experiment::Fig3:
        return sweep_figure3(config);
    }
    throw ConfigError({"experiment: unknown"});
}

std::string report_to_json(const ErrorRateReport& report, const SimulationConfig& config) {
    nlohmann::json doc;
    doc["config"] = nlohmann::json::parse(config_to_json(config));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row;
        row["experiment"] = r.experiment;
        row["snr"] = r.snr;
        row["snr_convention"] = r.snr_convention;
        if (r.l) {
            row["l"] = *r.l;
        }
        if (r.k) {
            row["k"] = *r.k;
        }
        if (r.d) {
            row["d"] = *r.d;
        }
        if (r.n_codewords) {
            row["n_codewords"] = *r.n_codewords;
        }
        row["trials"] = r.trials;
        row["seed"] = r.seed;
        row["empirical_p"] = r.empirical_p;
        row["ci_low"] = r.ci_low;
        row["ci_high"] = r.ci_high;
        row["analytic_p"] = r.analytic_p;
        row["analytic_ref"] = r.analytic_ref;
        row["z_score"] = r.z_score;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string render_report(const ErrorRateReport& report, const SimulationConfig& config) {
    return config.format == OutputFormat::Json ? report_to_json(report, config)
                                               : to_csv(report);
}

} // namespace aqd::harness
