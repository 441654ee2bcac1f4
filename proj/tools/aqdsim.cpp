// SPDX-License-Identifier: Apache-2.0
//
// aqdsim — deterministic Monte Carlo sweeps for multicarrier quadrature
// detection, with CSV/JSON reports pairing empirical error rates against
// their closed-form references.
//
// Exit codes: 0 all rows pass their 3-sigma gate, 2 at least one row
// fails, 1 configuration or I/O error.

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "aqd/experiments.hpp"

namespace {

using aqd::harness::SimulationConfig;

struct CommonArgs {
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t codeword_seed = 0;
    bool codeword_seed_set = false;
    std::string snr_grid;
    std::string out_path;
    std::string format = "csv";
    int threads = 1;
};

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(item, &pos));
            if (pos != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag, "expected a comma-separated list of numbers");
        }
    }
    return values;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> values;
    for (double v : parse_double_list(text, flag)) {
        values.push_back(static_cast<int>(v));
    }
    return values;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--trials", args.trials, "Monte Carlo trials per grid point")
        ->capture_default_str();
    cmd->add_option("--seed", args.seed, "master seed (required; no entropy defaults)")
        ->required();
    cmd->add_option("--snr-grid", args.snr_grid, "comma-separated SNR grid (linear units)");
    cmd->add_option("--out", args.out_path, "output path (default: stdout)");
    cmd->add_option("--format", args.format, "csv|json")->capture_default_str();
    cmd->add_option("--threads", args.threads, "worker threads (results are identical for any value)")
        ->capture_default_str();
    cmd->add_option("--codeword-seed", args.codeword_seed,
                    "codebook seed (default: master seed)");
}

void apply_common(const CLI::App* cmd, const CommonArgs& args, SimulationConfig& config,
                  const std::string& default_snr_grid) {
    config.trials = args.trials;
    config.master_seed = args.seed;
    if (cmd->count("--codeword-seed") > 0) {
        config.codeword_seed = args.codeword_seed;
    }
    const std::string grid =
        cmd->count("--snr-grid") > 0 ? args.snr_grid : default_snr_grid;
    config.snr_grid = parse_double_list(grid, "--snr-grid");
    config.output_path = args.out_path;
    if (args.format == "csv") {
        config.format = aqd::harness::OutputFormat::Csv;
    } else if (args.format == "json") {
        config.format = aqd::harness::OutputFormat::Json;
    } else {
        throw CLI::ValidationError("--format", "must be csv or json");
    }
    config.threads = args.threads;
}

void parse_model(const std::string& text, SimulationConfig& config) {
    if (text.rfind("rayleigh:", 0) == 0) {
        config.model.kind = aqd::harness::GainModelConfig::Kind::Rayleigh;
        config.model.variance = std::stod(text.substr(9));
        return;
    }
    if (text.rfind("bounded:", 0) == 0) {
        // The list holds gain magnitudes; each becomes the physically
        // symmetric gain (t/sqrt(2)) (1 + i) with equal quadratures.
        config.model.kind = aqd::harness::GainModelConfig::Kind::Bounded;
        config.model.fixed_gains.clear();
        for (double t : parse_double_list(text.substr(8), "--model")) {
            const double q = t / std::sqrt(2.0);
            config.model.fixed_gains.emplace_back(q, q);
        }
        return;
    }
    throw CLI::ValidationError("--model", "expected rayleigh:VAR or bounded:LIST");
}

void parse_measurement(const std::string& text, SimulationConfig& config) {
    if (text == "hom-x") {
        config.measurement.kind = aqd::detection::MeasurementKind::HomodyneX;
    } else if (text == "hom-p") {
        config.measurement.kind = aqd::detection::MeasurementKind::HomodyneP;
    } else if (text == "het") {
        config.measurement.kind = aqd::detection::MeasurementKind::Heterodyne;
        config.measurement.heterodyne_c = 1.0;
    } else if (text.rfind("het:", 0) == 0) {
        config.measurement.kind = aqd::detection::MeasurementKind::Heterodyne;
        config.measurement.heterodyne_c = std::stod(text.substr(4));
    } else {
        throw CLI::ValidationError("--measurement", "expected hom-x, hom-p, or het[:c]");
    }
}

int emit(const aqd::harness::ErrorRateReport& report, const SimulationConfig& config) {
    const std::string rendered = aqd::harness::render_report(report, config);
    if (config.output_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(config.output_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output path " << config.output_path << "\n";
            return 1;
        }
        out << rendered;
    }
    return aqd::harness::all_rows_pass(report) ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive quadrature detection sweeps for multicarrier CVQKD"};
    app.require_subcommand(1);

    CommonArgs common;
    SimulationConfig config;
    std::string l_list = "1,2,4";
    std::string k_list = "1,2";
    std::string rk_list = "1,2";
    std::string model_text = "rayleigh:1";
    std::string measurement_text = "het";

    CLI::App* estimate = app.add_subcommand(
        "estimate", "Pilot detection error vs. the diversity closed form (snr_hat grid)");
    add_common(estimate, common);
    estimate->add_option("--l", l_list, "comma-separated list of sub-channel counts")
        ->capture_default_str();

    CLI::App* spread = app.add_subcommand(
        "spread", "k-fold repetition at fixed unit combined gain (complex SNR grid)");
    add_common(spread, common);
    spread->add_option("--k", k_list, "comma-separated repetition counts")
        ->capture_default_str();
    spread->add_option("--g", config.spread_g, "pilots per frame window")
        ->capture_default_str();
    spread->add_option("--n", config.spread_n, "frame slots (>= g; zero-padded outside the window)")
        ->capture_default_str();

    CLI::App* detect = app.add_subcommand(
        "detect", "Collective codeword detection (complex SNR grid)");
    add_common(detect, common);
    detect->add_option("--d", config.d, "codeword dimension")->capture_default_str();
    detect->add_option("--codewords", config.n_codewords, "codebook size")
        ->capture_default_str();
    detect->add_option("--model", model_text, "rayleigh:VAR | bounded:LIST (d magnitudes)")
        ->capture_default_str();
    detect->add_option("--measurement", measurement_text, "hom-x | hom-p | het[:c]")
        ->capture_default_str();

    CLI::App* mu = app.add_subcommand(
        "multiuser", "Per-user detection against per-user bounds (complex SNR grid)");
    add_common(mu, common);
    mu->add_option("--rk", rk_list, "comma-separated per-user block dimensions")
        ->capture_default_str();

    CLI::App* fig3 = app.add_subcommand(
        "fig3", "Estimation vs. spreading comparison curves (complex SNR grid)");
    add_common(fig3, common);
    fig3->add_option("--l", l_list, "pilot-detection curve orders")->capture_default_str();
    fig3->add_option("--k", k_list, "repetition curve orders")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // --help exits 0, any parse problem is a config error
    }

    try {
        if (estimate->parsed()) {
            config.experiment = aqd::harness::Experiment::PilotEstimation;
            apply_common(estimate, common, config, "1,4,16");
            config.l_grid = parse_int_list(l_list, "--l");
        } else if (spread->parsed()) {
            config.experiment = aqd::harness::Experiment::Spreading;
            apply_common(spread, common, config, "1,4");
            config.k_grid = parse_int_list(k_list, "--k");
            if (spread->count("--n") == 0) {
                config.spread_n = config.spread_g;
            }
        } else if (detect->parsed()) {
            parse_model(model_text, config);
            parse_measurement(measurement_text, config);
            config.experiment = config.d == 1
                                    ? aqd::harness::Experiment::SingleDetection
                                    : aqd::harness::Experiment::CollectiveDetection;
            apply_common(detect, common, config, "1,4,16,64");
        } else if (mu->parsed()) {
            config.experiment = aqd::harness::Experiment::Multiuser;
            config.rk = parse_int_list(rk_list, "--rk");
            apply_common(mu, common, config, "4,16");
        } else if (fig3->parsed()) {
            config.experiment = aqd::harness::Experiment::Fig3;
            apply_common(fig3, common, config, "0.5,1,2,4,8,16");
            config.l_grid = parse_int_list(l_list, "--l");
            config.k_grid = parse_int_list(k_list, "--k");
        }

        const auto report = aqd::harness::run(config);
        return emit(report, config);
    } catch (const aqd::harness::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
