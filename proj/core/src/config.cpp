// SPDX-License-Identifier: Apache-2.0

#include "aqd/config.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <sstream>

namespace aqd::harness {

std::string experiment_name(Experiment e) {
    switch (e) {
    case Experiment::PilotEstimation: return "pilot-estimation";
    case Experiment::Spreading: return "spreading";
    case Experiment::SingleDetection: return "single-detection";
    case Experiment::CollectiveDetection: return "collective-detection";
    case Experiment::Multiuser: return "multiuser";
    case Experiment::Fig3: return "fig3";
    }
    return "unknown";
}

namespace {

void check_grid(const std::vector<double>& grid, const char* name, bool positive,
                std::vector<std::string>& problems) {
    if (grid.empty()) {
        problems.push_back(std::string(name) + ": must be non-empty");
        return;
    }
    for (double v : grid) {
        if (positive ? !(v > 0.0) : !(v >= 0.0)) {
            problems.push_back(std::string(name) + ": entries must be positive");
            return;
        }
    }
}

void check_int_grid(const std::vector<int>& grid, const char* name,
                    std::vector<std::string>& problems) {
    if (grid.empty()) {
        problems.push_back(std::string(name) + ": must be non-empty");
        return;
    }
    for (int v : grid) {
        if (v < 1) {
            problems.push_back(std::string(name) + ": entries must be >= 1");
            return;
        }
    }
}

} // namespace

std::vector<std::string> validate(const SimulationConfig& c) {
    std::vector<std::string> problems;

    if (c.trials < 1) {
        problems.push_back("trials: must be >= 1");
    }
    if (c.trials > (std::uint64_t{1} << 40)) {
        problems.push_back("trials: must be <= 2^40 (stream-id budget)");
    }
    if (!c.master_seed) {
        problems.push_back("seed: required; runs never draw ambient entropy");
    }
    if (c.threads < 1 || c.threads > 4096) {
        problems.push_back("threads: must be in [1, 4096]");
    }
    check_grid(c.snr_grid, "snr_grid", true, problems);

    switch (c.experiment) {
    case Experiment::PilotEstimation:
        check_int_grid(c.l_grid, "l_grid", problems);
        break;
    case Experiment::Spreading:
        check_int_grid(c.k_grid, "k_grid", problems);
        if (c.spread_g < 1) {
            problems.push_back("g: must be >= 1");
        }
        if (c.spread_n < c.spread_g) {
            problems.push_back("n: must be >= g (frame holds g pilots in n slots)");
        }
        break;
    case Experiment::SingleDetection:
    case Experiment::CollectiveDetection: {
        if (c.d < 1) {
            problems.push_back("d: must be >= 1");
        }
        if (c.n_codewords < 2) {
            problems.push_back("codebook.n: must be >= 2");
        }
        if (c.model.kind == GainModelConfig::Kind::Bounded &&
            c.model.fixed_gains.size() != static_cast<std::size_t>(c.d)) {
            problems.push_back("model.bounded: need exactly d fixed gains");
        }
        if (c.model.kind == GainModelConfig::Kind::Rayleigh && !(c.model.variance > 0.0)) {
            problems.push_back("model.rayleigh: variance must be > 0");
        }
        const bool homodyne = c.measurement.kind != detection::MeasurementKind::Heterodyne;
        if (homodyne && c.n_codewords != 2) {
            problems.push_back("measurement: homodyne detection supports exactly 2 codewords");
        }
        if (homodyne && c.model.kind == GainModelConfig::Kind::Rayleigh) {
            problems.push_back(
                "measurement: homodyne requires fixed gains (bound rows assume heterodyne)");
        }
        if (!(c.measurement.heterodyne_c > 0.0)) {
            problems.push_back("measurement.c: must be > 0");
        }
        break;
    }
    case Experiment::Multiuser: {
        if (c.rk.empty()) {
            problems.push_back("rk: must list at least one user block dimension");
        }
        for (int r : c.rk) {
            if (r < 1) {
                problems.push_back("rk: entries must be >= 1");
                break;
            }
        }
        break;
    }
    case Experiment::Fig3:
        check_int_grid(c.l_grid, "l_grid", problems);
        check_int_grid(c.k_grid, "k_grid", problems);
        break;
    }
    return problems;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&problems] {
          std::ostringstream msg;
          msg << "invalid configuration:";
          for (const auto& p : problems) {
              msg << "\n  " << p;
          }
          return msg.str();
      }()),
      problems_(std::move(problems)) {}

std::string config_to_json(const SimulationConfig& c) {
    nlohmann::json j;
    j["experiment"] = experiment_name(c.experiment);
    j["snr_grid"] = c.snr_grid;
    if (!c.l_grid.empty()) {
        j["l_grid"] = c.l_grid;
    }
    if (!c.k_grid.empty()) {
        j["k_grid"] = c.k_grid;
    }
    if (c.experiment == Experiment::Spreading) {
        j["n"] = c.spread_n;
        j["g"] = c.spread_g;
    }
    if (c.experiment == Experiment::SingleDetection ||
        c.experiment == Experiment::CollectiveDetection) {
        j["d"] = c.d;
        j["n_codewords"] = c.n_codewords;
        j["codeword_seed"] = c.codebook_seed();
        if (c.model.kind == GainModelConfig::Kind::Rayleigh) {
            j["model"] = {{"kind", "rayleigh"}, {"variance", c.model.variance}};
        } else {
            nlohmann::json gains = nlohmann::json::array();
            for (const Complex& g : c.model.fixed_gains) {
                gains.push_back({g.real(), g.imag()});
            }
            j["model"] = {{"kind", "bounded"}, {"gains", gains}};
        }
        switch (c.measurement.kind) {
        case detection::MeasurementKind::HomodyneX: j["measurement"] = "hom-x"; break;
        case detection::MeasurementKind::HomodyneP: j["measurement"] = "hom-p"; break;
        case detection::MeasurementKind::Heterodyne:
            j["measurement"] = {{"kind", "het"}, {"c", c.measurement.heterodyne_c}};
            break;
        }
    }
    if (c.experiment == Experiment::Multiuser) {
        j["rk"] = c.rk;
        j["codeword_seed"] = c.codebook_seed();
    }
    j["trials"] = c.trials;
    j["seed"] = c.master_seed.value_or(0);
    j["threads"] = c.threads;
    j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
    if (!c.output_path.empty()) {
        j["output_path"] = c.output_path;
    }
    return j.dump(2);
}

} // namespace aqd::harness
