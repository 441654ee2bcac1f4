// SPDX-License-Identifier: Apache-2.0
//
// Sweep configuration. Seeds are mandatory: a run is a pure function of its
// configuration, never of ambient entropy.

#ifndef AQD_CONFIG_HPP
#define AQD_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqd/detection.hpp"
#include "aqd/types.hpp"

namespace aqd::harness {

enum class Experiment {
    PilotEstimation,     // antipodal pilot detection over fading sub-channels
    Spreading,           // k-fold repetition at fixed unit combined gain
    SingleDetection,     // collective detection at d = 1
    CollectiveDetection, // N-codeword detection in d dimensions
    Multiuser,           // per-user blocks, per-user bounds
    Fig3,                // estimation-vs-spreading comparison curves
};

std::string experiment_name(Experiment e);

enum class OutputFormat { Csv, Json };

struct GainModelConfig {
    enum class Kind { Rayleigh, Bounded } kind = Kind::Rayleigh;
    double variance = 1.0;            // Rayleigh
    std::vector<Complex> fixed_gains; // Bounded: effective per-component gains
};

struct SimulationConfig {
    Experiment experiment = Experiment::PilotEstimation;

    std::vector<double> snr_grid;
    std::vector<int> l_grid; // pilot-estimation / fig3
    std::vector<int> k_grid; // spreading / fig3
    int spread_n = 1;        // spreading frame slots (n = g + l - 1)
    int spread_g = 1;        // pilots per spreading frame
    int d = 1;
    int n_codewords = 2;
    std::vector<int> rk; // multiuser block dimensions

    GainModelConfig model;
    detection::Measurement measurement;

    std::uint64_t trials = 0;
    std::optional<std::uint64_t> master_seed;   // required
    std::optional<std::uint64_t> codeword_seed; // defaults to master_seed

    std::string output_path; // empty = stdout
    OutputFormat format = OutputFormat::Csv;
    int threads = 1;

    std::uint64_t seed() const { return master_seed.value(); }
    std::uint64_t codebook_seed() const {
        return codeword_seed.value_or(master_seed.value_or(0));
    }
};

/// Validation problems as "field.path: message" strings; empty means valid.
std::vector<std::string> validate(const SimulationConfig& config);

/// Thrown by run() on an invalid configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// JSON object mirroring the configuration (echoed into JSON reports).
std::string config_to_json(const SimulationConfig& config);

} // namespace aqd::harness

#endif
