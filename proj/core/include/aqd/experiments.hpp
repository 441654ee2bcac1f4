// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo sweep engine. Every run is deterministic given the
// configuration: trial t of simulation batch b draws from the counter
// stream (seed, b * trials + t), so results do not depend on thread count
// or scheduling, and error counts aggregate as integers.

#ifndef AQD_EXPERIMENTS_HPP
#define AQD_EXPERIMENTS_HPP

#include <string>

#include "aqd/config.hpp"
#include "aqd/report.hpp"

namespace aqd::harness {

/// Execute the configured sweep. Throws ConfigError on invalid input.
ErrorRateReport run(const SimulationConfig& config);

/// Estimation-vs-spreading comparison: one row per (snr, l) from the pilot
/// detection closed form, one per (snr, k) from the repetition form, plus
/// the large-l limit curve Q(sqrt(snr)) per snr.
ErrorRateReport sweep_figure3(const SimulationConfig& config);

/// Codebook a detection sweep draws: a pure function of the codeword seed,
/// d, and N, so report rows can be re-derived outside the engine.
detection::Codebook detection_codebook(const SimulationConfig& config);

/// Per-user N = 2 codeword pairs of a multiuser sweep, in user order.
std::vector<detection::Codebook> multiuser_codebooks(const SimulationConfig& config);

/// JSON document holding the rows plus an echo of the configuration.
std::string report_to_json(const ErrorRateReport& report, const SimulationConfig& config);

/// Render in the configured format.
std::string render_report(const ErrorRateReport& report, const SimulationConfig& config);

} // namespace aqd::harness

#endif
