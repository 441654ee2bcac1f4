// SPDX-License-Identifier: Apache-2.0
//
// Error-rate reports: one row per sweep grid point pairing the empirical
// Monte Carlo rate (with a 95% Wilson interval) against the matching
// closed-form value, plus the z-score of the difference. Closed forms are
// identified by an analytic_ref label; rows whose reference is an upper
// bound (eq135, eq155, and any union-bound row with more than two
// codewords) pass one-sided, all others two-sided at 3 sigma.

#ifndef AQD_REPORT_HPP
#define AQD_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aqd::harness {

struct ReportRow {
    std::string experiment;
    double snr = 0.0;
    std::string snr_convention; // "snr" (complex SNR) or "snr_hat" (half of it)
    std::optional<int> l;
    std::optional<int> k; // repetitions; carries the user index on multiuser rows
    std::optional<int> d;
    std::optional<int> n_codewords;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double empirical_p = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double analytic_p = 0.0;
    std::string analytic_ref;
    double z_score = 0.0;

    bool operator==(const ReportRow&) const = default;
};

struct ErrorRateReport {
    std::vector<ReportRow> rows;

    bool operator==(const ErrorRateReport&) const = default;
};

struct Interval {
    double low;
    double high;
};

/// 95% Wilson score interval for errors successes out of trials.
Interval wilson_interval(std::uint64_t errors, std::uint64_t trials);

struct Comparison {
    double z_score;
    bool pass;
};

/// Two-sided 3-sigma comparison against an exact closed form. The binomial
/// standard error uses the analytic p; when that is 0 or 1 the Wilson
/// center of the empirical count stands in so the score stays finite.
Comparison compare(double empirical, double analytic, std::uint64_t trials);

/// One-sided comparison against an upper bound: fails only when the
/// empirical rate exceeds the bound by more than 3 sigma.
Comparison compare_bound(double empirical, double bound, std::uint64_t trials);

/// True when the row's reference is an upper bound rather than an exact value.
bool is_bound_row(const ReportRow& row);

/// Row-level pass under the appropriate (one- or two-sided) 3-sigma gate.
bool row_passes(const ReportRow& row);
bool all_rows_pass(const ErrorRateReport& report);

/// CSV with the mandatory header row; floating-point fields are emitted in
/// shortest round-trip form so parse(emit(r)) == r exactly.
std::string to_csv(const ErrorRateReport& report);
ErrorRateReport from_csv(const std::string& text);

constexpr const char* kCsvHeader =
    "experiment,snr,snr_convention,l,k,d,n_codewords,trials,seed,"
    "empirical_p,ci_low,ci_high,analytic_p,analytic_ref,z_score";

} // namespace aqd::harness

#endif
