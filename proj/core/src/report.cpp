// SPDX-License-Identifier: Apache-2.0

#include "aqd/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace aqd::harness {

namespace {

constexpr double kZ95 = 1.959963984540054; // two-sided 95% normal quantile

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_opt(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
}

double parse_double(std::string_view s, const char* field) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::runtime_error(std::string("from_csv: bad double in column ") + field);
    }
    return v;
}

std::uint64_t parse_u64(std::string_view s, const char* field) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::runtime_error(std::string("from_csv: bad integer in column ") + field);
    }
    return v;
}

std::optional<int> parse_opt(std::string_view s, const char* field) {
    if (s.empty()) {
        return std::nullopt;
    }
    return static_cast<int>(parse_u64(s, field));
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace

Interval wilson_interval(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) {
        throw std::domain_error("wilson_interval: trials must be >= 1");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return Interval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

Comparison compare(double empirical, double analytic, std::uint64_t trials) {
    if (!(empirical >= 0.0 && empirical <= 1.0) || !(analytic >= 0.0 && analytic <= 1.0)) {
        throw std::domain_error("compare: probabilities must lie in [0, 1]");
    }
    if (trials == 0) {
        throw std::domain_error("compare: trials must be >= 1");
    }
    const double n = static_cast<double>(trials);
    double se = std::sqrt(analytic * (1.0 - analytic) / n);
    if (se == 0.0) {
        // Degenerate analytic value: fall back to the Wilson center of the
        // empirical count, which is strictly inside (0, 1).
        const double z2 = kZ95 * kZ95;
        const double center = (empirical * n + z2 / 2.0) / (n + z2);
        se = std::sqrt(center * (1.0 - center) / n);
    }
    const double z = (empirical - analytic) / se;
    return Comparison{z, std::abs(z) <= 3.0};
}

Comparison compare_bound(double empirical, double bound, std::uint64_t trials) {
    Comparison c = compare(empirical, std::min(bound, 1.0), trials);
    c.pass = c.z_score <= 3.0;
    return c;
}

bool is_bound_row(const ReportRow& row) {
    if (row.analytic_ref == "eq135" || row.analytic_ref == "eq155") {
        return true;
    }
    // Union-bound rows: pairwise forms summed over more than two codewords.
    return row.n_codewords && *row.n_codewords > 2;
}

bool row_passes(const ReportRow& row) {
    const Comparison c = is_bound_row(row)
                             ? compare_bound(row.empirical_p, row.analytic_p, row.trials)
                             : compare(row.empirical_p, row.analytic_p, row.trials);
    return c.pass;
}

bool all_rows_pass(const ErrorRateReport& report) {
    for (const auto& row : report.rows) {
        if (!row_passes(row)) {
            return false;
        }
    }
    return true;
}

std::string to_csv(const ErrorRateReport& report) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : report.rows) {
        out << r.experiment << ',' << fmt_double(r.snr) << ',' << r.snr_convention << ','
            << fmt_opt(r.l) << ',' << fmt_opt(r.k) << ',' << fmt_opt(r.d) << ','
            << fmt_opt(r.n_codewords) << ',' << r.trials << ',' << r.seed << ','
            << fmt_double(r.empirical_p) << ',' << fmt_double(r.ci_low) << ','
            << fmt_double(r.ci_high) << ',' << fmt_double(r.analytic_p) << ','
            << r.analytic_ref << ',' << fmt_double(r.z_score) << '\n';
    }
    return out.str();
}

ErrorRateReport from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("from_csv: missing or unexpected header row");
    }
    ErrorRateReport report;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != 15) {
            throw std::runtime_error("from_csv: expected 15 columns");
        }
        ReportRow r;
        r.experiment = std::string(f[0]);
        r.snr = parse_double(f[1], "snr");
        r.snr_convention = std::string(f[2]);
        r.l = parse_opt(f[3], "l");
        r.k = parse_opt(f[4], "k");
        r.d = parse_opt(f[5], "d");
        r.n_codewords = parse_opt(f[6], "n_codewords");
        r.trials = parse_u64(f[7], "trials");
        r.seed = parse_u64(f[8], "seed");
        r.empirical_p = parse_double(f[9], "empirical_p");
        r.ci_low = parse_double(f[10], "ci_low");
        r.ci_high = parse_double(f[11], "ci_high");
        r.analytic_p = parse_double(f[12], "analytic_p");
        r.analytic_ref = std::string(f[13]);
        r.z_score = parse_double(f[14], "z_score");
        report.rows.push_back(std::move(r));
    }
    return report;
}

} // namespace aqd::harness
