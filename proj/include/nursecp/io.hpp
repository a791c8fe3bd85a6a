#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nursecp/nsp.hpp"

namespace nursecp {

/// Strict whole-token numeric parsing and shortest round-trip rendering,
/// shared by the file formats and the CLI.
bool parse_exact_int(std::string_view token, long long& out);
bool parse_exact_double(std::string_view token, double& out);
std::string format_double(double v);

/// Raised on malformed instance or roster text. `line` is 1-based, 0 when
/// the failure is not tied to a single line.
struct ParseError : std::runtime_error {
    ParseError(int line_number, const std::string& message);
    int line = 0;
};

/// Line-oriented instance format: `#` comments, `key value...` lines
/// (nurses/days/shifts/alpha/work_days/max_distinct), `coverage default
/// <c>` or `coverage <day> <shift> <c>` overrides, and `pref <nurse>
/// <day> <shift> <weight>` entries. Nurse/day indices are 1-based in
/// files.
RosterInstance parse_instance(std::istream& in);
RosterInstance parse_instance_file(const std::string& path);

/// Inverse of parse_instance; parsing the result reproduces the instance.
std::string render_instance(const RosterInstance& inst);

/// Day-number header plus one `N<i>` row per nurse, single-space
/// separated. Three or fewer shifts use letters M/A/N with O for Off;
/// more shifts fall back to decimal codes with O for Off.
std::string render_roster(const RosterInstance& inst, const Schedule& schedule);

/// Reads the render_roster format back. Letters and decimal codes are
/// both accepted; codes are range-checked by check_roster, not here.
Schedule parse_roster(std::istream& in, const RosterInstance& inst);
Schedule parse_roster_file(const std::string& path, const RosterInstance& inst);

struct StatsSummary {
    int n_valid = 0;
    int n_missing = 0;
    double mean = 0;
    double sem = 0;      // stddev / sqrt(n)
    double stddev = 0;   // sample standard deviation, divisor n - 1
    double variance = 0; // stddev squared
};

/// Needs at least two samples; throws std::invalid_argument otherwise.
StatsSummary descriptive_stats(std::span<const double> samples);

/// Three-column descriptive table (runtime, CP fitness, PSO fitness) with
/// rows N Valid / N Missing / Mean / Std. Error of Mean / Std. Deviation
/// / Variance. Byte-deterministic.
std::string render_stats(const StatsSummary& cp_ms, const StatsSummary& cp_fit,
                         const StatsSummary& pso_fit);

} // namespace nursecp
