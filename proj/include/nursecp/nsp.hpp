#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nursecp/model.hpp"
#include "nursecp/search.hpp"

namespace nursecp {

struct Preference {
    int nurse = 0; // 0-based
    int day = 0;   // 0-based
    int shift = 0; // 0 = requested day off
    double weight = 1.0;
};

/// One scheduling problem. Shift codes are 1..num_shifts, 0 is Off.
/// Weeks are consecutive 7-day windows from day 0; a trailing short
/// window scales the workday bounds (floor on the min, ceil on the max).
struct RosterInstance {
    int num_nurses = 0;
    int num_days = 0;
    int num_shifts = 0;
    double alpha = 0.5;
    int work_days_min = 5;
    int work_days_max = 6;
    int max_distinct_per_shift_week = 2;
    std::vector<std::vector<int>> coverage; // [day][shift-1]
    std::vector<Preference> preferences;
};

/// Flat roster indexed through cell(). Day-major layout, so low variable
/// indices sweep whole day columns first; always go through cell().
using Schedule = std::vector<int>;

inline int cell(const RosterInstance& inst, int nurse, int day) {
    return day * inst.num_nurses + nurse;
}

struct FitnessReport {
    double fairness_f = 0;   // 1 / (1 + stddev of per-nurse workdays)
    double preference_g = 0; // weighted fraction of satisfied preferences
    double combined = 0;     // alpha * f + (1 - alpha) * g
    double alpha = 0;
};

struct Violation {
    std::string constraint; // "HC1".."HC5"
    int nurse = -1;         // 0-based, -1 when not applicable
    int day = -1;
    int shift = -1;
    int week = -1;
    std::string detail;
};

/// Throws std::invalid_argument when the instance breaks its invariants
/// (alpha range, coverage vs. nurse count, preference codes).
void validate_instance(const RosterInstance& inst);

/// Builds the CSP: one {0..S} variable per (nurse, day), wired with the
/// day-coverage, weekly-workload, weekly-continuity and late-stretch
/// constraints. Variable (n, k) is VarId cell(inst, n, k).
CspModel compile(const RosterInstance& inst);

FitnessReport fitness(const RosterInstance& inst, const Schedule& schedule);

/// Ground checker, independent of the CSP machinery. Empty result means
/// the roster satisfies every hard constraint.
std::vector<Violation> check_roster(const RosterInstance& inst, const Schedule& schedule);

/// Same count as check_roster(...).size(), without building the report.
/// Hot path of the penalty method.
int count_violations(const RosterInstance& inst, const Schedule& schedule);

/// 4 nurses, 7 days, 3 shifts, coverage 1 everywhere, no preferences.
RosterInstance canonical_instance();

/// Random instance that is feasible by construction: a witness roster is
/// built first and coverage is read off it. Deterministic in the seed.
/// Requires num_nurses >= num_shifts + 1.
RosterInstance benchmark_instance(int num_nurses, int num_shifts, int num_days,
                                  std::uint64_t seed);

} // namespace nursecp
