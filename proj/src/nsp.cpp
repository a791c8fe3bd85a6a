#include "nursecp/nsp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace nursecp {

namespace {

struct WeekWindow {
    int start = 0;
    int length = 0;
    int min_work = 0;
    int max_work = 0;
};

// Consecutive 7-day windows; a short trailing window gets scaled bounds
// (floor on the min, ceil on the max).
std::vector<WeekWindow> week_windows(const RosterInstance& inst) {
    std::vector<WeekWindow> windows;
    for (int start = 0; start < inst.num_days; start += 7) {
        WeekWindow w;
        w.start = start;
        w.length = std::min(7, inst.num_days - start);
        w.min_work = inst.work_days_min * w.length / 7;
        w.max_work = (inst.work_days_max * w.length + 6) / 7;
        windows.push_back(w);
    }
    return windows;
}

std::uint64_t working_codes_mask(int num_shifts) {
    return (Domain::range(1, num_shifts)).bits();
}

std::uint64_t late_codes_mask(int num_shifts) {
    return num_shifts >= 2 ? Domain::range(2, num_shifts).bits() : 0;
}

int coverage_total(const RosterInstance& inst, int day) {
    int total = 0;
    for (int s = 0; s < inst.num_shifts; ++s)
        total += inst.coverage[static_cast<std::size_t>(day)][static_cast<std::size_t>(s)];
    return total;
}

} // namespace

void validate_instance(const RosterInstance& inst) {
    if (inst.num_nurses < 1)
        throw std::invalid_argument("nurses must be at least 1");
    if (inst.num_days < 1)
        throw std::invalid_argument("days must be at least 1");
    if (inst.num_shifts < 1 || inst.num_shifts > Domain::kMaxValue)
        throw std::invalid_argument("shifts must be in 1..63");
    if (!(inst.alpha >= 0.0 && inst.alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0,1], got " + std::to_string(inst.alpha));
    if (inst.work_days_min < 0 || inst.work_days_min > inst.work_days_max)
        throw std::invalid_argument("work_days bounds must satisfy 0 <= min <= max");
    if (inst.max_distinct_per_shift_week < 1)
        throw std::invalid_argument("max_distinct must be at least 1");
    if (static_cast<int>(inst.coverage.size()) != inst.num_days)
        throw std::invalid_argument("coverage must have one row per day");
    for (int k = 0; k < inst.num_days; ++k) {
        const auto& row = inst.coverage[static_cast<std::size_t>(k)];
        if (static_cast<int>(row.size()) != inst.num_shifts)
            throw std::invalid_argument("coverage row for day " + std::to_string(k + 1) +
                                        " must have one entry per shift");
        int total = 0;
        for (int c : row) {
            if (c < 0)
                throw std::invalid_argument("coverage on day " + std::to_string(k + 1) +
                                            " is negative");
            total += c;
        }
        if (total > inst.num_nurses)
            throw std::invalid_argument("coverage on day " + std::to_string(k + 1) + " totals " +
                                        std::to_string(total) + ", more than " +
                                        std::to_string(inst.num_nurses) + " nurses");
    }
    for (const Preference& p : inst.preferences) {
        if (p.nurse < 0 || p.nurse >= inst.num_nurses)
            throw std::invalid_argument("preference names an unknown nurse");
        if (p.day < 0 || p.day >= inst.num_days)
            throw std::invalid_argument("preference names an unknown day");
        if (p.shift < 0 || p.shift > inst.num_shifts)
            throw std::invalid_argument("preference shift code outside 0.." +
                                        std::to_string(inst.num_shifts));
        if (!(p.weight > 0))
            throw std::invalid_argument("preference weight must be positive");
    }
}

CspModel compile(const RosterInstance& inst) {
    validate_instance(inst);
    CspModel model;
    // creation order must agree with cell(): day-major
    for (int k = 0; k < inst.num_days; ++k)
        for (int n = 0; n < inst.num_nurses; ++n)
            model.add_variable(Domain::range(0, inst.num_shifts));

    // day coverage
    for (int k = 0; k < inst.num_days; ++k) {
        std::vector<VarId> column;
        for (int n = 0; n < inst.num_nurses; ++n)
            column.push_back(cell(inst, n, k));
        const auto& row = inst.coverage[static_cast<std::size_t>(k)];
        bool one_each = inst.num_nurses == inst.num_shifts + 1 &&
                        std::all_of(row.begin(), row.end(), [](int c) { return c == 1; });
        if (one_each) {
            model.add_propagator({column, AllDifferent{}});
            model.add_propagator({column, CountInRange{Domain::single(0).bits(), 1, 1}});
        } else {
            GlobalCardinality gcc;
            gcc.counts.push_back({0, inst.num_nurses - coverage_total(inst, k)});
            for (int s = 1; s <= inst.num_shifts; ++s)
                gcc.counts.push_back({s, row[static_cast<std::size_t>(s - 1)]});
            model.add_propagator({column, std::move(gcc)});
        }
    }

    // weekly workload
    std::uint64_t working = working_codes_mask(inst.num_shifts);
    for (const WeekWindow& w : week_windows(inst)) {
        if (w.min_work <= 0 && w.max_work >= w.length)
            continue;
        for (int n = 0; n < inst.num_nurses; ++n) {
            std::vector<VarId> scope;
            for (int k = w.start; k < w.start + w.length; ++k)
                scope.push_back(cell(inst, n, k));
            model.add_propagator({std::move(scope), CountInRange{working, w.min_work, w.max_work}});
        }
    }

    // weekly shift continuity
    if (inst.max_distinct_per_shift_week < inst.num_nurses) {
        for (const WeekWindow& w : week_windows(inst)) {
            std::vector<VarId> scope;
            for (int n = 0; n < inst.num_nurses; ++n)
                for (int k = w.start; k < w.start + w.length; ++k)
                    scope.push_back(cell(inst, n, k));
            for (int s = 1; s <= inst.num_shifts; ++s)
                model.add_propagator(
                    {scope, AtMostKDistinctRows{s, inst.max_distinct_per_shift_week, w.length}});
        }
    }

    // late-shift stretches
    std::uint64_t late = late_codes_mask(inst.num_shifts);
    if (late != 0) {
        for (int n = 0; n < inst.num_nurses; ++n) {
            std::vector<VarId> scope;
            for (int k = 0; k < inst.num_days; ++k)
                scope.push_back(cell(inst, n, k));
            model.add_propagator({std::move(scope), NeighborStretch{late}});
        }
    }

    return model;
}

FitnessReport fitness(const RosterInstance& inst, const Schedule& schedule) {
    if (static_cast<int>(schedule.size()) != inst.num_nurses * inst.num_days)
        throw std::invalid_argument("schedule size does not match the instance");

    double mean = 0;
    std::vector<int> totals(static_cast<std::size_t>(inst.num_nurses), 0);
    for (int n = 0; n < inst.num_nurses; ++n) {
        for (int k = 0; k < inst.num_days; ++k)
            if (schedule[static_cast<std::size_t>(cell(inst, n, k))] != 0)
                ++totals[static_cast<std::size_t>(n)];
        mean += totals[static_cast<std::size_t>(n)];
    }
    mean /= inst.num_nurses;
    double var = 0;
    for (int t : totals)
        var += (t - mean) * (t - mean);
    var /= inst.num_nurses;

    FitnessReport report;
    report.alpha = inst.alpha;
    report.fairness_f = 1.0 / (1.0 + std::sqrt(var));
    if (inst.preferences.empty()) {
        report.preference_g = 1.0;
    } else {
        double total = 0, satisfied = 0;
        for (const Preference& p : inst.preferences) {
            total += p.weight;
            if (schedule[static_cast<std::size_t>(cell(inst, p.nurse, p.day))] == p.shift)
                satisfied += p.weight;
        }
        report.preference_g = satisfied / total;
    }
    report.combined = inst.alpha * report.fairness_f + (1.0 - inst.alpha) * report.preference_g;
    return report;
}

std::vector<Violation> check_roster(const RosterInstance& inst, const Schedule& schedule) {
    if (static_cast<int>(schedule.size()) != inst.num_nurses * inst.num_days)
        throw std::invalid_argument("schedule size does not match the instance");
    std::vector<Violation> out;
    auto code = [&](int n, int k) { return schedule[static_cast<std::size_t>(cell(inst, n, k))]; };

    // HC1: cell codes live in the shift universe
    for (int n = 0; n < inst.num_nurses; ++n)
        for (int k = 0; k < inst.num_days; ++k)
            if (code(n, k) < 0 || code(n, k) > inst.num_shifts)
                out.push_back({"HC1", n, k, code(n, k), k / 7,
                               "nurse " + std::to_string(n + 1) + " day " + std::to_string(k + 1) +
                                   ": shift code " + std::to_string(code(n, k)) + " outside 0.." +
                                   std::to_string(inst.num_shifts)});

    // HC2: exact day coverage
    for (int k = 0; k < inst.num_days; ++k)
        for (int s = 1; s <= inst.num_shifts; ++s) {
            int want = inst.coverage[static_cast<std::size_t>(k)][static_cast<std::size_t>(s - 1)];
            int have = 0;
            for (int n = 0; n < inst.num_nurses; ++n)
                if (code(n, k) == s)
                    ++have;
            if (have != want)
                out.push_back({"HC2", -1, k, s, k / 7,
                               "day " + std::to_string(k + 1) + " shift " + std::to_string(s) +
                                   ": needs " + std::to_string(want) + " nurses, has " +
                                   std::to_string(have)});
        }

    // HC3: weekly workload bounds
    std::vector<WeekWindow> windows = week_windows(inst);
    for (int n = 0; n < inst.num_nurses; ++n)
        for (std::size_t w = 0; w < windows.size(); ++w) {
            int work = 0;
            for (int k = windows[w].start; k < windows[w].start + windows[w].length; ++k)
                if (code(n, k) != 0)
                    ++work;
            if (work < windows[w].min_work || work > windows[w].max_work)
                out.push_back({"HC3", n, -1, -1, static_cast<int>(w),
                               "nurse " + std::to_string(n + 1) + " week " + std::to_string(w + 1) +
                                   ": " + std::to_string(work) + " work days, allowed " +
                                   std::to_string(windows[w].min_work) + ".." +
                                   std::to_string(windows[w].max_work)});
        }

    // HC4: distinct nurses per shift per week
    for (std::size_t w = 0; w < windows.size(); ++w)
        for (int s = 1; s <= inst.num_shifts; ++s) {
            int distinct = 0;
            for (int n = 0; n < inst.num_nurses; ++n)
                for (int k = windows[w].start; k < windows[w].start + windows[w].length; ++k)
                    if (code(n, k) == s) {
                        ++distinct;
                        break;
                    }
            if (distinct > inst.max_distinct_per_shift_week)
                out.push_back({"HC4", -1, -1, s, static_cast<int>(w),
                               "shift " + std::to_string(s) + " week " + std::to_string(w + 1) +
                                   ": " + std::to_string(distinct) + " distinct nurses, allowed " +
                                   std::to_string(inst.max_distinct_per_shift_week)});
        }

    // HC5: no isolated late-shift day
    for (int n = 0; n < inst.num_nurses; ++n)
        for (int k = 0; k < inst.num_days; ++k) {
            int v = code(n, k);
            if (v < 2 || v > inst.num_shifts)
                continue;
            bool prev_same = k > 0 && code(n, k - 1) == v;
            bool next_same = k + 1 < inst.num_days && code(n, k + 1) == v;
            if (!prev_same && !next_same)
                out.push_back({"HC5", n, k, v, k / 7,
                               "nurse " + std::to_string(n + 1) + " day " + std::to_string(k + 1) +
                                   ": isolated late shift " + std::to_string(v)});
        }

    return out;
}

int count_violations(const RosterInstance& inst, const Schedule& schedule) {
    if (static_cast<int>(schedule.size()) != inst.num_nurses * inst.num_days)
        throw std::invalid_argument("schedule size does not match the instance");
    int count = 0;
    auto code = [&](int n, int k) { return schedule[static_cast<std::size_t>(cell(inst, n, k))]; };

    for (int n = 0; n < inst.num_nurses; ++n)
        for (int k = 0; k < inst.num_days; ++k)
            if (code(n, k) < 0 || code(n, k) > inst.num_shifts)
                ++count;

    for (int k = 0; k < inst.num_days; ++k)
        for (int s = 1; s <= inst.num_shifts; ++s) {
            int have = 0;
            for (int n = 0; n < inst.num_nurses; ++n)
                if (code(n, k) == s)
                    ++have;
            if (have != inst.coverage[static_cast<std::size_t>(k)][static_cast<std::size_t>(s - 1)])
                ++count;
        }

    for (const WeekWindow& w : week_windows(inst)) {
        for (int n = 0; n < inst.num_nurses; ++n) {
            int work = 0;
            for (int k = w.start; k < w.start + w.length; ++k)
                if (code(n, k) != 0)
                    ++work;
            if (work < w.min_work || work > w.max_work)
                ++count;
        }
        for (int s = 1; s <= inst.num_shifts; ++s) {
            int distinct = 0;
            for (int n = 0; n < inst.num_nurses; ++n)
                for (int k = w.start; k < w.start + w.length; ++k)
                    if (code(n, k) == s) {
                        ++distinct;
                        break;
                    }
            if (distinct > inst.max_distinct_per_shift_week)
                ++count;
        }
    }

    for (int n = 0; n < inst.num_nurses; ++n)
        for (int k = 0; k < inst.num_days; ++k) {
            int v = code(n, k);
            if (v < 2 || v > inst.num_shifts)
                continue;
            bool prev_same = k > 0 && code(n, k - 1) == v;
            bool next_same = k + 1 < inst.num_days && code(n, k + 1) == v;
            if (!prev_same && !next_same)
                ++count;
        }

    return count;
}

RosterInstance canonical_instance() {
    RosterInstance inst;
    inst.num_nurses = 4;
    inst.num_days = 7;
    inst.num_shifts = 3;
    inst.alpha = 0.5;
    inst.coverage.assign(7, std::vector<int>(3, 1));
    return inst;
}

namespace {

// Off-day patterns (bit set = day off) of a window that keep the workday
// count within bounds and, for late-shift nurses, every in-window work
// run at least 2 days long.
std::vector<std::uint32_t> window_patterns(int length, int min_work, int max_work, bool late) {
    std::vector<std::uint32_t> patterns;
    for (std::uint32_t offs = 0; offs < (1u << length); ++offs) {
        int work = length - std::popcount(offs);
        if (work < min_work || work > max_work)
            continue;
        if (late) {
            int run = 0;
            bool ok = true;
            for (int d = 0; d <= length; ++d) {
                bool working = d < length && ((offs >> d) & 1u) == 0;
                if (working) {
                    ++run;
                } else {
                    if (run == 1)
                        ok = false;
                    run = 0;
                }
            }
            if (!ok)
                continue;
        }
        patterns.push_back(offs);
    }
    return patterns;
}

// Spreads off-days evenly over the window: each nurse takes a pattern
// that keeps the busiest off-day as light as possible (then the flattest
// load profile), ties broken by the rng.
std::vector<std::uint32_t> pick_balanced_patterns(const std::vector<std::vector<std::uint32_t>>& pools,
                                                  int length, std::mt19937_64& rng) {
    std::vector<int> load(static_cast<std::size_t>(length), 0);
    std::vector<std::uint32_t> picks(pools.size(), 0);
    std::vector<std::uint32_t> best;
    for (std::size_t i = 0; i < pools.size(); ++i) {
        long long best_key = -1;
        best.clear();
        for (std::uint32_t e : pools[i]) {
            int mx = 0;
            long long squares = 0;
            for (int d = 0; d < length; ++d) {
                int l = load[static_cast<std::size_t>(d)] + static_cast<int>((e >> d) & 1u);
                mx = std::max(mx, l);
                squares += l * l;
            }
            long long key = static_cast<long long>(mx) << 32 | squares;
            if (best_key < 0 || key < best_key) {
                best_key = key;
                best.clear();
            }
            if (key == best_key)
                best.push_back(e);
        }
        picks[i] = best[rng() % best.size()];
        for (int d = 0; d < length; ++d)
            load[static_cast<std::size_t>(d)] += static_cast<int>((picks[i] >> d) & 1u);
    }
    return picks;
}

// Picks one pattern per nurse whose off-days jointly cover every day of
// the window, when possible. Reachable-union sets are over day masks, so
// everything stays tiny (window <= 7 days).
std::vector<std::uint32_t> pick_covering_patterns(const std::vector<std::vector<std::uint32_t>>& pools,
                                                  int length, std::mt19937_64& rng) {
    std::size_t n = pools.size();
    std::uint32_t full = (1u << length) - 1;
    std::vector<std::vector<char>> reach(n + 1, std::vector<char>(full + 1, 0));
    reach[0][0] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t m = 0; m <= full; ++m) {
            if (!reach[i][m])
                continue;
            for (std::uint32_t e : pools[i])
                reach[i + 1][m | e] = 1;
        }

    std::vector<std::uint32_t> picks(n, 0);
    if (!reach[n][full]) {
        // cover impossible (too few off days to go around): independent
        // draws; the caller patches the uncovered days
        for (std::size_t i = 0; i < n; ++i)
            picks[i] = pools[i][rng() % pools[i].size()];
        return picks;
    }

    std::uint32_t target = full;
    for (std::size_t i = n; i-- > 0;) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> options; // (entry, prev union)
        for (std::uint32_t e : pools[i])
            for (std::uint32_t m = 0; m <= full; ++m)
                if (reach[i][m] && (m | e) == target)
                    options.push_back({e, m});
        const auto& pick = options[rng() % options.size()];
        picks[i] = pick.first;
        target = pick.second;
    }
    return picks;
}

} // namespace

RosterInstance benchmark_instance(int num_nurses, int num_shifts, int num_days,
                                  std::uint64_t seed) {
    if (num_nurses < num_shifts + 1)
        throw std::invalid_argument("benchmark instance needs nurses >= shifts + 1");
    if (num_days < 1)
        throw std::invalid_argument("benchmark instance needs at least one day");
    if (num_shifts < 1 || num_shifts > Domain::kMaxValue)
        throw std::invalid_argument("shifts must be in 1..63");

    RosterInstance inst;
    inst.num_nurses = num_nurses;
    inst.num_days = num_days;
    inst.num_shifts = num_shifts;
    inst.max_distinct_per_shift_week =
        std::max(2, (num_nurses + num_shifts - 1) / num_shifts);

    std::mt19937_64 rng(seed);

    // witness roster: nurse n sticks to shift n % S + 1, off-patterns are
    // drawn so that every day leaves at least one nurse off
    Schedule witness(static_cast<std::size_t>(num_nurses * num_days), 0);
    for (const WeekWindow& w : week_windows(inst)) {
        std::vector<std::vector<std::uint32_t>> pools;
        for (int n = 0; n < num_nurses; ++n) {
            bool late = n % num_shifts + 1 >= 2;
            pools.push_back(window_patterns(w.length, w.min_work, w.max_work, late));
        }
        std::vector<std::uint32_t> picks = pick_balanced_patterns(pools, w.length, rng);

        auto uncovered = [&]() {
            for (int d = 0; d < w.length; ++d) {
                bool someone_off = false;
                for (int n = 0; n < num_nurses && !someone_off; ++n)
                    someone_off = ((picks[static_cast<std::size_t>(n)] >> d) & 1u) != 0;
                if (!someone_off)
                    return d;
            }
            return -1;
        };

        if (uncovered() >= 0)
            picks = pick_covering_patterns(pools, w.length, rng);

        // patch days nobody has off (only reachable with very few nurses)
        for (int d = uncovered(); d >= 0; d = uncovered())
            picks[rng() % static_cast<std::size_t>(num_nurses)] |= 1u << d;

        for (int n = 0; n < num_nurses; ++n) {
            int shift = n % num_shifts + 1;
            for (int d = 0; d < w.length; ++d)
                if (((picks[static_cast<std::size_t>(n)] >> d) & 1u) == 0)
                    witness[static_cast<std::size_t>(cell(inst, n, w.start + d))] = shift;
        }
    }

    inst.coverage.assign(static_cast<std::size_t>(num_days),
                         std::vector<int>(static_cast<std::size_t>(num_shifts), 0));
    for (int n = 0; n < num_nurses; ++n)
        for (int k = 0; k < num_days; ++k) {
            int v = witness[static_cast<std::size_t>(cell(inst, n, k))];
            if (v != 0)
                ++inst.coverage[static_cast<std::size_t>(k)][static_cast<std::size_t>(v - 1)];
        }

    for (int i = 0; i < num_nurses; ++i) {
        Preference p;
        p.nurse = static_cast<int>(rng() % static_cast<std::uint64_t>(num_nurses));
        p.day = static_cast<int>(rng() % static_cast<std::uint64_t>(num_days));
        p.shift = static_cast<int>(rng() % static_cast<std::uint64_t>(num_shifts + 1));
        p.weight = 1.0;
        inst.preferences.push_back(p);
    }

    return inst;
}

} // namespace nursecp
