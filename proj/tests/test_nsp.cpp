#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "nursecp/nsp.hpp"
#include "nursecp/search.hpp"
#include "roster_oracle.hpp"

using namespace nursecp;

namespace {

// A hand-checked feasible roster of the canonical instance.
Schedule valid_canonical_roster(const RosterInstance& inst) {
    const int rows[4][7] = {
        {1, 1, 1, 1, 1, 1, 0},
        {2, 2, 2, 2, 0, 0, 1},
        {3, 3, 0, 0, 2, 2, 2},
        {0, 0, 3, 3, 3, 3, 3},
    };
    Schedule s(static_cast<std::size_t>(inst.num_nurses * inst.num_days));
    for (int n = 0; n < 4; ++n)
        for (int k = 0; k < 7; ++k)
            s[static_cast<std::size_t>(cell(inst, n, k))] = rows[n][k];
    return s;
}

int count_label(const std::vector<Violation>& violations, const std::string& label) {
    int count = 0;
    for (const Violation& v : violations)
        if (v.constraint == label)
            ++count;
    return count;
}

bool only_label(const std::vector<Violation>& violations, const std::string& label) {
    return !violations.empty() &&
           count_label(violations, label) == static_cast<int>(violations.size());
}

} // namespace

TEST_CASE("cell layout is day-major") {
    RosterInstance inst = canonical_instance();
    CHECK(cell(inst, 0, 0) == 0);
    CHECK(cell(inst, 3, 0) == 3);
    CHECK(cell(inst, 0, 1) == 4);
    CHECK(cell(inst, 2, 6) == 26);
}

TEST_CASE("canonical instance shape") {
    RosterInstance inst = canonical_instance();
    CHECK(inst.num_nurses == 4);
    CHECK(inst.num_days == 7);
    CHECK(inst.num_shifts == 3);
    CHECK(inst.alpha == 0.5);
    CHECK(inst.work_days_min == 5);
    CHECK(inst.work_days_max == 6);
    CHECK(inst.max_distinct_per_shift_week == 2);
    for (const std::vector<int>& day : inst.coverage)
        CHECK(day == std::vector<int>{1, 1, 1});
    CHECK(inst.preferences.empty());

    // weekly arithmetic: 21 work slots fit the bounds as 6+5+5+5
    CHECK(3 * 7 == 21);
    CHECK(6 + 5 + 5 + 5 == 21);

    CspModel model = compile(inst);
    CHECK(model.num_variables() == 28);
    for (int v = 0; v < model.num_variables(); ++v)
        CHECK(model.domain(v) == Domain::range(0, 3));
}

TEST_CASE("canonical instance has 24 valid day patterns") {
    // one Off and three distinct non-zero codes
    int valid = 0;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (int d = 0; d <= 3; ++d) {
                    int codes[4] = {a, b, c, d};
                    int offs = 0;
                    bool distinct = true;
                    for (int i = 0; i < 4; ++i) {
                        if (codes[i] == 0)
                            ++offs;
                        for (int j = i + 1; j < 4; ++j)
                            if (codes[i] != 0 && codes[i] == codes[j])
                                distinct = false;
                    }
                    if (offs == 1 && distinct)
                        ++valid;
                }
    CHECK(valid == 24);
    CHECK(roster_oracle::day_columns(canonical_instance(), 0).size() == 24);
}

TEST_CASE("canonical instance is satisfiable and solutions are clean") {
    RosterInstance inst = canonical_instance();
    CspModel model = compile(inst);
    SearchResult r = solve_satisfy(model);
    REQUIRE(r.status == SearchStatus::Sat);
    REQUIRE(r.assignment.has_value());
    CHECK(check_roster(inst, *r.assignment).empty());
    CHECK(count_violations(inst, *r.assignment) == 0);
}

TEST_CASE("one nurse cannot cover a full week") {
    RosterInstance inst;
    inst.num_nurses = 1;
    inst.num_days = 7;
    inst.num_shifts = 1;
    inst.coverage.assign(7, {1});
    CspModel model = compile(inst);
    SearchResult r = solve_satisfy(model);
    CHECK(r.status == SearchStatus::Unsat);
}

TEST_CASE("fitness") {
    SUBCASE("uniform workdays and no preferences score 1") {
        RosterInstance inst;
        inst.num_nurses = 2;
        inst.num_days = 2;
        inst.num_shifts = 1;
        inst.coverage.assign(2, {2});
        FitnessReport f = fitness(inst, {1, 1, 1, 1});
        CHECK(f.fairness_f == 1.0);
        CHECK(f.preference_g == 1.0);
        CHECK(f.combined == 1.0);
    }

    SUBCASE("worked example: totals 5 and 6, one of two wishes satisfied") {
        RosterInstance inst;
        inst.num_nurses = 2;
        inst.num_days = 7;
        inst.num_shifts = 1;
        inst.coverage.assign(7, {0});
        inst.preferences.push_back({0, 0, 1, 1.0}); // satisfied below
        inst.preferences.push_back({0, 6, 1, 1.0}); // not satisfied
        Schedule s(14, 0);
        for (int k = 0; k < 5; ++k)
            s[static_cast<std::size_t>(cell(inst, 0, k))] = 1;
        for (int k = 0; k < 6; ++k)
            s[static_cast<std::size_t>(cell(inst, 1, k))] = 1;

        FitnessReport f = fitness(inst, s);
        CHECK(f.fairness_f == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
        CHECK(f.preference_g == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(f.combined == doctest::Approx(7.0 / 12.0).epsilon(1e-12));

        inst.alpha = 1.0;
        FitnessReport all_fair = fitness(inst, s);
        CHECK(all_fair.combined == all_fair.fairness_f);

        inst.alpha = 0.0;
        FitnessReport all_pref = fitness(inst, s);
        CHECK(all_pref.combined == all_pref.preference_g);
    }

    SUBCASE("an Off wish counts when the nurse is off") {
        RosterInstance inst;
        inst.num_nurses = 1;
        inst.num_days = 2;
        inst.num_shifts = 1;
        inst.coverage.assign(2, {0});
        inst.preferences.push_back({0, 1, 0, 2.0});
        FitnessReport off = fitness(inst, {1, 0});
        CHECK(off.preference_g == 1.0);
        FitnessReport on = fitness(inst, {1, 1});
        CHECK(on.preference_g == 0.0);
    }
}

TEST_CASE("optimize honors preferences when alpha is 0") {
    RosterInstance inst = canonical_instance();
    inst.alpha = 0.0;
    inst.preferences.push_back({0, 0, 1, 1.0});
    CspModel model = compile(inst);
    SearchResult r = solve_optimize(
        model, [&](const Assignment& a) { return fitness(inst, a).combined; });
    REQUIRE(r.status == SearchStatus::Sat);
    REQUIRE(r.assignment.has_value());
    CHECK((*r.assignment)[static_cast<std::size_t>(cell(inst, 0, 0))] == 1);
    CHECK(fitness(inst, *r.assignment).preference_g == 1.0);
    CHECK(r.objective == 1.0);
}

TEST_CASE("check_roster flags each constraint alone") {
    RosterInstance inst = canonical_instance();
    Schedule valid = valid_canonical_roster(inst);
    REQUIRE(check_roster(inst, valid).empty());

    SUBCASE("HC1: an alien shift code") {
        Schedule s = valid;
        s[static_cast<std::size_t>(cell(inst, 1, 4))] = 4; // was an Off day
        std::vector<Violation> v = check_roster(inst, s);
        CHECK(only_label(v, "HC1"));
        CHECK(v[0].nurse == 1);
        CHECK(v[0].day == 4);
    }

    SUBCASE("HC2: coverage broken by moving a work day") {
        Schedule s = valid;
        s[static_cast<std::size_t>(cell(inst, 0, 5))] = 0;
        s[static_cast<std::size_t>(cell(inst, 0, 6))] = 1;
        std::vector<Violation> v = check_roster(inst, s);
        CHECK(only_label(v, "HC2"));
    }

    SUBCASE("HC3: workday totals pushed out of bounds") {
        Schedule s = valid;
        s[static_cast<std::size_t>(cell(inst, 0, 6))] = 1; // nurse 0 now works all 7
        s[static_cast<std::size_t>(cell(inst, 1, 6))] = 0; // nurse 1 drops to 4
        std::vector<Violation> v = check_roster(inst, s);
        CHECK(only_label(v, "HC3"));
        CHECK(count_label(v, "HC3") == 2);
        CHECK(v[0].detail == "nurse 1 week 1: 7 work days, allowed 5..6");
    }

    SUBCASE("HC4: a third nurse on one shift") {
        RosterInstance tight;
        tight.num_nurses = 3;
        tight.num_days = 7;
        tight.num_shifts = 1;
        tight.work_days_min = 3;
        tight.work_days_max = 6;
        tight.max_distinct_per_shift_week = 3;
        tight.coverage.assign(7, {2});
        Schedule s(21, 0);
        auto set = [&](int n, int k) { s[static_cast<std::size_t>(cell(tight, n, k))] = 1; };
        for (int k = 0; k < 6; ++k)
            set(0, k); // nurse 0: days 1..6
        for (int k = 0; k < 4; ++k)
            set(1, k); // nurse 1: days 1..4
        set(1, 6);     // and day 7
        for (int k = 4; k < 7; ++k)
            set(2, k); // nurse 2: days 5..7
        REQUIRE(check_roster(tight, s).empty());

        tight.max_distinct_per_shift_week = 2;
        std::vector<Violation> v = check_roster(tight, s);
        CHECK(only_label(v, "HC4"));
        CHECK(v[0].shift == 1);
        CHECK(v[0].detail == "shift 1 week 1: 3 distinct nurses, allowed 2");
    }

    SUBCASE("HC5: a lone late shift") {
        RosterInstance loose = inst;
        loose.max_distinct_per_shift_week = 3;
        Schedule s = valid;
        s[static_cast<std::size_t>(cell(loose, 0, 3))] = 2;
        s[static_cast<std::size_t>(cell(loose, 1, 3))] = 1;
        REQUIRE(check_roster(loose, valid).empty());
        std::vector<Violation> v = check_roster(loose, s);
        CHECK(only_label(v, "HC5"));
        CHECK(v[0].nurse == 0);
        CHECK(v[0].day == 3);
        CHECK(v[0].shift == 2);
        CHECK(v[0].detail == "nurse 1 day 4: isolated late shift 2");
    }

    SUBCASE("late shift on day 3 only, as per the constraint's definition") {
        // same edit against the unmodified canonical instance: the HC5
        // violation at (0, 3, 2) must be reported regardless of what else is
        Schedule s = valid;
        s[static_cast<std::size_t>(cell(inst, 0, 3))] = 2;
        s[static_cast<std::size_t>(cell(inst, 1, 3))] = 1;
        std::vector<Violation> v = check_roster(inst, s);
        bool found = false;
        for (const Violation& viol : v)
            if (viol.constraint == "HC5" && viol.nurse == 0 && viol.day == 3 && viol.shift == 2)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("count_violations agrees with check_roster") {
    RosterInstance inst = canonical_instance();
    std::mt19937_64 rng(99);
    for (int round = 0; round < 50; ++round) {
        Schedule s(28);
        for (int& c : s)
            c = static_cast<int>(rng() % 5) - (rng() % 7 == 0 ? 1 : 0); // includes -1 and 4
        CHECK(count_violations(inst, s) == static_cast<int>(check_roster(inst, s).size()));
    }
}

TEST_CASE("partial trailing weeks scale the workday bounds") {
    RosterInstance inst;
    inst.num_nurses = 1;
    inst.num_days = 9; // one full week plus a 2-day window
    inst.num_shifts = 1;
    inst.coverage.assign(9, {0}); // coverage quiet; only HC3 is of interest

    // scaled bounds for the 2-day window: floor(5*2/7)=1, ceil(6*2/7)=2
    Schedule s(9, 0);
    for (int k = 0; k < 5; ++k)
        s[static_cast<std::size_t>(cell(inst, 0, k))] = 1;
    CHECK(count_label(check_roster(inst, s), "HC3") == 1); // week 2 has 0 work days

    s[static_cast<std::size_t>(cell(inst, 0, 7))] = 1;
    CHECK(count_label(check_roster(inst, s), "HC3") == 0);

    s[static_cast<std::size_t>(cell(inst, 0, 8))] = 1;
    CHECK(count_label(check_roster(inst, s), "HC3") == 0); // 2 still within bounds

    std::vector<Violation> v = check_roster(inst, s);
    for (const Violation& viol : v)
        CHECK(viol.constraint != "HC3");
}

TEST_CASE("validate_instance error wording") {
    RosterInstance inst = canonical_instance();
    inst.alpha = 1.5;
    try {
        validate_instance(inst);
        FAIL("expected an alpha failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("alpha must lie in [0,1]") != std::string::npos);
    }

    RosterInstance over = canonical_instance();
    over.coverage[1] = {2, 2, 1}; // day 2 wants 5 nurses out of 4
    try {
        validate_instance(over);
        FAIL("expected a coverage failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("day 2") != std::string::npos);
    }
}

TEST_CASE("benchmark instances") {
    SUBCASE("deterministic in the seed") {
        RosterInstance a = benchmark_instance(20, 4, 7, 42);
        RosterInstance b = benchmark_instance(20, 4, 7, 42);
        CHECK(a.coverage == b.coverage);
        REQUIRE(a.preferences.size() == b.preferences.size());
        for (std::size_t i = 0; i < a.preferences.size(); ++i) {
            CHECK(a.preferences[i].nurse == b.preferences[i].nurse);
            CHECK(a.preferences[i].day == b.preferences[i].day);
            CHECK(a.preferences[i].shift == b.preferences[i].shift);
            CHECK(a.preferences[i].weight == b.preferences[i].weight);
        }
        RosterInstance c = benchmark_instance(20, 4, 7, 43);
        CHECK(a.coverage != c.coverage);
    }

    SUBCASE("coverage never asks for everyone at once") {
        for (std::uint64_t seed : {1, 2, 3, 42, 1234}) {
            RosterInstance inst = benchmark_instance(20, 4, 7, seed);
            for (const std::vector<int>& day : inst.coverage) {
                int total = 0;
                for (int c : day)
                    total += c;
                CHECK(total <= 19);
            }
        }
    }

    SUBCASE("shape") {
        RosterInstance inst = benchmark_instance(5, 3, 7, 7);
        CHECK(inst.num_nurses == 5);
        CHECK(inst.num_shifts == 3);
        CspModel model = compile(inst);
        CHECK(model.num_variables() == 35);
        for (int v = 0; v < 35; ++v)
            CHECK(model.domain(v) == Domain::range(0, 3));
    }

    SUBCASE("generated instances are satisfiable") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            RosterInstance inst = benchmark_instance(6, 3, 7, seed);
            CspModel model = compile(inst);
            SearchResult r = solve_satisfy(model);
            REQUIRE(r.status == SearchStatus::Sat);
            CHECK(check_roster(inst, *r.assignment).empty());
        }
    }

    SUBCASE("preconditions") {
        CHECK_THROWS_AS(benchmark_instance(3, 3, 7, 1), std::invalid_argument);
        CHECK_THROWS_AS(benchmark_instance(5, 0, 7, 1), std::invalid_argument);
        CHECK_THROWS_AS(benchmark_instance(5, 3, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("solver agrees with the column oracle on small instances") {
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        RosterInstance inst = benchmark_instance(5, 2, 7, seed);
        CspModel model = compile(inst);
        SearchResult r = solve_satisfy(model);
        bool oracle_sat = roster_oracle::first_feasible(inst).has_value();
        CHECK((r.status == SearchStatus::Sat) == oracle_sat);
        if (r.assignment)
            CHECK(check_roster(inst, *r.assignment).empty());
    }
}
