#include "nursecp/search.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace nursecp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Driver {
    CspModel& model;
    const SearchConfig& config;
    const std::function<bool(const Assignment&)>& on_solution;
    SearchStats stats = {};
    Clock::time_point start = Clock::now();
    bool stopped = false;   // callback said enough
    bool limit_hit = false;
    SearchStatus limit_status = SearchStatus::Sat;

    bool over_limit() {
        if (config.node_limit > 0 && stats.nodes >= config.node_limit) {
            limit_hit = true;
            limit_status = SearchStatus::NodeLimit;
            return true;
        }
        if (config.time_limit_ms >= 0 && ms_since(start) >= config.time_limit_ms) {
            limit_hit = true;
            limit_status = SearchStatus::TimedOut;
            return true;
        }
        return false;
    }

    // false propagates "unwind everything" up the recursion
    bool dfs() {
        VarId var = select_variable(model, config.var_heuristic);
        if (var < 0) {
            ++stats.solutions;
            if (stats.first_solution_ms < 0)
                stats.first_solution_ms = ms_since(start);
            Assignment a(static_cast<std::size_t>(model.num_variables()));
            for (VarId v = 0; v < model.num_variables(); ++v)
                a[static_cast<std::size_t>(v)] = model.domain(v).value();
            if (!on_solution(a)) {
                stopped = true;
                return false;
            }
            return true;
        }

        std::vector<int> values;
        values.reserve(static_cast<std::size_t>(model.domain(var).size()));
        for (int v : model.domain(var))
            values.push_back(v);
        if (config.val_heuristic == ValHeuristic::MaxValue)
            std::reverse(values.begin(), values.end());

        for (int v : values) {
            if (over_limit())
                return false;
            ++stats.nodes;
            model.push_frame();
            bool consistent = model.fix_value(var, v) != RemoveResult::Wipeout &&
                              model.run_queue() == PropagationResult::Consistent;
            if (consistent) {
                if (!dfs()) {
                    model.pop_frame();
                    return false;
                }
            } else {
                ++stats.backtracks;
            }
            model.pop_frame();
        }
        return true;
    }
};

} // namespace

VarId select_variable(const CspModel& model, VarHeuristic heuristic) {
    VarId best = -1;
    int best_size = Domain::kMaxValue + 2;
    for (VarId v = 0; v < model.num_variables(); ++v) {
        int size = model.domain(v).size();
        if (size <= 1)
            continue;
        if (heuristic == VarHeuristic::InputOrder)
            return v;
        if (size < best_size) {
            best = v;
            best_size = size;
        }
    }
    return best;
}

SearchStats for_each_solution(CspModel& model, const SearchConfig& config,
                              const std::function<bool(const Assignment&)>& on_solution,
                              SearchStatus& status_out) {
    Driver driver{model, config, on_solution};
    long long propagations_before = model.propagation_count();

    model.push_frame();
    if (model.propagate_fixpoint() == PropagationResult::Consistent)
        driver.dfs();
    model.pop_frame();

    driver.stats.propagations = model.propagation_count() - propagations_before;
    driver.stats.wall_time_ms = ms_since(driver.start);
    if (driver.stopped)
        status_out = SearchStatus::Sat;
    else if (driver.limit_hit)
        status_out = driver.limit_status;
    else
        status_out = driver.stats.solutions > 0 ? SearchStatus::Sat : SearchStatus::Unsat;
    return driver.stats;
}

SearchResult solve_satisfy(CspModel& model, const SearchConfig& config) {
    SearchResult result;
    result.stats = for_each_solution(
        model, config,
        [&](const Assignment& a) {
            result.assignment = a;
            return false;
        },
        result.status);
    return result;
}

SearchResult solve_optimize(CspModel& model,
                            const std::function<double(const Assignment&)>& objective,
                            const SearchConfig& config) {
    SearchResult result;
    result.stats = for_each_solution(
        model, config,
        [&](const Assignment& a) {
            double score = objective(a);
            if (!result.assignment || score > result.objective) {
                result.assignment = a;
                result.objective = score;
            }
            return true;
        },
        result.status);
    return result;
}

CheckReport check_solution(const CspModel& model, std::span<const int> values) {
    if (static_cast<int>(values.size()) != model.num_variables())
        throw std::invalid_argument("assignment length does not match the model");
    CheckReport report;
    for (VarId v = 0; v < model.num_variables(); ++v)
        if (!model.root_domain(v).contains(values[static_cast<std::size_t>(v)]))
            report.out_of_domain.push_back(v);
    std::vector<int> scope_values;
    for (std::size_t i = 0; i < model.num_propagators(); ++i) {
        const Propagator& p = model.propagator(i);
        scope_values.clear();
        for (VarId v : p.scope)
            scope_values.push_back(values[static_cast<std::size_t>(v)]);
        if (!holds(p, scope_values))
            report.failed_propagators.push_back(i);
    }
    report.valid = report.out_of_domain.empty() && report.failed_propagators.empty();
    return report;
}

} // namespace nursecp
