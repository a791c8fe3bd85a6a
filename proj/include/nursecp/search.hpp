#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nursecp/model.hpp"

namespace nursecp {

using Assignment = std::vector<int>;

enum class VarHeuristic { FirstFail, InputOrder };
enum class ValHeuristic { MinValue, MaxValue };

enum class SearchStatus {
    Sat,
    Unsat,
    TimedOut,  // time limit hit before the tree was exhausted
    NodeLimit, // node limit hit before the tree was exhausted
};

struct SearchConfig {
    VarHeuristic var_heuristic = VarHeuristic::FirstFail;
    ValHeuristic val_heuristic = ValHeuristic::MinValue;
    long long node_limit = 0;   // 0 means unlimited
    double time_limit_ms = -1;  // negative means unlimited
    std::uint64_t seed = 0;     // reserved for randomized tie-breaking
};

struct SearchStats {
    long long nodes = 0;      // value assignments attempted
    long long backtracks = 0; // attempts that failed
    long long solutions = 0;  // solutions visited
    long long propagations = 0;
    double wall_time_ms = 0;
    double first_solution_ms = -1; // negative until a solution is seen
};

struct SearchResult {
    SearchStatus status = SearchStatus::Unsat;
    std::optional<Assignment> assignment; // first (satisfy) or incumbent (optimize)
    double objective = 0;                 // objective of `assignment`, optimize only
    SearchStats stats;
};

/// FirstFail picks a smallest-domain unfixed variable (ties to the lowest
/// index); InputOrder picks the lowest-index unfixed variable. Returns -1
/// when everything is fixed.
VarId select_variable(const CspModel& model, VarHeuristic heuristic);

/// Depth-first search for one solution. Domains are restored before
/// returning, whatever the outcome.
SearchResult solve_satisfy(CspModel& model, const SearchConfig& config = {});

/// Branch-and-bound for a black-box objective (higher is better): every
/// solution is visited, the incumbent is replaced only on strict
/// improvement, and a limit cut reports whatever incumbent exists.
SearchResult solve_optimize(CspModel& model,
                            const std::function<double(const Assignment&)>& objective,
                            const SearchConfig& config = {});

/// Visits every solution until `on_solution` returns false or a limit
/// fires. Backbone of both solvers; also handy for counting.
SearchStats for_each_solution(CspModel& model, const SearchConfig& config,
                              const std::function<bool(const Assignment&)>& on_solution,
                              SearchStatus& status_out);

struct CheckReport {
    bool valid = false;
    std::vector<VarId> out_of_domain;            // values outside the root domains
    std::vector<std::size_t> failed_propagators; // indices into the model's store
};

/// Grades a full assignment against the root domains and every
/// propagator's ground semantics. No propagation machinery involved.
CheckReport check_solution(const CspModel& model, std::span<const int> values);

} // namespace nursecp
