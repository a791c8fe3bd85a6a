#pragma once

#include <cstdint>
#include <vector>

#include "nursecp/nsp.hpp"

namespace nursecp {

struct SwarmConfig {
    int population = 30;
    int iterations = 2000;
    double inertia = 0.72;
    double cognitive = 1.49;
    double social = 1.49;
    double penalty_lambda = 0.1;
    std::uint64_t seed = 0;
};

struct PsoResult {
    Schedule best_schedule;
    double best_score = 0; // penalized fitness of best_schedule
    double wall_time_ms = 0;
};

/// Rounds each entry to the nearest shift code, clamped to {0..S}.
Schedule decode(const std::vector<double>& position, const RosterInstance& inst);

/// Combined fitness minus lambda per hard-constraint violation. Feasible
/// schedules score exactly their fitness.
double penalized_fitness(const RosterInstance& inst, const Schedule& schedule, double lambda);

/// Global-best PSO over real-valued positions in [0, S]. Deterministic in
/// the seed.
PsoResult pso_run(const RosterInstance& inst, const SwarmConfig& config);

} // namespace nursecp
