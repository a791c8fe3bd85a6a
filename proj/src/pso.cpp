#include "nursecp/pso.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nursecp {

namespace {

double uniform01(std::mt19937_64& rng) {
    // 53 high bits, the usual double in [0,1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Schedule decode(const std::vector<double>& position, const RosterInstance& inst) {
    Schedule schedule(position.size(), 0);
    for (std::size_t i = 0; i < position.size(); ++i) {
        long code = std::lround(position[i]);
        if (code < 0)
            code = 0;
        if (code > inst.num_shifts)
            code = inst.num_shifts;
        schedule[i] = static_cast<int>(code);
    }
    return schedule;
}

double penalized_fitness(const RosterInstance& inst, const Schedule& schedule, double lambda) {
    return fitness(inst, schedule).combined - lambda * count_violations(inst, schedule);
}

PsoResult pso_run(const RosterInstance& inst, const SwarmConfig& config) {
    if (config.population < 1)
        throw std::invalid_argument("swarm population must be at least 1");
    if (config.iterations < 0)
        throw std::invalid_argument("iteration count must be non-negative");
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(config.seed);
    std::size_t dims = static_cast<std::size_t>(inst.num_nurses * inst.num_days);
    double top = inst.num_shifts;

    struct Particle {
        std::vector<double> position;
        std::vector<double> velocity;
        std::vector<double> best_position;
        double best_score = 0;
    };

    std::vector<Particle> swarm(static_cast<std::size_t>(config.population));
    std::vector<double> gbest_position;
    double gbest_score = 0;
    bool have_gbest = false;

    for (Particle& p : swarm) {
        p.position.resize(dims);
        p.velocity.assign(dims, 0.0);
        for (double& x : p.position)
            x = uniform01(rng) * top;
        p.best_position = p.position;
        p.best_score = penalized_fitness(inst, decode(p.position, inst), config.penalty_lambda);
        if (!have_gbest || p.best_score > gbest_score) {
            have_gbest = true;
            gbest_score = p.best_score;
            gbest_position = p.best_position;
        }
    }

    for (int iter = 0; iter < config.iterations; ++iter) {
        for (Particle& p : swarm) {
            for (std::size_t d = 0; d < dims; ++d) {
                double r1 = uniform01(rng);
                double r2 = uniform01(rng);
                p.velocity[d] = config.inertia * p.velocity[d] +
                                config.cognitive * r1 * (p.best_position[d] - p.position[d]) +
                                config.social * r2 * (gbest_position[d] - p.position[d]);
                double x = p.position[d] + p.velocity[d];
                if (x < 0)
                    x = 0;
                if (x > top)
                    x = top;
                p.position[d] = x;
            }
            double score = penalized_fitness(inst, decode(p.position, inst), config.penalty_lambda);
            if (score > p.best_score) {
                p.best_score = score;
                p.best_position = p.position;
            }
            if (score > gbest_score) {
                gbest_score = score;
                gbest_position = p.position;
            }
        }
    }

    PsoResult result;
    result.best_schedule = decode(gbest_position, inst);
    result.best_score = gbest_score;
    result.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace nursecp
