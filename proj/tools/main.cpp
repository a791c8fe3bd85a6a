#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "nursecp/bench.hpp"
#include "nursecp/io.hpp"
#include "nursecp/nsp.hpp"
#include "nursecp/pso.hpp"
#include "nursecp/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitLimit = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitCantCreate = 73;

const char* status_name(nursecp::SearchStatus s) {
    switch (s) {
    case nursecp::SearchStatus::Sat:
        return "SAT";
    case nursecp::SearchStatus::Unsat:
        return "UNSAT";
    case nursecp::SearchStatus::TimedOut:
        return "TIMEOUT";
    case nursecp::SearchStatus::NodeLimit:
        return "NODE_LIMIT";
    }
    return "?";
}

void print_roster_report(const nursecp::RosterInstance& inst, const nursecp::Schedule& schedule) {
    std::cout << nursecp::render_roster(inst, schedule);
    nursecp::FitnessReport f = nursecp::fitness(inst, schedule);
    std::cout << "fitness combined=" << nursecp::format_double(f.combined)
              << " fairness=" << nursecp::format_double(f.fairness_f)
              << " preference=" << nursecp::format_double(f.preference_g)
              << " alpha=" << nursecp::format_double(f.alpha) << "\n";
}

struct SolveArgs {
    std::string instance_path;
    double alpha = -1; // negative: keep the instance's alpha
    std::string heuristic = "first-fail";
    double time_limit_ms = -1;
    std::uint64_t seed = 0;
    bool optimize = false;
};

int cmd_solve(const SolveArgs& args) {
    nursecp::RosterInstance inst;
    try {
        inst = nursecp::parse_instance_file(args.instance_path);
        if (args.alpha >= 0) {
            inst.alpha = args.alpha;
            nursecp::validate_instance(inst);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }

    nursecp::CspModel model = nursecp::compile(inst);
    nursecp::SearchConfig cfg;
    cfg.var_heuristic = args.heuristic == "input-order" ? nursecp::VarHeuristic::InputOrder
                                                        : nursecp::VarHeuristic::FirstFail;
    cfg.time_limit_ms = args.time_limit_ms;
    cfg.seed = args.seed;

    nursecp::SearchResult result;
    if (args.optimize) {
        result = nursecp::solve_optimize(
            model, [&](const nursecp::Assignment& a) { return nursecp::fitness(inst, a).combined; },
            cfg);
    } else {
        result = nursecp::solve_satisfy(model, cfg);
    }

    std::cerr << "status=" << status_name(result.status) << " nodes=" << result.stats.nodes
              << " backtracks=" << result.stats.backtracks
              << " propagations=" << result.stats.propagations
              << " solutions=" << result.stats.solutions
              << " ms=" << nursecp::format_double(result.stats.wall_time_ms);
    if (args.optimize && result.stats.first_solution_ms >= 0)
        std::cerr << " first_solution_ms=" << nursecp::format_double(result.stats.first_solution_ms);
    std::cerr << "\n";

    if (result.assignment) {
        print_roster_report(inst, *result.assignment);
        return kExitOk;
    }
    if (result.status == nursecp::SearchStatus::Unsat) {
        std::cout << "UNSATISFIABLE\n";
        return kExitUnsat;
    }
    std::cout << "LIMIT REACHED\n";
    return kExitLimit;
}

int cmd_check(const std::string& instance_path, const std::string& roster_path) {
    nursecp::RosterInstance inst;
    nursecp::Schedule roster;
    try {
        inst = nursecp::parse_instance_file(instance_path);
        roster = roster_path == "-" ? nursecp::parse_roster(std::cin, inst)
                                    : nursecp::parse_roster_file(roster_path, inst);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    std::vector<nursecp::Violation> violations = nursecp::check_roster(inst, roster);
    if (violations.empty()) {
        std::cout << "VALID\n";
        return kExitOk;
    }
    for (const nursecp::Violation& v : violations)
        std::cout << v.constraint << " " << v.detail << "\n";
    return kExitUnsat;
}

struct BenchArgs {
    int nurses = 20;
    int shifts = 4;
    int days = 7;
    int runs = 4;
    std::uint64_t seed = 1;
    int pso_pop = 30;
    int pso_iters = 2000;
    double lambda = 0.1;
};

int cmd_bench(const BenchArgs& args) {
    if (args.runs < 2) {
        std::cerr << "error: bench needs --runs of at least 2 for the statistics\n";
        return kExitUsage;
    }
    if (args.nurses < args.shifts + 1) {
        std::cerr << "error: bench needs --nurses at least --shifts + 1\n";
        return kExitUsage;
    }
    nursecp::BenchConfig config;
    config.nurses = args.nurses;
    config.shifts = args.shifts;
    config.days = args.days;
    config.runs = args.runs;
    config.seed = args.seed;
    config.pso.population = args.pso_pop;
    config.pso.iterations = args.pso_iters;
    config.pso.penalty_lambda = args.lambda;

    nursecp::BenchResult result = nursecp::run_bench(config);
    std::vector<double> cp_ms, cp_fit, pso_fit;
    for (const nursecp::BenchRun& r : result.runs) {
        cp_ms.push_back(r.cp_ms);
        cp_fit.push_back(r.cp_fit);
        pso_fit.push_back(r.pso_fit);
    }
    std::cout << nursecp::render_stats(nursecp::descriptive_stats(cp_ms),
                                       nursecp::descriptive_stats(cp_fit),
                                       nursecp::descriptive_stats(pso_fit));
    std::cout << nursecp::render_result_lines(result);
    return kExitOk;
}

int cmd_gen(int nurses, int shifts, int days, std::uint64_t seed, const std::string& out_path) {
    if (nurses < shifts + 1) {
        std::cerr << "error: gen needs --nurses at least --shifts + 1\n";
        return kExitUsage;
    }
    nursecp::RosterInstance inst;
    try {
        inst = nursecp::benchmark_instance(nurses, shifts, days, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::string text = nursecp::render_instance(inst);
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path);
    out << text;
    out.flush();
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitCantCreate;
    }
    return kExitOk;
}

int cmd_stats() {
    std::vector<nursecp::BenchRun> rows;
    try {
        rows = nursecp::parse_result_lines(std::cin);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    if (rows.size() < 2) {
        std::cerr << "error: need at least 2 RESULT lines, got " << rows.size() << "\n";
        return kExitData;
    }
    std::vector<double> cp_ms, cp_fit, pso_fit;
    for (const nursecp::BenchRun& r : rows) {
        cp_ms.push_back(r.cp_ms);
        cp_fit.push_back(r.cp_fit);
        pso_fit.push_back(r.pso_fit);
    }
    std::cout << nursecp::render_stats(nursecp::descriptive_stats(cp_ms),
                                       nursecp::descriptive_stats(cp_fit),
                                       nursecp::descriptive_stats(pso_fit));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nurse rostering with finite-domain constraint programming"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->add_option("instance", solve_args.instance_path, "instance file")->required();
    solve->add_option("--alpha", solve_args.alpha, "override the instance's objective weight")
        ->check(CLI::Range(0.0, 1.0));
    solve->add_option("--heuristic", solve_args.heuristic, "variable choice")
        ->check(CLI::IsMember({"first-fail", "input-order"}));
    solve->add_option("--time-limit", solve_args.time_limit_ms, "search time limit in ms");
    solve->add_option("--seed", solve_args.seed, "tie-breaking seed");
    solve->add_flag("--optimize", solve_args.optimize, "maximize fitness instead of first solution");

    std::string check_instance, check_roster_path;
    CLI::App* check = app.add_subcommand("check", "Validate a roster against an instance");
    check->add_option("instance", check_instance, "instance file")->required();
    check->add_option("roster", check_roster_path, "roster grid file, or - for standard input")
        ->required();

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Timed CP runs vs the swarm baseline");
    bench->add_option("--nurses", bench_args.nurses);
    bench->add_option("--shifts", bench_args.shifts);
    bench->add_option("--days", bench_args.days);
    bench->add_option("--runs", bench_args.runs);
    bench->add_option("--seed", bench_args.seed);
    bench->add_option("--pso-pop", bench_args.pso_pop)->check(CLI::PositiveNumber);
    bench->add_option("--pso-iters", bench_args.pso_iters)->check(CLI::NonNegativeNumber);
    bench->add_option("--lambda", bench_args.lambda)->check(CLI::NonNegativeNumber);

    int gen_nurses = 20, gen_shifts = 4, gen_days = 7;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "Generate a random instance file");
    gen->add_option("--nurses", gen_nurses);
    gen->add_option("--shifts", gen_shifts);
    gen->add_option("--days", gen_days)->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed);
    gen->add_option("-o,--output", gen_out, "output path (default: standard output)");

    CLI::App* stats = app.add_subcommand("stats", "Summarize RESULT lines from standard input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (solve->parsed())
            return cmd_solve(solve_args);
        if (check->parsed())
            return cmd_check(check_instance, check_roster_path);
        if (bench->parsed())
            return cmd_bench(bench_args);
        if (gen->parsed())
            return cmd_gen(gen_nurses, gen_shifts, gen_days, gen_seed, gen_out);
        if (stats->parsed())
            return cmd_stats();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
