#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nursecp/pso.hpp"
#include "nursecp/search.hpp"

namespace nursecp {

struct BenchConfig {
    int nurses = 20;
    int shifts = 4;
    int days = 7;
    int runs = 4;
    std::uint64_t seed = 1;
    SwarmConfig pso;
    SearchConfig cp;
};

struct BenchRun {
    int run = 0; // 1-based in reports
    std::uint64_t seed = 0;
    SearchStatus cp_status = SearchStatus::Unsat;
    double cp_ms = 0;
    double cp_fit = 0;
    double pso_fit = 0;
};

struct BenchResult {
    std::vector<BenchRun> runs;
};

/// One CP solve plus one PSO run per round. The base instance comes
/// from the master seed; each run keeps its dimensions and coverage
/// but redraws the preference list from the run's derived seed, so
/// fitness samples have spread. Everything but cp_ms is a function of
/// the config.
BenchResult run_bench(const BenchConfig& config);

/// One `RESULT run=<r> cp_ms=<t> cp_fit=<f> pso_fit=<g>` line per run.
std::string render_result_lines(const BenchResult& result);

/// Reads RESULT lines back (non-RESULT lines are ignored). Throws
/// ParseError on a malformed RESULT line.
std::vector<BenchRun> parse_result_lines(std::istream& in);

/// Per-run seed derivation, shared by bench and the acceptance checks.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

} // namespace nursecp
