#include "nursecp/bench.hpp"

#include <cstdio>
#include <istream>
#include <random>
#include <sstream>

#include "nursecp/io.hpp"
#include "nursecp/nsp.hpp"

namespace nursecp {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    // splitmix64 step
    std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// Same drawing convention as the generator: one unit-weight wish per
// nurse slot, any nurse, any day, any code including Off.
std::vector<Preference> redraw_preferences(const RosterInstance& inst, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Preference> prefs;
    for (int i = 0; i < inst.num_nurses; ++i) {
        Preference p;
        p.nurse = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.num_nurses));
        p.day = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.num_days));
        p.shift = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.num_shifts + 1));
        p.weight = 1.0;
        prefs.push_back(p);
    }
    return prefs;
}

} // namespace

BenchResult run_bench(const BenchConfig& config) {
    RosterInstance base =
        benchmark_instance(config.nurses, config.shifts, config.days, derive_seed(config.seed, 0));
    BenchResult result;
    for (int r = 1; r <= config.runs; ++r) {
        BenchRun row;
        row.run = r;
        row.seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));

        RosterInstance inst = base;
        inst.preferences = redraw_preferences(inst, derive_seed(row.seed, 0));
        CspModel model = compile(inst);
        SearchResult cp = solve_satisfy(model, config.cp);
        row.cp_status = cp.status;
        row.cp_ms = cp.stats.wall_time_ms;
        row.cp_fit = cp.assignment ? fitness(inst, *cp.assignment).combined : 0.0;

        SwarmConfig pso = config.pso;
        pso.seed = derive_seed(row.seed, 1);
        PsoResult swarm = pso_run(inst, pso);
        row.pso_fit = swarm.best_score;

        result.runs.push_back(row);
    }
    return result;
}

std::string render_result_lines(const BenchResult& result) {
    std::ostringstream out;
    for (const BenchRun& row : result.runs) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", row.cp_ms);
        out << "RESULT run=" << row.run << " cp_ms=" << ms << " cp_fit="
            << format_double(row.cp_fit) << " pso_fit=" << format_double(row.pso_fit) << "\n";
    }
    return out.str();
}

std::vector<BenchRun> parse_result_lines(std::istream& in) {
    std::vector<BenchRun> rows;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream stream(raw);
        std::string head;
        if (!(stream >> head) || head != "RESULT")
            continue;
        BenchRun row;
        bool have_run = false, have_ms = false, have_cp = false, have_pso = false;
        std::string token;
        while (stream >> token) {
            auto eq = token.find('=');
            if (eq == std::string::npos)
                throw ParseError(line, "RESULT field '" + token + "' is not key=value");
            std::string key = token.substr(0, eq);
            std::string value = token.substr(eq + 1);
            if (key == "run") {
                long long v = 0;
                if (!parse_exact_int(value, v))
                    throw ParseError(line, "RESULT run expects an integer");
                row.run = static_cast<int>(v);
                have_run = true;
            } else if (key == "cp_ms" || key == "cp_fit" || key == "pso_fit") {
                double v = 0;
                if (!parse_exact_double(value, v))
                    throw ParseError(line, "RESULT " + key + " expects a number");
                (key == "cp_ms" ? row.cp_ms : key == "cp_fit" ? row.cp_fit : row.pso_fit) = v;
                (key == "cp_ms" ? have_ms : key == "cp_fit" ? have_cp : have_pso) = true;
            } else {
                throw ParseError(line, "RESULT has unknown field '" + key + "'");
            }
        }
        if (!have_run || !have_ms || !have_cp || !have_pso)
            throw ParseError(line, "RESULT needs run, cp_ms, cp_fit and pso_fit");
        rows.push_back(row);
    }
    return rows;
}

} // namespace nursecp
