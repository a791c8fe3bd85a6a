#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nursecp/bench.hpp"
#include "nursecp/io.hpp"
#include "nursecp/nsp.hpp"
#include "nursecp/pso.hpp"
#include "nursecp/search.hpp"

namespace py = pybind11;
using namespace nursecp;

namespace {

SearchConfig make_config(const std::string& heuristic, double time_limit_ms,
                         std::uint64_t node_limit, std::uint64_t seed) {
    SearchConfig cfg;
    cfg.var_heuristic =
        heuristic == "input-order" ? VarHeuristic::InputOrder : VarHeuristic::FirstFail;
    cfg.time_limit_ms = time_limit_ms;
    cfg.node_limit = node_limit;
    cfg.seed = seed;
    return cfg;
}

py::dict result_to_dict(const RosterInstance& inst, const SearchResult& result, bool optimized) {
    py::dict d;
    switch (result.status) {
    case SearchStatus::Sat:
        d["status"] = "sat";
        break;
    case SearchStatus::Unsat:
        d["status"] = "unsat";
        break;
    case SearchStatus::TimedOut:
        d["status"] = "timeout";
        break;
    case SearchStatus::NodeLimit:
        d["status"] = "node_limit";
        break;
    }
    if (result.assignment) {
        d["roster"] = *result.assignment;
        FitnessReport f = fitness(inst, *result.assignment);
        d["fitness"] = f.combined;
        d["fairness"] = f.fairness_f;
        d["preference"] = f.preference_g;
    } else {
        d["roster"] = py::none();
        d["fitness"] = py::none();
    }
    if (optimized)
        d["objective"] = result.objective;
    d["nodes"] = result.stats.nodes;
    d["backtracks"] = result.stats.backtracks;
    d["solutions"] = result.stats.solutions;
    d["propagations"] = result.stats.propagations;
    d["wall_time_ms"] = result.stats.wall_time_ms;
    return d;
}

} // namespace

PYBIND11_MODULE(_nursecp, m) {
    m.doc() = "Finite-domain CP solver for nurse rostering";

    py::class_<Preference>(m, "Preference")
        .def(py::init<>())
        .def(py::init([](int nurse, int day, int shift, double weight) {
                 Preference p;
                 p.nurse = nurse;
                 p.day = day;
                 p.shift = shift;
                 p.weight = weight;
                 return p;
             }),
             py::arg("nurse"), py::arg("day"), py::arg("shift"), py::arg("weight") = 1.0)
        .def_readwrite("nurse", &Preference::nurse)
        .def_readwrite("day", &Preference::day)
        .def_readwrite("shift", &Preference::shift)
        .def_readwrite("weight", &Preference::weight)
        .def("__repr__", [](const Preference& p) {
            std::ostringstream s;
            s << "Preference(nurse=" << p.nurse << ", day=" << p.day << ", shift=" << p.shift
              << ", weight=" << format_double(p.weight) << ")";
            return s.str();
        });

    py::class_<RosterInstance>(m, "RosterInstance")
        .def(py::init<>())
        .def_readwrite("num_nurses", &RosterInstance::num_nurses)
        .def_readwrite("num_days", &RosterInstance::num_days)
        .def_readwrite("num_shifts", &RosterInstance::num_shifts)
        .def_readwrite("alpha", &RosterInstance::alpha)
        .def_readwrite("work_days_min", &RosterInstance::work_days_min)
        .def_readwrite("work_days_max", &RosterInstance::work_days_max)
        .def_readwrite("max_distinct_per_shift_week", &RosterInstance::max_distinct_per_shift_week)
        .def_readwrite("coverage", &RosterInstance::coverage)
        .def_readwrite("preferences", &RosterInstance::preferences)
        .def("__repr__", [](const RosterInstance& inst) {
            std::ostringstream s;
            s << "RosterInstance(nurses=" << inst.num_nurses << ", days=" << inst.num_days
              << ", shifts=" << inst.num_shifts << ")";
            return s.str();
        });

    py::class_<Violation>(m, "Violation")
        .def_readonly("constraint", &Violation::constraint)
        .def_readonly("nurse", &Violation::nurse)
        .def_readonly("day", &Violation::day)
        .def_readonly("shift", &Violation::shift)
        .def_readonly("week", &Violation::week)
        .def_readonly("detail", &Violation::detail)
        .def("__repr__", [](const Violation& v) { return v.constraint + " " + v.detail; });

    m.def("canonical_instance", &canonical_instance,
          "The 4-nurse, 3-shift, 7-day instance used throughout the tests");
    m.def("benchmark_instance", &benchmark_instance, py::arg("nurses"), py::arg("shifts"),
          py::arg("days"), py::arg("seed"), "Deterministic feasible random instance");
    m.def("validate_instance", &validate_instance);

    m.def(
        "solve",
        [](const RosterInstance& inst, bool optimize, const std::string& heuristic,
           double time_limit_ms, std::uint64_t node_limit, std::uint64_t seed) {
            CspModel model = compile(inst);
            SearchConfig cfg = make_config(heuristic, time_limit_ms, node_limit, seed);
            SearchResult result;
            if (optimize) {
                result = solve_optimize(
                    model, [&](const Assignment& a) { return fitness(inst, a).combined; }, cfg);
            } else {
                result = solve_satisfy(model, cfg);
            }
            return result_to_dict(inst, result, optimize);
        },
        py::arg("instance"), py::arg("optimize") = false, py::arg("heuristic") = "first-fail",
        py::arg("time_limit_ms") = -1.0, py::arg("node_limit") = 0, py::arg("seed") = 0,
        "Solve an instance; returns a dict with status, roster, fitness and search stats");

    m.def(
        "fitness",
        [](const RosterInstance& inst, const Schedule& roster) {
            FitnessReport f = fitness(inst, roster);
            py::dict d;
            d["fairness"] = f.fairness_f;
            d["preference"] = f.preference_g;
            d["combined"] = f.combined;
            d["alpha"] = f.alpha;
            return d;
        },
        py::arg("instance"), py::arg("roster"));

    m.def("check_roster", &check_roster, py::arg("instance"), py::arg("roster"),
          "All hard-constraint violations of a roster, empty when valid");
    m.def("count_violations", &count_violations, py::arg("instance"), py::arg("roster"));

    m.def(
        "pso_run",
        [](const RosterInstance& inst, int population, int iterations, double inertia,
           double cognitive, double social, double penalty_lambda, std::uint64_t seed) {
            SwarmConfig cfg;
            cfg.population = population;
            cfg.iterations = iterations;
            cfg.inertia = inertia;
            cfg.cognitive = cognitive;
            cfg.social = social;
            cfg.penalty_lambda = penalty_lambda;
            cfg.seed = seed;
            PsoResult r = pso_run(inst, cfg);
            py::dict d;
            d["roster"] = r.best_schedule;
            d["score"] = r.best_score;
            d["wall_time_ms"] = r.wall_time_ms;
            return d;
        },
        py::arg("instance"), py::arg("population") = 30, py::arg("iterations") = 2000,
        py::arg("inertia") = 0.72, py::arg("cognitive") = 1.49, py::arg("social") = 1.49,
        py::arg("penalty_lambda") = 0.1, py::arg("seed") = 0,
        "Global-best particle swarm baseline; returns best roster and penalized score");

    m.def(
        "descriptive_stats",
        [](const std::vector<double>& values) {
            StatsSummary s = descriptive_stats(values);
            py::dict d;
            d["n_valid"] = s.n_valid;
            d["n_missing"] = s.n_missing;
            d["mean"] = s.mean;
            d["sem"] = s.sem;
            d["stddev"] = s.stddev;
            d["variance"] = s.variance;
            return d;
        },
        py::arg("values"));

    m.def(
        "parse_instance",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_instance(in);
        },
        py::arg("text"), "Parse an instance from its file format");
    m.def("render_instance", &render_instance, py::arg("instance"));
    m.def("render_roster", &render_roster, py::arg("instance"), py::arg("roster"));
    m.def(
        "parse_roster",
        [](const std::string& text, const RosterInstance& inst) {
            std::istringstream in(text);
            return parse_roster(in, inst);
        },
        py::arg("text"), py::arg("instance"));

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
}
