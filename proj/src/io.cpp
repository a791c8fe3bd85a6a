#include "nursecp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace nursecp {

namespace {

std::string with_line(int line_number, const std::string& message) {
    if (line_number <= 0)
        return message;
    return "line " + std::to_string(line_number) + ": " + message;
}

} // namespace

ParseError::ParseError(int line_number, const std::string& message)
    : std::runtime_error(with_line(line_number, message)), line(line_number) {}

bool parse_exact_int(std::string_view token, long long& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_exact_double(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::string format_double(double v) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
    (void)ec;
    return std::string(buffer, ptr);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line;
    if (auto hash = body.find('#'); hash != std::string::npos)
        body.resize(hash);
    std::istringstream stream(body);
    std::vector<std::string> tokens;
    std::string token;
    while (stream >> token)
        tokens.push_back(token);
    return tokens;
}

int parse_int_field(const std::string& token, int line, const char* what, long long lo,
                    long long hi) {
    long long v = 0;
    if (!parse_exact_int(token, v))
        throw ParseError(line, std::string(what) + " expects an integer, got '" + token + "'");
    if (v < lo || v > hi)
        throw ParseError(line, std::string(what) + " " + token + " out of range " +
                                   std::to_string(lo) + ".." + std::to_string(hi));
    return static_cast<int>(v);
}

double parse_double_field(const std::string& token, int line, const char* what) {
    double v = 0;
    if (!parse_exact_double(token, v))
        throw ParseError(line, std::string(what) + " expects a number, got '" + token + "'");
    return v;
}

} // namespace

RosterInstance parse_instance(std::istream& in) {
    RosterInstance inst;
    inst.coverage.clear();
    bool have_nurses = false, have_days = false, have_shifts = false;
    bool have_alpha = false, have_work = false, have_distinct = false;
    bool dims_ready = false;

    auto require_dims = [&](int line, const char* what) {
        if (!dims_ready)
            throw ParseError(line, std::string(what) +
                                       " must come after nurses, days and shifts");
    };

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::vector<std::string> t = tokenize(raw);
        if (t.empty())
            continue;
        const std::string& key = t[0];
        auto arity = [&](std::size_t n) {
            if (t.size() != n)
                throw ParseError(line, key + " expects " + std::to_string(n - 1) +
                                           " value(s), got " + std::to_string(t.size() - 1));
        };

        if (key == "nurses" || key == "days" || key == "shifts") {
            arity(2);
            bool& have = key == "nurses" ? have_nurses : key == "days" ? have_days : have_shifts;
            if (have)
                throw ParseError(line, key + " given twice");
            have = true;
            int v = parse_int_field(t[1], line, key.c_str(), 1, 1000000);
            (key == "nurses" ? inst.num_nurses : key == "days" ? inst.num_days : inst.num_shifts) =
                v;
            if (have_nurses && have_days && have_shifts && !dims_ready) {
                dims_ready = true;
                inst.coverage.assign(static_cast<std::size_t>(inst.num_days),
                                     std::vector<int>(static_cast<std::size_t>(inst.num_shifts), 1));
            }
        } else if (key == "alpha") {
            arity(2);
            if (have_alpha)
                throw ParseError(line, "alpha given twice");
            have_alpha = true;
            inst.alpha = parse_double_field(t[1], line, "alpha");
        } else if (key == "work_days") {
            arity(3);
            if (have_work)
                throw ParseError(line, "work_days given twice");
            have_work = true;
            inst.work_days_min = parse_int_field(t[1], line, "work_days min", 0, 1000);
            inst.work_days_max = parse_int_field(t[2], line, "work_days max", 0, 1000);
        } else if (key == "max_distinct") {
            arity(2);
            if (have_distinct)
                throw ParseError(line, "max_distinct given twice");
            have_distinct = true;
            inst.max_distinct_per_shift_week =
                parse_int_field(t[1], line, "max_distinct", 1, 1000000);
        } else if (key == "coverage") {
            require_dims(line, "coverage");
            if (t.size() == 3 && t[1] == "default") {
                int c = parse_int_field(t[2], line, "coverage default", 0, 1000000);
                for (auto& row : inst.coverage)
                    std::fill(row.begin(), row.end(), c);
            } else if (t.size() == 4) {
                int day = parse_int_field(t[1], line, "coverage day", 1, inst.num_days);
                int shift = parse_int_field(t[2], line, "coverage shift", 1, inst.num_shifts);
                int c = parse_int_field(t[3], line, "coverage count", 0, 1000000);
                inst.coverage[static_cast<std::size_t>(day - 1)][static_cast<std::size_t>(shift - 1)] =
                    c;
            } else {
                throw ParseError(line, "coverage expects 'default <n>' or '<day> <shift> <n>'");
            }
        } else if (key == "pref") {
            require_dims(line, "pref");
            arity(5);
            Preference p;
            p.nurse = parse_int_field(t[1], line, "pref nurse", 1, inst.num_nurses) - 1;
            p.day = parse_int_field(t[2], line, "pref day", 1, inst.num_days) - 1;
            p.shift = parse_int_field(t[3], line, "pref shift", 0, inst.num_shifts);
            p.weight = parse_double_field(t[4], line, "pref weight");
            inst.preferences.push_back(p);
        } else {
            throw ParseError(line, "unknown key '" + key + "'");
        }
    }

    if (!dims_ready)
        throw ParseError(0, "instance needs nurses, days and shifts");
    try {
        validate_instance(inst);
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
    return inst;
}

RosterInstance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open instance file '" + path + "'");
    return parse_instance(in);
}

std::string render_instance(const RosterInstance& inst) {
    std::ostringstream out;
    out << "nurses " << inst.num_nurses << "\n";
    out << "days " << inst.num_days << "\n";
    out << "shifts " << inst.num_shifts << "\n";
    out << "alpha " << format_double(inst.alpha) << "\n";
    out << "work_days " << inst.work_days_min << " " << inst.work_days_max << "\n";
    out << "max_distinct " << inst.max_distinct_per_shift_week << "\n";

    // most common coverage value becomes the default line, the rest are
    // spelled out per cell
    std::map<int, int> frequency;
    for (const auto& row : inst.coverage)
        for (int c : row)
            ++frequency[c];
    int default_value = 1;
    int best = -1;
    for (const auto& [value, count] : frequency)
        if (count > best) {
            best = count;
            default_value = value;
        }
    out << "coverage default " << default_value << "\n";
    for (int k = 0; k < inst.num_days; ++k)
        for (int s = 1; s <= inst.num_shifts; ++s) {
            int c = inst.coverage[static_cast<std::size_t>(k)][static_cast<std::size_t>(s - 1)];
            if (c != default_value)
                out << "coverage " << k + 1 << " " << s << " " << c << "\n";
        }

    for (const Preference& p : inst.preferences)
        out << "pref " << p.nurse + 1 << " " << p.day + 1 << " " << p.shift << " "
            << format_double(p.weight) << "\n";
    return out.str();
}

std::string render_roster(const RosterInstance& inst, const Schedule& schedule) {
    std::ostringstream out;
    for (int k = 0; k < inst.num_days; ++k)
        out << (k == 0 ? "" : " ") << k + 1;
    out << "\n";
    bool letters = inst.num_shifts <= 3;
    for (int n = 0; n < inst.num_nurses; ++n) {
        out << "N" << n + 1;
        for (int k = 0; k < inst.num_days; ++k) {
            int v = schedule[static_cast<std::size_t>(cell(inst, n, k))];
            out << " ";
            if (v == 0)
                out << "O";
            else if (letters && v == 1)
                out << "M";
            else if (letters && v == 2)
                out << "A";
            else if (letters && v == 3)
                out << "N";
            else
                out << v;
        }
        out << "\n";
    }
    return out.str();
}

Schedule parse_roster(std::istream& in, const RosterInstance& inst) {
    Schedule schedule(static_cast<std::size_t>(inst.num_nurses * inst.num_days), 0);
    std::string raw;
    int line = 0;
    bool header_seen = false;
    int row = 0;
    while (row < inst.num_nurses && std::getline(in, raw)) {
        ++line;
        std::vector<std::string> t = tokenize(raw);
        if (t.empty())
            continue;
        if (!header_seen) {
            if (t[0].size() >= 2 && t[0][0] == 'N' && std::isdigit(static_cast<unsigned char>(t[0][1])))
                throw ParseError(line, "expected a day-number header before nurse rows");
            header_seen = true;
            continue;
        }
        std::string label = "N" + std::to_string(row + 1);
        if (t[0] != label)
            throw ParseError(line, "expected row label " + label + ", got '" + t[0] + "'");
        if (static_cast<int>(t.size()) != inst.num_days + 1)
            throw ParseError(line, label + " needs " + std::to_string(inst.num_days) +
                                       " cells, got " + std::to_string(t.size() - 1));
        for (int k = 0; k < inst.num_days; ++k) {
            const std::string& token = t[static_cast<std::size_t>(k + 1)];
            int v = 0;
            if (token == "O")
                v = 0;
            else if (token == "M")
                v = 1;
            else if (token == "A")
                v = 2;
            else if (token == "N")
                v = 3;
            else {
                long long parsed = 0;
                if (!parse_exact_int(token, parsed))
                    throw ParseError(line, "unknown cell code '" + token + "'");
                v = static_cast<int>(parsed);
            }
            schedule[static_cast<std::size_t>(cell(inst, row, k))] = v;
        }
        ++row;
    }
    if (row < inst.num_nurses)
        throw ParseError(line, "roster ends after " + std::to_string(row) + " of " +
                                   std::to_string(inst.num_nurses) + " nurse rows");
    return schedule;
}

Schedule parse_roster_file(const std::string& path, const RosterInstance& inst) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open roster file '" + path + "'");
    return parse_roster(in, inst);
}

StatsSummary descriptive_stats(std::span<const double> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("descriptive statistics need at least 2 samples");
    StatsSummary s;
    s.n_valid = static_cast<int>(samples.size());
    s.n_missing = 0;
    double sum = 0;
    for (double x : samples)
        sum += x;
    s.mean = sum / s.n_valid;
    double squares = 0;
    for (double x : samples)
        squares += (x - s.mean) * (x - s.mean);
    s.variance = squares / (s.n_valid - 1);
    s.stddev = std::sqrt(s.variance);
    s.sem = s.stddev / std::sqrt(static_cast<double>(s.n_valid));
    return s;
}

namespace {

// fixed decimals, with the integer zero dropped the way SPSS prints it
// (".009", "-.42")
std::string spss_fixed(double v, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, v);
    std::string text(buffer);
    if (text.rfind("0.", 0) == 0)
        text.erase(0, 1);
    else if (text.rfind("-0.", 0) == 0)
        text.erase(1, 1);
    return text;
}

void stats_row(std::ostringstream& out, const std::string& label, const std::string& a,
               const std::string& b, const std::string& c) {
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, "%-20s%12s%12s%12s", label.c_str(), a.c_str(), b.c_str(),
                  c.c_str());
    out << buffer << "\n";
}

} // namespace

std::string render_stats(const StatsSummary& cp_ms, const StatsSummary& cp_fit,
                         const StatsSummary& pso_fit) {
    std::ostringstream out;
    stats_row(out, "", "CP Runtime", "Fitness CP", "Fitness PSO");
    auto row = [&](const std::string& label, auto field, int decimals) {
        stats_row(out, label, spss_fixed(field(cp_ms), decimals), spss_fixed(field(cp_fit), decimals),
                  spss_fixed(field(pso_fit), decimals));
    };
    stats_row(out, "N Valid", std::to_string(cp_ms.n_valid), std::to_string(cp_fit.n_valid),
              std::to_string(pso_fit.n_valid));
    stats_row(out, "N Missing", std::to_string(cp_ms.n_missing), std::to_string(cp_fit.n_missing),
              std::to_string(pso_fit.n_missing));
    row("Mean", [](const StatsSummary& s) { return s.mean; }, 4);
    row("Std. Error of Mean", [](const StatsSummary& s) { return s.sem; }, 5);
    row("Std. Deviation", [](const StatsSummary& s) { return s.stddev; }, 5);
    row("Variance", [](const StatsSummary& s) { return s.variance; }, 3);
    return out.str();
}

} // namespace nursecp
