#include "netsir/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "netsir/csv.hpp"
#include "netsir/errors.hpp"

namespace netsir {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Network: return "network";
        case ModelKind::Ode: return "ode";
        case ModelKind::Both: return "both";
    }
    return "?";
}

std::string_view to_string(OdeInitial init) {
    return init == OdeInitial::Empirical ? "empirical" : "analytic";
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_unsigned(std::string_view text) {
    T value{};
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
        throw std::invalid_argument("not a nonnegative integer: '" + std::string(text) + "'");
    return value;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

std::vector<double> increasing_grid(std::string_view text) {
    auto grid = parse_grid(text);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid is not strictly increasing");
    return grid;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"beta", [](auto& c, auto v) { c.beta_grid = increasing_grid(v); }},
        {"p", [](auto& c, auto v) { c.p_grid = increasing_grid(v); }},
        {"gamma", [](auto& c, auto v) { c.gamma = parse_double(v); }},
        {"r", [](auto& c, auto v) { c.r = parse_double(v); }},
        {"dt", [](auto& c, auto v) { c.dt = parse_double(v); }},
        {"N", [](auto& c, auto v) { c.nodes = parse_unsigned<std::size_t>(v); }},
        {"k", [](auto& c, auto v) { c.k = parse_unsigned<std::uint32_t>(v); }},
        {"alpha", [](auto& c, auto v) { c.alpha = parse_double(v); }},
        {"M", [](auto& c, auto v) { c.replicates = parse_unsigned<std::size_t>(v); }},
        {"I0", [](auto& c, auto v) { c.initial_infected = parse_unsigned<std::size_t>(v); }},
        {"t_max", [](auto& c, auto v) { c.t_max = parse_double(v); }},
        {"model",
         [](auto& c, auto v) {
             if (v == "network") c.model = ModelKind::Network;
             else if (v == "ode") c.model = ModelKind::Ode;
             else if (v == "both") c.model = ModelKind::Both;
             else throw std::invalid_argument("model must be network, ode or both");
         }},
        {"output_dir", [](auto& c, auto v) { c.output_dir = std::string(v); }},
        {"seed", [](auto& c, auto v) { c.seed = parse_unsigned<std::uint64_t>(v); }},
        {"graph_seed", [](auto& c, auto v) { c.graph_seed = parse_unsigned<std::uint64_t>(v); }},
        {"ode_initial",
         [](auto& c, auto v) {
             if (v == "empirical") c.ode_initial = OdeInitial::Empirical;
             else if (v == "analytic") c.ode_initial = OdeInitial::Analytic;
             else throw std::invalid_argument("ode_initial must be empirical or analytic");
         }},
        {"ode_I0", [](auto& c, auto v) { c.ode_initial_infected = parse_double(v); }},
        {"rel_tol", [](auto& c, auto v) { c.rel_tol = parse_double(v); }},
        {"abs_tol", [](auto& c, auto v) { c.abs_tol = parse_double(v); }},
        {"s_guard", [](auto& c, auto v) { c.s_guard = parse_double(v); }},
        {"N2", [](auto& c, auto v) { c.nodes_large = parse_unsigned<std::size_t>(v); }},
        {"dt_grid", [](auto& c, auto v) { c.dt_grid = v.empty() ? std::vector<double>{} : increasing_grid(v); }},
        {"threads", [](auto& c, auto v) { c.threads = parse_unsigned<unsigned>(v); }},
    };
    return table;
}

void check_grid(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw ConfigError(std::string(name) + " grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError(std::string(name) + " grid is not strictly increasing");
    for (double v : grid)
        if (!std::isfinite(v) || v < 0.0) throw ConfigError(std::string(name) + " grid has a negative or non-finite value");
}

// Rounds to 12 significant digits so 0:0.1:1 yields 0.3, not 0.30000000000000004.
double snap(double v) {
    std::ostringstream s;
    s.precision(12);
    s << v;
    return parse_double(s.str());
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
    text = trim(text);
    std::vector<double> out;
    if (std::count(text.begin(), text.end(), ':') == 2) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        const double start = parse_double(trim(text.substr(0, c1)));
        const double step = parse_double(trim(text.substr(c1 + 1, c2 - c1 - 1)));
        const double stop = parse_double(trim(text.substr(c2 + 1)));
        if (!(step > 0.0) || stop < start) throw std::invalid_argument("grid range needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(snap(start + static_cast<double>(i) * step));
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        out.push_back(parse_double(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::set<std::string, std::less<>> seen;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", lineno);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown key '" + std::string(key) + "'", lineno);
        if (!seen.emplace(key).second) throw ConfigError("duplicate key '" + std::string(key) + "'", lineno);
        try {
            it->second(config, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string(key) + ": " + e.what(), lineno);
        }
    }
    validate(config);
    return config;
}

ExperimentConfig parse_config_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string serialize(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "beta = " << join(c.beta_grid) << '\n'
        << "p = " << join(c.p_grid) << '\n'
        << "gamma = " << format_double(c.gamma) << '\n'
        << "r = " << format_double(c.r) << '\n'
        << "dt = " << format_double(c.dt) << '\n'
        << "N = " << c.nodes << '\n'
        << "k = " << c.k << '\n'
        << "alpha = " << format_double(c.alpha) << '\n'
        << "M = " << c.replicates << '\n'
        << "I0 = " << c.initial_infected << '\n'
        << "t_max = " << format_double(c.t_max) << '\n'
        << "model = " << to_string(c.model) << '\n'
        << "output_dir = " << c.output_dir << '\n'
        << "seed = " << c.seed << '\n'
        << "graph_seed = " << c.graph_seed << '\n'
        << "ode_initial = " << to_string(c.ode_initial) << '\n'
        << "ode_I0 = " << format_double(c.ode_initial_infected) << '\n'
        << "rel_tol = " << format_double(c.rel_tol) << '\n'
        << "abs_tol = " << format_double(c.abs_tol) << '\n'
        << "s_guard = " << format_double(c.s_guard) << '\n'
        << "N2 = " << c.nodes_large << '\n'
        << "dt_grid = " << join(c.dt_grid) << '\n'
        << "threads = " << c.threads << '\n';
    return out.str();
}

void validate(const ExperimentConfig& c) {
    check_grid(c.beta_grid, "beta");
    check_grid(c.p_grid, "p");
    if (!c.dt_grid.empty()) check_grid(c.dt_grid, "dt_grid");
    if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
    if (c.gamma < 0.0 || c.r < 0.0) throw ConfigError("rates must be nonnegative");
    std::vector<double> dts = c.dt_grid.empty() ? std::vector<double>{c.dt} : c.dt_grid;
    for (double dt : dts) {
        if (!(dt > 0.0)) throw ConfigError("dt values must be positive");
        if (c.gamma * dt > 1.0) throw ConfigError("gamma * dt exceeds 1");
        if (c.r * dt > 1.0) throw ConfigError("r * dt exceeds 1");
        if (c.p_grid.back() * dt > 1.0) throw ConfigError("p * dt exceeds 1 for the largest p");
    }
    if (c.k < 2 || c.k % 2 != 0) throw ConfigError("k must be even and >= 2");
    if (c.nodes <= c.k) throw ConfigError("N must exceed k");
    if (c.nodes_large <= c.k) throw ConfigError("N2 must exceed k");
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
    if (c.replicates == 0) throw ConfigError("M must be at least 1");
    if (c.initial_infected > c.nodes) throw ConfigError("I0 exceeds N");
    if (!(c.t_max > 0.0)) throw ConfigError("t_max must be positive");
    if (!(c.rel_tol > 0.0 && c.abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
    if (c.s_guard < 0.0) throw ConfigError("s_guard must be nonnegative");
    if (c.ode_initial == OdeInitial::Analytic &&
        !(c.ode_initial_infected >= 0.0 && c.ode_initial_infected < static_cast<double>(c.nodes)))
        throw ConfigError("ode_I0 must lie in [0, N)");
}

}  // namespace netsir
