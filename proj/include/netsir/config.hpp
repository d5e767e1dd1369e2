#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace netsir {

enum class ModelKind { Network, Ode, Both };
enum class OdeInitial { Empirical, Analytic };

std::string_view to_string(ModelKind kind);
std::string_view to_string(OdeInitial init);

/// Everything an experiment run needs. Read from flat `key = value` text;
/// `#` starts a comment. Grids accept `start:step:stop` (stop inclusive) or
/// comma-separated lists.
struct ExperimentConfig {
    std::vector<double> beta_grid{0.2};
    std::vector<double> p_grid{0.0};
    double gamma = 0.2;
    double r = 0.9;
    double dt = 0.01;
    std::size_t nodes = 100;
    std::uint32_t k = 12;
    double alpha = 0.2;
    std::size_t replicates = 20;
    std::size_t initial_infected = 10;
    double t_max = 500.0;
    ModelKind model = ModelKind::Both;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    std::uint64_t graph_seed = 7;
    OdeInitial ode_initial = OdeInitial::Empirical;
    double ode_initial_infected = 1e-10;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double s_guard = 0.001;
    std::size_t nodes_large = 200;
    std::vector<double> dt_grid;  ///< convergence runs; empty means {dt}
    unsigned threads = 0;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ConfigError carrying the offending line number.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_string(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Normalized form: every key, fixed order, grids as comma lists.
std::string serialize(const ExperimentConfig& config);

/// Checks cross-field invariants; throws ConfigError.
void validate(const ExperimentConfig& config);

/// `start:step:stop` or `a,b,c`; throws std::invalid_argument.
std::vector<double> parse_grid(std::string_view text);

}  // namespace netsir
