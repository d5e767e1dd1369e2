#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "netsir/analysis.hpp"
#include "netsir/config.hpp"
#include "netsir/convergence.hpp"
#include "netsir/graph.hpp"
#include "netsir/meanfield.hpp"
#include "netsir/netsim.hpp"

namespace netsir {

ModelParams model_params(const ExperimentConfig& config, double beta, double p);

/// Watts-Strogatz graph of `nodes` nodes from the config's k, alpha, graph_seed.
ContactNetwork build_network(const ExperimentConfig& config, std::size_t nodes);

/// Mean of M network replicates, each seeded from the config's master seed.
TimeSeries network_mean(const ExperimentConfig& config, const ContactNetwork& net, double beta, double p);

/// Initial condition selected by `ode_initial`.
MeanFieldState ode_initial_state(const ExperimentConfig& config);

/// Integrator settings for the config. For the analytic initial condition
/// the absolute tolerance and extinction floor are scaled down with I0 so a
/// seed of 1e-10 infected is still resolved.
IntegratorConfig integrator_config(const ExperimentConfig& config);

Trajectory ode_run(const ExperimentConfig& config, double beta, double p);

/// Max over the common time grid of |I_a - I_b| / N. The shorter series is
/// padded with its last row.
double max_infected_gap(TimeSeries a, TimeSeries b, double nodes);

struct ComparisonRow {
    double beta = 0.0;
    double p = 0.0;
    double max_infected_gap = 0.0;
};

struct SimulateResult {
    std::vector<std::filesystem::path> files;
    std::vector<ComparisonRow> comparisons;  ///< only for model = both
};

/// One 15-column CSV per (beta, p) and model, named
/// `<model>_beta<beta>_p<p>.csv`. With model = both also writes
/// `comparison.csv` (beta,p,max_infected_gap).
SimulateResult run_simulate(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct SweepRow {
    double beta = 0.0;
    double p = 0.0;
    double final_recovered = 0.0;
    Region region = Region::I;
    double p1 = 0.0;
    double p2 = 0.0;
    double r0 = 0.0;
};

inline constexpr const char* kSweepHeader = "beta,p,final_recovered,log10_final_recovered,region,p1_star,p2_star,r0";

/// Mean-field severity over the beta x p grid from the analytic initial
/// condition. Grid points run concurrently; rows come back in grid order
/// (beta outer, p inner).
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// E on the N-node and N2-node networks and F between them, for every
/// (dt, beta, p) of the config.
std::vector<ErrorReport> run_converge(const ExperimentConfig& config);

}  // namespace netsir
