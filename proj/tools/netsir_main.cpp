// netsir: command-line front end for the adaptive-network SIR toolkit.
//
//   netsir generate   --n 100 --k 12 --alpha 0.2 --seed 7 --out graph.txt
//   netsir simulate   --config fig5.conf --out results/ [--model network|ode|both] [--seed 3]
//   netsir sweep      --config fig7.conf --out results/
//   netsir thresholds --beta 1/60 --gamma 0.2 --k 12 [--p 0.5]
//   netsir converge   --config convergence.conf --out results/
//
// Exit codes: 0 success, 1 usage, 2 config, 3 numeric failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "netsir/analysis.hpp"
#include "netsir/config.hpp"
#include "netsir/convergence.hpp"
#include "netsir/csv.hpp"
#include "netsir/errors.hpp"
#include "netsir/experiments.hpp"
#include "netsir/graph.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kConfig = 2;
constexpr int kNumeric = 3;

// Accepts plain decimals and fractions such as 1/60.
double parse_rate(const std::string& text) {
    if (const auto slash = text.find('/'); slash != std::string::npos)
        return netsir::parse_double(text.substr(0, slash)) / netsir::parse_double(text.substr(slash + 1));
    return netsir::parse_double(text);
}

struct ConfigOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> model;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Experiment config file")->required();
    cmd->add_option("--out", opts.out_dir, "Output directory (defaults to output_dir from the config)");
    cmd->add_option("--seed", opts.seed, "Override the master seed");
    cmd->add_option("--model", opts.model, "Override the model")->check(CLI::IsMember({"network", "ode", "both"}));
}

netsir::ExperimentConfig load(const ConfigOptions& opts) {
    auto config = netsir::load_config(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.model) {
        config.model = *opts.model == "network" ? netsir::ModelKind::Network
                       : *opts.model == "ode"   ? netsir::ModelKind::Ode
                                                : netsir::ModelKind::Both;
    }
    if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
    return config;
}

int cmd_generate(std::size_t n, std::uint32_t k, double alpha, std::uint64_t seed, const std::string& out) {
    const auto net = netsir::watts_strogatz(n, k, alpha, seed);
    const auto path = std::filesystem::path(out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    netsir::write_file_atomic(path, netsir::to_edge_list(net));
    std::cout << "edges=" << net.edge_count() << '\n'
              << "mean_degree=" << netsir::format_double(netsir::mean_degree(net)) << '\n'
              << "clustering=" << netsir::format_double(netsir::clustering_coefficient(net)) << '\n'
              << "max_degree=" << net.max_degree() << '\n';
    return 0;
}

int cmd_simulate(const ConfigOptions& opts) {
    const auto config = load(opts);
    const auto result = netsir::run_simulate(config, config.output_dir);
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
    for (const auto& c : result.comparisons)
        std::cout << "beta=" << netsir::format_double(c.beta) << " p=" << netsir::format_double(c.p)
                  << " max_infected_gap=" << netsir::format_double(c.max_infected_gap) << '\n';
    return 0;
}

int cmd_sweep(const ConfigOptions& opts) {
    auto config = load(opts);
    config.ode_initial = netsir::OdeInitial::Analytic;
    netsir::validate(config);
    const auto rows = netsir::run_sweep(config);
    std::filesystem::create_directories(config.output_dir);
    const auto path = std::filesystem::path(config.output_dir) / "sweep.csv";
    netsir::write_file_atomic(path, netsir::sweep_csv(rows));
    std::cout << "wrote " << path.string() << " (" << rows.size() << " grid points)\n";
    return 0;
}

int cmd_converge(const ConfigOptions& opts) {
    const auto config = load(opts);
    const auto reports = netsir::run_converge(config);
    std::filesystem::create_directories(config.output_dir);
    const auto path = std::filesystem::path(config.output_dir) / "convergence.csv";
    netsir::append_error_log(path.string(), reports);
    for (const auto& r : reports) std::cout << netsir::to_csv_row(r) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIR epidemics on adaptive small-world networks with temporary link deactivation"};
    app.require_subcommand(1);

    std::size_t n = 100;
    std::uint32_t k = 12;
    double alpha = 0.2;
    std::uint64_t graph_seed = 0;
    std::string graph_out;
    auto* generate = app.add_subcommand("generate", "Write a Watts-Strogatz graph as an edge list");
    generate->add_option("--n", n, "Node count");
    generate->add_option("--k", k, "Ring degree (even)");
    generate->add_option("--alpha", alpha, "Rewiring fraction");
    generate->add_option("--seed", graph_seed, "Generator seed");
    generate->add_option("--out", graph_out, "Output file")->required();

    ConfigOptions sim_opts, sweep_opts, conv_opts;
    add_config_options(app.add_subcommand("simulate", "Time series for every (beta, p) of a config"), sim_opts);
    add_config_options(app.add_subcommand("sweep", "Mean-field severity table over the beta x p grid"), sweep_opts);
    add_config_options(app.add_subcommand("converge", "Monte-Carlo convergence errors E and F"), conv_opts);

    std::string beta_text, gamma_text = "0.2";
    double mean_k = 12.0;
    std::optional<double> p;
    auto* thresholds = app.add_subcommand("thresholds", "Print R0, beta*, p1*, p2*");
    thresholds->add_option("--beta", beta_text, "Infection rate (decimal or a/b)")->required();
    thresholds->add_option("--gamma", gamma_text, "Recovery rate (decimal or a/b)");
    thresholds->add_option("--k", mean_k, "Mean degree");
    thresholds->add_option("--p", p, "Deactivation rate; adds the severity region");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*generate) return cmd_generate(n, k, alpha, graph_seed, graph_out);
        if (app.got_subcommand("simulate")) return cmd_simulate(sim_opts);
        if (app.got_subcommand("sweep")) return cmd_sweep(sweep_opts);
        if (app.got_subcommand("converge")) return cmd_converge(conv_opts);
        if (*thresholds) {
            const auto report = netsir::threshold_report(parse_rate(beta_text), parse_rate(gamma_text), mean_k, p);
            std::cout << report.to_text();
            return 0;
        }
    } catch (const netsir::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const netsir::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kUsage;
}
