#include "netsir/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "netsir/csv.hpp"
#include "netsir/rng.hpp"

namespace netsir {

ModelParams model_params(const ExperimentConfig& config, double beta, double p) {
    return {beta, config.gamma, p, config.r, config.dt};
}

ContactNetwork build_network(const ExperimentConfig& config, std::size_t nodes) {
    return watts_strogatz(nodes, config.k, config.alpha, config.graph_seed);
}

TimeSeries network_mean(const ExperimentConfig& config, const ContactNetwork& net, double beta, double p) {
    EnsembleOptions opts;
    opts.replicates = config.replicates;
    opts.master_seed = config.seed;
    opts.max_steps = static_cast<std::uint64_t>(std::ceil(config.t_max / config.dt));
    opts.infected_count = config.initial_infected;
    opts.threads = config.threads;
    return monte_carlo_mean(net, model_params(config, beta, p), opts);
}

MeanFieldState ode_initial_state(const ExperimentConfig& config) {
    if (config.ode_initial == OdeInitial::Empirical) return empirical_initial();
    const auto n = static_cast<double>(config.nodes);
    const auto k = static_cast<double>(config.k);
    if (config.ode_initial_infected == 0.0) {
        MeanFieldState y;
        y[Compartment::S] = n;
        y[Compartment::SS] = k * n / 2.0;
        return y;
    }
    return analytic_initial(n, config.ode_initial_infected, k, k * n / 2.0);
}

IntegratorConfig integrator_config(const ExperimentConfig& config) {
    IntegratorConfig ic;
    ic.rel_tol = config.rel_tol;
    ic.abs_tol = config.abs_tol;
    ic.t_max = config.t_max;
    ic.s_guard = config.s_guard;
    if (config.ode_initial == OdeInitial::Analytic && config.ode_initial_infected > 0.0) {
        const double i0 = config.ode_initial_infected;
        ic.abs_tol = std::min(config.abs_tol, 1e-6 * i0);
        ic.i_extinction = std::min(1e-8 * static_cast<double>(config.nodes), 1e-3 * i0);
    }
    return ic;
}

Trajectory ode_run(const ExperimentConfig& config, double beta, double p) {
    return integrate(ode_initial_state(config), model_params(config, beta, p), static_cast<double>(config.k),
                     integrator_config(config));
}

double max_infected_gap(TimeSeries a, TimeSeries b, double nodes) {
    const auto length = std::max(a.size(), b.size());
    a.pad_to(length);
    b.pad_to(length);
    double gap = 0.0;
    for (std::size_t i = 0; i < length; ++i)
        gap = std::max(gap, std::abs(a.rows[i][Compartment::I] - b.rows[i][Compartment::I]) / nodes);
    return gap;
}

namespace {

std::string series_name(std::string_view model, double beta, double p) {
    return std::string(model) + "_beta" + format_double(beta) + "_p" + format_double(p) + ".csv";
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        if (count) work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

SimulateResult run_simulate(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    SimulateResult result;
    const bool want_network = config.model != ModelKind::Ode;
    const bool want_ode = config.model != ModelKind::Network;
    std::optional<ContactNetwork> net;
    if (want_network) net = build_network(config, config.nodes);

    for (double beta : config.beta_grid) {
        for (double p : config.p_grid) {
            TimeSeries net_series, ode_series;
            if (want_network) {
                net_series = network_mean(config, *net, beta, p);
                auto path = out_dir / series_name("network", beta, p);
                write_file_atomic(path, to_csv(net_series));
                result.files.push_back(path);
            }
            if (want_ode) {
                ode_series = ode_run(config, beta, p).resample(config.dt);
                auto path = out_dir / series_name("ode", beta, p);
                write_file_atomic(path, to_csv(ode_series));
                result.files.push_back(path);
            }
            if (want_network && want_ode)
                result.comparisons.push_back(
                    {beta, p, max_infected_gap(net_series, ode_series, static_cast<double>(config.nodes))});
        }
    }
    if (!result.comparisons.empty()) {
        std::ostringstream out;
        out << "beta,p,max_infected_gap\n";
        for (const auto& c : result.comparisons)
            out << format_double(c.beta) << ',' << format_double(c.p) << ',' << format_double(c.max_infected_gap)
                << '\n';
        auto path = out_dir / "comparison.csv";
        write_file_atomic(path, out.str());
        result.files.push_back(path);
    }
    return result;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
    const auto& betas = config.beta_grid;
    const auto& ps = config.p_grid;
    const auto k = static_cast<double>(config.k);
    std::vector<SweepRow> rows(betas.size() * ps.size());
    parallel_for(rows.size(), config.threads, [&](std::size_t idx) {
        const double beta = betas[idx / ps.size()];
        const double p = ps[idx % ps.size()];
        const auto traj = ode_run(config, beta, p);
        auto& row = rows[idx];
        row.beta = beta;
        row.p = p;
        row.final_recovered = final_recovered(traj);
        row.region = classify_region(beta, config.gamma, p, k);
        row.p1 = p1_star(beta, config.gamma, k);
        row.p2 = beta * k > 0.0 ? p2_star(beta, config.gamma, k) : INFINITY;
        row.r0 = basic_reproduction_number(beta, config.gamma, k);
    });
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << format_double(r.beta) << ',' << format_double(r.p) << ',' << format_double(r.final_recovered) << ','
            << format_double(std::log10(r.final_recovered)) << ',' << to_string(r.region) << ','
            << format_double(r.p1) << ',' << format_double(r.p2) << ',' << format_double(r.r0) << '\n';
    }
    return out.str();
}

std::vector<ErrorReport> run_converge(const ExperimentConfig& config) {
    const auto small = build_network(config, config.nodes);
    const auto large = build_network(config, config.nodes_large);
    const std::vector<double> dts = config.dt_grid.empty() ? std::vector<double>{config.dt} : config.dt_grid;
    const double fraction = static_cast<double>(config.initial_infected) / static_cast<double>(config.nodes);

    std::vector<ErrorReport> reports;
    for (double dt : dts) {
        ConvergenceRun run;
        run.replicates = config.replicates;
        run.max_steps = static_cast<std::uint64_t>(std::ceil(config.t_max / dt));
        run.infected_fraction = fraction;
        run.threads = config.threads;
        for (double beta : config.beta_grid) {
            for (double p : config.p_grid) {
                ModelParams params{beta, config.gamma, p, config.r, dt};
                const auto seed_a = derive_seed(config.seed, 0);
                const auto seed_b = derive_seed(config.seed, 1);
                reports.push_back(mc_self_error(small, params, run, seed_a, seed_b));
                reports.push_back(mc_self_error(large, params, run, seed_a, seed_b));
                reports.push_back(cross_size_error(small, large, params, run, seed_a, seed_b));
            }
        }
    }
    return reports;
}

}  // namespace netsir
