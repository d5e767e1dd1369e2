// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netsir/analysis.hpp"
#include "netsir/config.hpp"
#include "netsir/convergence.hpp"
#include "netsir/csv.hpp"
#include "netsir/experiments.hpp"
#include "netsir/meanfield.hpp"
#include "netsir/netsim.hpp"
#include "test_support.hpp"

using namespace netsir;
using C = Compartment;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) { return format_double(v); }

std::string g_cli;

std::string capture(const std::string& cmd) {
    std::string out;
    if (FILE* pipe = popen(cmd.c_str(), "r")) {
        char buf[256];
        while (std::fgets(buf, sizeof buf, pipe)) out += buf;
        pclose(pipe);
    }
    return out;
}

double field(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (line.rfind(key + "=", 0) == 0) return parse_double(line.substr(key.size() + 1));
    return std::numeric_limits<double>::quiet_NaN();
}

// Critical infection rate for k = 12, gamma = 0.2.
Outcome ac1() {
    const double eps = std::numeric_limits<double>::epsilon();
    const auto report = threshold_report(1.0 / 60.0, 0.2, 12);
    bool ok = std::abs(report.r0 - 1.0) <= 2 * eps && std::abs(report.beta_star - 1.0 / 60.0) <= 2 * eps / 60.0;
    std::string detail = "r0=" + fmt(report.r0) + " beta_star=" + fmt(report.beta_star);
    if (!g_cli.empty()) {
        const auto text = capture("\"" + g_cli + "\" thresholds --beta 1/60 --gamma 0.2 --k 12");
        const double r0 = field(text, "r0"), beta_star = field(text, "beta_star");
        ok = ok && std::abs(r0 - 1.0) <= 2 * eps && std::abs(beta_star - 1.0 / 60.0) <= 2 * eps / 60.0;
        detail += " cli_r0=" + fmt(r0);
    }
    return {ok, detail};
}

// Initial-rate limits at I0 = 1e-10 and their sign changes.
Outcome ac2() {
    const double beta = 0.2, gamma = 0.2, k = 12;
    const double p1 = p1_star(beta, gamma, k), p2 = p2_star(beta, gamma, k);
    bool ok = std::abs(p1 - 0.7) < 1e-12 && std::abs(p2 - (0.7 - 0.2 + 0.04 / 2.4)) < 1e-12;
    double worst = 0.0;
    for (double p : {0.0, 0.25, 0.5, 0.6, 0.8, 1.0, 1.5, 2.0, 2.5}) {
        const auto rep = verify_limits_numerically(beta, gamma, p, k, {1e-10});
        const auto& s = rep.samples.back();
        const double i_rate = beta * k - gamma;
        const double si_rate = beta * (k * k / 2 - 1.5 * k) - (gamma + p) * k;
        const double accel = beta * si_rate - gamma * i_rate;
        const double errs[] = {std::abs(s.i_rate - i_rate) / std::abs(i_rate),
                               std::abs(s.si_rate - si_rate) / std::abs(si_rate),
                               std::abs(s.i_accel - accel) / std::abs(accel)};
        for (double e : errs) worst = std::max(worst, e);
    }
    ok = ok && worst < 1e-6;

    const double h = 1e-4;
    auto sample = [&](double p) { return verify_limits_numerically(beta, gamma, p, k, {1e-10}).samples.back(); };
    const bool si_flip = sample(p1 - h).si_rate > 0 && sample(p1 + h).si_rate < 0;
    const bool accel_flip = sample(p2 - h).i_accel > 0 && sample(p2 + h).i_accel < 0;
    const bool other_fixed = sample(p2 - h).si_rate > 0 && sample(p2 + h).si_rate > 0 &&
                             sample(p1 - h).i_accel < 0 && sample(p1 + h).i_accel < 0;
    ok = ok && si_flip && accel_flip && other_fixed;
    return {ok, "p1*=" + fmt(p1) + " p2*=" + fmt(p2) + " max_rel_err=" + fmt(worst) +
                    " si_flip=" + (si_flip ? "yes" : "no") + " accel_flip=" + (accel_flip ? "yes" : "no")};
}

// Conservation of node and edge totals.
Outcome ac3() {
    const auto net = watts_strogatz(100, 12, 0.2, 7);
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_rhs = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto y = testing::random_admissible_state(net, gen);
        const ModelParams params{unit(gen), unit(gen), 2.5 * unit(gen), unit(gen), 0.01};
        const auto d = rhs(y, params, 12);
        double nodes = 0, edges = 0;
        for (std::size_t c = 0; c < kCompartmentCount; ++c) (c < kNodeCompartments ? nodes : edges) += d.values[c];
        worst_rhs = std::max({worst_rhs, std::abs(nodes), std::abs(edges)});
    }
    IntegratorConfig cfg;
    double worst_drift = 0.0;
    for (double beta : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
        for (double p : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}) {
            const auto traj = integrate(empirical_initial(), ModelParams{beta, 0.2, p, 0.9, 0.01}, 12, cfg);
            for (const auto& y : traj.states) {
                worst_drift = std::max(worst_drift, std::abs(y.node_total() - 100.0) / 100.0);
                worst_drift = std::max(worst_drift, std::abs(y.edge_total() - 600.0) / 600.0);
            }
        }
    }
    return {worst_rhs < 1e-12 && worst_drift < 10 * cfg.rel_tol,
            "max_rhs_sum=" + fmt(worst_rhs) + " max_drift=" + fmt(worst_drift)};
}

// One-step Monte Carlo against exhaustive enumeration on tiny graphs.
Outcome ac4() {
    const ModelParams params{0.3, 0.2, 0.5, 0.9, 0.1};
    using NS = NodeStatus;
    struct Case {
        ContactNetwork net;
        std::vector<NS> status;
        std::vector<std::uint8_t> off;
    };
    // Edges are stored sorted: (0,1), (0,3), (1,2), (2,3).
    const ContactNetwork cycle(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    std::vector<std::uint8_t> cycle_off(4, 0);
    for (std::size_t e = 0; e < 4; ++e) {
        const auto edge = cycle.edges()[e];
        if (edge == Edge{1, 2} || edge == Edge{2, 3}) cycle_off[e] = 1;
    }
    const std::vector<Case> cases{
        {ContactNetwork(3, {{0, 1}, {1, 2}}), {NS::Susceptible, NS::Infected, NS::Susceptible}, {0, 0}},
        {cycle, {NS::Susceptible, NS::Infected, NS::Susceptible, NS::Recovered}, cycle_off},
    };
    const int runs = 10000;
    bool ok = true;
    double worst_z = 0.0;
    std::uint64_t seed = 31;
    for (const auto& cs : cases) {
        const auto oracle = testing::enumerate_one_step(cs.net, cs.status, cs.off, params);
        CompartmentVector sum;
        Rng rng(seed++);
        for (int j = 0; j < runs; ++j) {
            SimState s;
            s.statuses = cs.status;
            s.deactivated = cs.off;
            step_in_place(s, cs.net, params, rng);
            const auto c = compartment_counts(s, cs.net);
            for (std::size_t i = 0; i < kCompartmentCount; ++i) sum.values[i] += c.values[i];
        }
        for (std::size_t i = 0; i < kCompartmentCount; ++i) {
            const double mean = sum.values[i] / runs;
            const double se = std::sqrt(oracle.variance.values[i] / runs);
            const double diff = std::abs(mean - oracle.mean.values[i]);
            if (se == 0.0) {
                ok = ok && diff < 1e-12;
            } else {
                worst_z = std::max(worst_z, diff / se);
                ok = ok && diff <= 3 * se;
            }
        }
    }
    return {ok, "max_z=" + fmt(worst_z)};
}

// Monte Carlo self-convergence at M = 20.
Outcome ac5() {
    ExperimentConfig config;
    const auto net = build_network(config, 100);
    ConvergenceRun run;
    run.replicates = 20;
    run.max_steps = static_cast<std::uint64_t>(std::ceil(config.t_max / 0.01));
    run.infected_fraction = 0.1;
    bool ok = true;
    std::string detail = "E:";
    for (double p : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}) {
        const auto rep = mc_self_error(net, ModelParams{0.2, 0.2, p, 0.9, 0.01}, run, derive_seed(config.seed, 0),
                                       derive_seed(config.seed, 1));
        ok = ok && rep.value < 0.1;
        detail += " p" + fmt(p) + "=" + fmt(rep.value);
    }
    return {ok, detail};
}

// Network mean against the mean-field solution over a 6x6 grid.
Outcome ac6() {
    ExperimentConfig config;
    config.beta_grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    config.p_grid = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
    validate(config);
    const auto net = build_network(config, config.nodes);
    bool ok = true;
    double worst = 0.0, worst_beta = 0.0, worst_p = 0.0;
    int failing = 0;
    for (double beta : config.beta_grid) {
        for (double p : config.p_grid) {
            const auto ode = ode_run(config, beta, p).resample(config.dt);
            const double gap = max_infected_gap(network_mean(config, net, beta, p), ode, 100.0);
            if (gap >= 0.2) {
                ok = false;
                ++failing;
            }
            if (gap > worst) {
                worst = gap;
                worst_beta = beta;
                worst_p = p;
            }
        }
    }
    return {ok, "max_gap=" + fmt(worst) + " at beta=" + fmt(worst_beta) + " p=" + fmt(worst_p) +
                    " points_over=" + std::to_string(failing) + "/36"};
}

// Final size ordering in the mean-field sweep.
Outcome ac7() {
    ExperimentConfig config;
    config.beta_grid = {0.4};
    config.p_grid = parse_grid("0:0.1:2.5");
    config.model = ModelKind::Ode;
    config.ode_initial = OdeInitial::Analytic;
    config.ode_initial_infected = 1e-10;
    validate(config);
    const auto rows = run_sweep(config);
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].final_recovered <= rows[i - 1].final_recovered;
    const double ratio = rows.front().final_recovered / rows.back().final_recovered;
    return {monotone && ratio >= 10.0, "R(p=0)=" + fmt(rows.front().final_recovered) +
                                           " R(p=2.5)=" + fmt(rows.back().final_recovered) + " ratio=" + fmt(ratio) +
                                           " monotone=" + (monotone ? "yes" : "no")};
}

// Pure recovery: exponential in the mean field, geometric on the network.
Outcome ac8() {
    // Strict relative error needs the absolute tolerance out of the way; the
    // default run is held to its own mixed criterion.
    const ModelParams ode_params{0.0, 0.2, 0.5, 0.9, 0.01};
    IntegratorConfig strict;
    strict.abs_tol = 1e-20;
    const IntegratorConfig standard;
    double worst_rel = 0.0, worst_mixed = 0.0;
    for (const auto& cfg : {strict, standard}) {
        const auto traj = integrate(empirical_initial(), ode_params, 12, cfg);
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double exact = 10.0 * std::exp(-0.2 * traj.times[i]);
            const double err = std::abs(traj.states[i][C::I] - exact);
            if (cfg.abs_tol == strict.abs_tol) worst_rel = std::max(worst_rel, err / exact);
            else worst_mixed = std::max(worst_mixed, err / (cfg.rel_tol * exact + cfg.abs_tol));
        }
    }

    const auto net = watts_strogatz(100, 12, 0.2, 7);
    const ModelParams params{0.0, 0.2, 0.5, 0.9, 0.01};
    EnsembleOptions opt;
    opt.replicates = 1000;
    opt.master_seed = 8;
    opt.infected_count = 10;
    const auto mean = monte_carlo_mean(net, params, opt);
    double worst_z = 0.0;
    for (std::size_t step : {1u, 10u, 50u, 100u, 250u, 500u, 1000u, 2000u}) {
        const double q = std::pow(1.0 - params.gamma * params.dt, static_cast<double>(step));
        const double expect = 10.0 * q;
        const double sigma = std::sqrt(10.0 * q * (1 - q) / opt.replicates);
        const double got = step < mean.size() ? mean.rows[step][C::I] : mean.rows.back()[C::I];
        worst_z = std::max(worst_z, std::abs(got - expect) / sigma);
    }
    return {worst_rel <= strict.rel_tol && worst_mixed <= 1.0 && worst_z <= 3.0,
            "ode_max_rel_err=" + fmt(worst_rel) + " ode_default_tol_ratio=" + fmt(worst_mixed) +
                " network_max_z=" + fmt(worst_z)};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 threshold exactness", ac1},   {"AC2 limit consistency", ac2},   {"AC3 conservation", ac3},
        {"AC4 small-graph oracle", ac4},    {"AC5 MC self-convergence", ac5}, {"AC6 continuum agreement", ac6},
        {"AC7 severity ordering", ac7},     {"AC8 decay oracle", ac8},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failed += !outcome.pass;
        std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << " | " << outcome.detail << std::endl;
    }
    return failed;
}
