#include "netsir/netsim.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "netsir/errors.hpp"

namespace netsir {

namespace {

constexpr auto S = NodeStatus::Susceptible;
constexpr auto I = NodeStatus::Infected;
constexpr auto R = NodeStatus::Recovered;

void check_probability(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0))
        throw NumericError(std::string(what) + " per step is " + std::to_string(value) +
                           ", outside [0, 1]; reduce dt");
}

bool reactivatable(NodeStatus a, NodeStatus b) {
    return (a == R && (b == S || b == R)) || (b == R && a == S);
}

}  // namespace

void validate(const ModelParams& params, std::size_t max_degree) {
    if (!(params.dt > 0.0)) throw NumericError("dt must be positive");
    if (params.beta < 0.0 || params.gamma < 0.0 || params.p < 0.0 || params.r < 0.0)
        throw NumericError("rates must be nonnegative");
    check_probability(params.gamma * params.dt, "recovery probability");
    check_probability(params.p * params.dt, "deactivation probability");
    check_probability(params.r * params.dt, "reactivation probability");
    check_probability(params.beta * params.dt * static_cast<double>(max_degree), "worst-case infection probability");
}

std::size_t SimState::deactivated_count() const noexcept {
    return static_cast<std::size_t>(std::count(deactivated.begin(), deactivated.end(), std::uint8_t{1}));
}

SimState init_sim(const ContactNetwork& net, std::size_t infected_count, std::uint64_t seed) {
    const std::size_t n = net.node_count();
    if (infected_count > n)
        throw std::invalid_argument("infected count " + std::to_string(infected_count) + " exceeds node count");
    SimState state;
    state.statuses.assign(n, S);
    state.deactivated.assign(net.edge_count(), 0);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < infected_count; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(order[i], order[j]);
        state.statuses[order[i]] = I;
    }
    return state;
}

void step_in_place(SimState& state, const ContactNetwork& net, const ModelParams& params, Rng& rng) {
    const auto edges = net.edges();
    const std::size_t n = net.node_count();
    auto& status = state.statuses;
    auto& off = state.deactivated;

    // Infectious pressure from step-k state, over active edges only.
    thread_local std::vector<std::uint32_t> pressure;
    pressure.assign(n, 0);
    for (EdgeId id = 0; id < edges.size(); ++id) {
        if (off[id]) continue;
        const auto a = status[edges[id].u];
        const auto b = status[edges[id].v];
        if (a == S && b == I) ++pressure[edges[id].u];
        else if (a == I && b == S) ++pressure[edges[id].v];
    }

    thread_local std::vector<NodeStatus> next;
    next = status;
    const double infect = params.beta * params.dt;
    const double recover = params.gamma * params.dt;
    for (NodeId v = 0; v < n; ++v) {
        if (status[v] == S) {
            if (pressure[v] == 0 || infect == 0.0) continue;
            const double prob = infect * pressure[v];
            if (prob > 1.0)
                throw NumericError("infection probability " + std::to_string(prob) + " exceeds 1 at node " +
                                   std::to_string(v) + "; reduce dt");
            if (rng.bernoulli(prob)) next[v] = I;
        } else if (status[v] == I) {
            if (recover > 0.0 && rng.bernoulli(recover)) next[v] = R;
        }
    }

    const double deactivate = params.p * params.dt;
    const double reactivate = params.r * params.dt;
    for (EdgeId id = 0; id < edges.size(); ++id) {
        const auto a = status[edges[id].u];
        const auto b = status[edges[id].v];
        if (!off[id]) {
            if (deactivate > 0.0 && ((a == S && b == I) || (a == I && b == S)) && rng.bernoulli(deactivate))
                off[id] = 1;
        } else if (reactivate > 0.0 && reactivatable(a, b) && rng.bernoulli(reactivate)) {
            off[id] = 0;
        }
    }

    status.swap(next);
    ++state.step_index;
}

SimState step(SimState state, const ContactNetwork& net, const ModelParams& params, Rng& rng) {
    step_in_place(state, net, params, rng);
    return state;
}

CompartmentVector compartment_counts(const SimState& state, const ContactNetwork& net) {
    CompartmentVector c;
    for (auto s : state.statuses) {
        switch (s) {
            case S: c[Compartment::S] += 1; break;
            case I: c[Compartment::I] += 1; break;
            case R: c[Compartment::R] += 1; break;
        }
    }
    // Indexed by [off][lo][hi] over statuses ordered S < I < R.
    static constexpr Compartment kClass[2][3][3] = {
        {{Compartment::SS, Compartment::SI, Compartment::SR},
         {Compartment::SI, Compartment::II, Compartment::IR},
         {Compartment::SR, Compartment::IR, Compartment::RR}},
        {{Compartment::S, Compartment::dSI, Compartment::dSR},
         {Compartment::dSI, Compartment::dII, Compartment::dIR},
         {Compartment::dSR, Compartment::dIR, Compartment::dRR}},
    };
    const auto edges = net.edges();
    for (EdgeId id = 0; id < edges.size(); ++id) {
        const auto a = static_cast<std::size_t>(state.statuses[edges[id].u]);
        const auto b = static_cast<std::size_t>(state.statuses[edges[id].v]);
        const bool off = state.deactivated[id] != 0;
        if (off && a == 0 && b == 0) throw std::logic_error("deactivated S-S edge in simulation state");
        c[kClass[off][a][b]] += 1;
    }
    return c;
}

bool is_absorbing(const SimState& state, const ModelParams& params) {
    if (std::find(state.statuses.begin(), state.statuses.end(), I) != state.statuses.end()) return false;
    if (params.r <= 0.0) return true;
    return std::find(state.deactivated.begin(), state.deactivated.end(), std::uint8_t{1}) == state.deactivated.end();
}

TimeSeries run_simulation(const ContactNetwork& net, const ModelParams& params, SimState init,
                          std::uint64_t max_steps, std::uint64_t seed) {
    validate(params, net.max_degree());
    if (init.statuses.size() != net.node_count() || init.deactivated.size() != net.edge_count())
        throw std::invalid_argument("simulation state does not match the network");
    TimeSeries series;
    series.dt = params.dt;
    series.rows.push_back(compartment_counts(init, net));
    Rng rng(seed);
    for (std::uint64_t k = 0; k < max_steps && !is_absorbing(init, params); ++k) {
        step_in_place(init, net, params, rng);
        series.rows.push_back(compartment_counts(init, net));
    }
    return series;
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return derive_seed(master_seed, index);
}

TimeSeries run_replicate(const ContactNetwork& net, const ModelParams& params, std::size_t infected_count,
                         std::uint64_t seed, std::uint64_t max_steps) {
    auto init = init_sim(net, infected_count, derive_seed(seed, 0));
    return run_simulation(net, params, std::move(init), max_steps, derive_seed(seed, 1));
}

TimeSeries monte_carlo_mean(const ContactNetwork& net, const ModelParams& params, const EnsembleOptions& options) {
    const std::size_t m = options.replicates;
    if (m == 0) throw std::invalid_argument("ensemble needs at least one replicate");
    validate(params, net.max_degree());

    std::vector<TimeSeries> runs(m);
    unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, m));

    auto work = [&](unsigned worker, std::exception_ptr& error) {
        try {
            for (std::size_t j = worker; j < m; j += workers)
                runs[j] = run_replicate(net, params, options.infected_count,
                                        replicate_seed(options.master_seed, j), options.max_steps);
        } catch (...) {
            error = std::current_exception();
        }
    };
    std::vector<std::exception_ptr> errors(workers);
    if (workers == 1) {
        work(0, errors[0]);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, std::ref(errors[w]));
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::size_t length = 0;
    for (const auto& run : runs) length = std::max(length, run.size());
    TimeSeries mean;
    mean.dt = params.dt;
    mean.rows.assign(length, CompartmentVector{});
    for (const auto& run : runs) {
        for (std::size_t k = 0; k < length; ++k) {
            const auto& row = run.rows[std::min(k, run.size() - 1)];
            for (std::size_t c = 0; c < kCompartmentCount; ++c) mean.rows[k].values[c] += row.values[c];
        }
    }
    const auto denom = static_cast<double>(m);
    for (auto& row : mean.rows)
        for (auto& v : row.values) v /= denom;
    return mean;
}

}  // namespace netsir
