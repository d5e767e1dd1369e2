#pragma once

#include <cstdint>
#include <vector>

#include "netsir/compartments.hpp"
#include "netsir/graph.hpp"
#include "netsir/rng.hpp"
#include "netsir/timeseries.hpp"

namespace netsir {

enum class NodeStatus : std::uint8_t { Susceptible, Infected, Recovered };

/// Rates per unit time and the time step of the discrete simulation.
struct ModelParams {
    double beta = 0.0;   ///< infection, per active S-I contact
    double gamma = 0.0;  ///< recovery
    double p = 0.0;      ///< deactivation of active S-I edges
    double r = 0.0;      ///< reactivation of deactivated S-R and R-R edges
    double dt = 0.01;
};

/// Throws NumericError unless every per-step probability is in [0, 1] for a
/// network whose largest degree is `max_degree`.
void validate(const ModelParams& params, std::size_t max_degree);

/// Microscopic state: node statuses plus the deactivated-edge mask, indexed
/// by EdgeId of the network it was created for.
struct SimState {
    std::vector<NodeStatus> statuses;
    std::vector<std::uint8_t> deactivated;
    std::uint64_t step_index = 0;

    std::size_t deactivated_count() const noexcept;
};

/// `infected_count` nodes chosen uniformly without replacement are Infected,
/// the rest Susceptible; no deactivated edges.
SimState init_sim(const ContactNetwork& net, std::size_t infected_count, std::uint64_t seed);

/// One synchronous step. All probabilities are evaluated on the incoming
/// state, in this fixed draw order:
///   nodes by id: S infected w.p. beta*dt*(active infected neighbors),
///                I recovers w.p. gamma*dt;
///   edges by id: active S-I edge deactivated w.p. p*dt,
///                deactivated S-R or R-R edge reactivated w.p. r*dt.
/// An S-I edge can be deactivated in the same step its S end gets infected.
/// Throws NumericError if an infection probability exceeds one.
void step_in_place(SimState& state, const ContactNetwork& net, const ModelParams& params, Rng& rng);
SimState step(SimState state, const ContactNetwork& net, const ModelParams& params, Rng& rng);

/// Projects a micro-state onto the 14 compartments. Each edge counts once.
CompartmentVector compartment_counts(const SimState& state, const ContactNetwork& net);

/// True once nothing can change any more: no infected node, and either no
/// deactivated edge left or no reactivation.
bool is_absorbing(const SimState& state, const ModelParams& params);

/// Steps from `init` recording compartment counts (row 0 is `init`) until the
/// state is absorbing or `max_steps` steps have been taken.
TimeSeries run_simulation(const ContactNetwork& net, const ModelParams& params, SimState init,
                          std::uint64_t max_steps, std::uint64_t seed);

/// Seed used by replicate `index` of an ensemble. The replicate draws its
/// initial infected set from stream 0 of this seed and its dynamics from
/// stream 1.
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Single replicate as run inside monte_carlo_mean.
TimeSeries run_replicate(const ContactNetwork& net, const ModelParams& params, std::size_t infected_count,
                         std::uint64_t seed, std::uint64_t max_steps);

struct EnsembleOptions {
    std::size_t replicates = 20;
    std::uint64_t master_seed = 0;
    std::uint64_t max_steps = 50'000;
    std::size_t infected_count = 0;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Per-step mean of `replicates` independent runs. Shorter runs are padded
/// with their terminal state. Reduction happens in replicate order, so the
/// result does not depend on the thread count.
TimeSeries monte_carlo_mean(const ContactNetwork& net, const ModelParams& params, const EnsembleOptions& options);

}  // namespace netsir
