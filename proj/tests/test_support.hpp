#pragma once

// Test-only oracles. Nothing here calls into the simulator's step logic.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "netsir/compartments.hpp"
#include "netsir/graph.hpp"
#include "netsir/netsim.hpp"

namespace netsir::testing {

/// Classifies every edge from scratch; used to cross-check compartment_counts.
inline CompartmentVector classify(const std::vector<NodeStatus>& status, const std::vector<std::uint8_t>& off,
                                  const ContactNetwork& net) {
    CompartmentVector c;
    for (auto s : status) c.values[static_cast<std::size_t>(s)] += 1;
    const auto edges = net.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto a = status[edges[e].u];
        auto b = status[edges[e].v];
        if (a > b) std::swap(a, b);
        using NS = NodeStatus;
        Compartment slot{};
        if (!off[e]) {
            if (a == NS::Susceptible && b == NS::Susceptible) slot = Compartment::SS;
            else if (a == NS::Susceptible && b == NS::Infected) slot = Compartment::SI;
            else if (a == NS::Susceptible && b == NS::Recovered) slot = Compartment::SR;
            else if (a == NS::Infected && b == NS::Infected) slot = Compartment::II;
            else if (a == NS::Infected && b == NS::Recovered) slot = Compartment::IR;
            else slot = Compartment::RR;
        } else {
            if (a == NS::Susceptible && b == NS::Infected) slot = Compartment::dSI;
            else if (a == NS::Susceptible && b == NS::Recovered) slot = Compartment::dSR;
            else if (a == NS::Infected && b == NS::Infected) slot = Compartment::dII;
            else if (a == NS::Infected && b == NS::Recovered) slot = Compartment::dIR;
            else slot = Compartment::dRR;
        }
        c[slot] += 1;
    }
    return c;
}

struct OneStepMoments {
    CompartmentVector mean;
    CompartmentVector variance;
    double expected_new_infections = 0.0;
    double expected_deactivations = 0.0;
};

/// Exhaustive enumeration of every joint outcome of one synchronous step.
/// Each independent event (infection of an exposed S node, recovery of an I
/// node, deactivation of an active S-I edge, reactivation of a deactivated
/// S-R or R-R edge) is either taken or not; the outcome probabilities are
/// products of the per-event probabilities.
inline OneStepMoments enumerate_one_step(const ContactNetwork& net, const std::vector<NodeStatus>& status,
                                         const std::vector<std::uint8_t>& off, const ModelParams& params) {
    using NS = NodeStatus;
    enum class Kind { Infect, Recover, Deactivate, Reactivate };
    struct Event {
        Kind kind;
        std::size_t target;
        double prob;
    };
    std::vector<Event> events;
    const auto edges = net.edges();
    for (std::size_t v = 0; v < net.node_count(); ++v) {
        if (status[v] == NS::Susceptible) {
            int exposure = 0;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (off[e]) continue;
                if (edges[e].u == v && status[edges[e].v] == NS::Infected) ++exposure;
                if (edges[e].v == v && status[edges[e].u] == NS::Infected) ++exposure;
            }
            if (exposure) events.push_back({Kind::Infect, v, params.beta * params.dt * exposure});
        } else if (status[v] == NS::Infected) {
            events.push_back({Kind::Recover, v, params.gamma * params.dt});
        }
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto a = status[edges[e].u];
        const auto b = status[edges[e].v];
        const bool si = (a == NS::Susceptible && b == NS::Infected) || (a == NS::Infected && b == NS::Susceptible);
        const bool sr_rr = (a == NS::Recovered && b != NS::Infected) || (b == NS::Recovered && a != NS::Infected);
        if (!off[e] && si) events.push_back({Kind::Deactivate, e, params.p * params.dt});
        if (off[e] && sr_rr) events.push_back({Kind::Reactivate, e, params.r * params.dt});
    }

    OneStepMoments out;
    CompartmentVector second;
    const std::size_t outcomes = std::size_t{1} << events.size();
    for (std::size_t mask = 0; mask < outcomes; ++mask) {
        double prob = 1.0;
        auto next_status = status;
        auto next_off = off;
        int infections = 0, deactivations = 0;
        for (std::size_t i = 0; i < events.size(); ++i) {
            const bool happens = (mask >> i) & 1u;
            prob *= happens ? events[i].prob : 1.0 - events[i].prob;
            if (!happens) continue;
            switch (events[i].kind) {
                case Kind::Infect: next_status[events[i].target] = NS::Infected; ++infections; break;
                case Kind::Recover: next_status[events[i].target] = NS::Recovered; break;
                case Kind::Deactivate: next_off[events[i].target] = 1; ++deactivations; break;
                case Kind::Reactivate: next_off[events[i].target] = 0; break;
            }
        }
        const auto counts = classify(next_status, next_off, net);
        for (std::size_t c = 0; c < kCompartmentCount; ++c) {
            out.mean.values[c] += prob * counts.values[c];
            second.values[c] += prob * counts.values[c] * counts.values[c];
        }
        out.expected_new_infections += prob * infections;
        out.expected_deactivations += prob * deactivations;
    }
    for (std::size_t c = 0; c < kCompartmentCount; ++c)
        out.variance.values[c] = std::max(0.0, second.values[c] - out.mean.values[c] * out.mean.values[c]);
    return out;
}

/// Random admissible mean-field state: compartment counts of a random
/// micro-state (random statuses, random deactivation of non S-S edges) on a
/// 100-node Watts-Strogatz graph.
inline CompartmentVector random_admissible_state(const ContactNetwork& net, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ps = unit(gen), pi = unit(gen) * (1.0 - ps);
    const double deact = unit(gen);
    std::vector<NodeStatus> status(net.node_count());
    for (auto& s : status) {
        const double u = unit(gen);
        s = u < ps ? NodeStatus::Susceptible : u < ps + pi ? NodeStatus::Infected : NodeStatus::Recovered;
    }
    std::vector<std::uint8_t> off(net.edge_count(), 0);
    const auto edges = net.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const bool ss = status[edges[e].u] == NodeStatus::Susceptible && status[edges[e].v] == NodeStatus::Susceptible;
        if (!ss && unit(gen) < deact) off[e] = 1;
    }
    return classify(status, off, net);
}

}  // namespace netsir::testing
