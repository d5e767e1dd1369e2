#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace netsir {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct GenerationParams {
    std::uint32_t ring_degree = 0;
    double rewiring_fraction = 0.0;
    std::uint64_t seed = 0;
};

/// Neighbor entry of the adjacency list: the other endpoint and the index of
/// the connecting edge in ContactNetwork::edges().
struct Incidence {
    NodeId neighbor;
    EdgeId edge;
};

/// Immutable undirected simple graph.
///
/// Edges are kept sorted lexicographically by (u, v), which also defines the
/// EdgeId of each edge. Simulation state that lives on edges (the
/// deactivation mask) is indexed by EdgeId.
class ContactNetwork {
public:
    /// Builds from an arbitrary edge list. Endpoints are normalized to u < v.
    /// Throws std::invalid_argument on self-loops, duplicates or out-of-range
    /// endpoints.
    ContactNetwork(std::size_t node_count, std::vector<Edge> edges, GenerationParams params = {});

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Incidence> neighbors(NodeId node) const noexcept {
        return {incidences_.data() + offsets_[node], incidences_.data() + offsets_[node + 1]};
    }
    std::size_t degree(NodeId node) const noexcept { return offsets_[node + 1] - offsets_[node]; }
    std::size_t max_degree() const noexcept { return max_degree_; }
    bool has_edge(NodeId a, NodeId b) const noexcept;
    const GenerationParams& generation_params() const noexcept { return params_; }

private:
    std::size_t node_count_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Incidence> incidences_;
    std::size_t max_degree_ = 0;
    GenerationParams params_;
};

/// Watts-Strogatz small-world graph.
///
/// Starts from a ring lattice where each node links to its k/2 nearest
/// neighbors on either side. Every lattice edge (i, i+j mod n) is then
/// visited once, for j = 1..k/2 and i = 0..n-1, and with probability `alpha`
/// its clockwise endpoint is moved to a uniformly drawn node. Targets that
/// would create a self-loop or a duplicate are redrawn, up to n attempts; if
/// none succeeds the edge is kept. The edge count is always k*n/2.
///
/// Requires n > k >= 2, k even, alpha in [0, 1].
ContactNetwork watts_strogatz(std::size_t n, std::uint32_t k, double alpha, std::uint64_t seed);

/// 2|E|/N.
double mean_degree(const ContactNetwork& net);

/// Average local clustering coefficient; nodes of degree < 2 contribute 0.
/// Requires N >= 3.
double clustering_coefficient(const ContactNetwork& net);

/// Edge-list text format: `n=<N> k=<k> alpha=<alpha> seed=<seed>` followed
/// by one `i j` line per edge, i < j, sorted.
void write_edge_list(std::ostream& out, const ContactNetwork& net);
std::string to_edge_list(const ContactNetwork& net);
ContactNetwork read_edge_list(std::istream& in);

}  // namespace netsir
