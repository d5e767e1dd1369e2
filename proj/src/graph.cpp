#include "netsir/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "netsir/csv.hpp"
#include "netsir/rng.hpp"

namespace netsir {

namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

ContactNetwork::ContactNetwork(std::size_t node_count, std::vector<Edge> edges, GenerationParams params)
    : node_count_(node_count), edges_(std::move(edges)), params_(params) {
    for (auto& e : edges_) {
        if (e.u == e.v) throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.v >= node_count_)
            throw std::invalid_argument("edge endpoint " + std::to_string(e.v) + " out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
        throw std::invalid_argument("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));

    offsets_.assign(node_count_ + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < node_count_; ++i) {
        max_degree_ = std::max(max_degree_, offsets_[i + 1]);
        offsets_[i + 1] += offsets_[i];
    }
    incidences_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const auto& e = edges_[id];
        incidences_[fill[e.u]++] = {e.v, id};
        incidences_[fill[e.v]++] = {e.u, id};
    }
}

bool ContactNetwork::has_edge(NodeId a, NodeId b) const noexcept {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

ContactNetwork watts_strogatz(std::size_t n, std::uint32_t k, double alpha, std::uint64_t seed) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("ring degree k must be even and >= 2");
    if (k >= n) throw std::invalid_argument("ring degree k must be smaller than the node count");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("rewiring fraction must lie in [0, 1]");
    if (n > UINT32_MAX) throw std::invalid_argument("too many nodes");

    const auto nn = static_cast<NodeId>(n);
    std::vector<Edge> slots;
    slots.reserve(n * k / 2);
    std::unordered_set<std::uint64_t> present;
    present.reserve(n * k);
    for (std::uint32_t j = 1; j <= k / 2; ++j) {
        for (NodeId i = 0; i < nn; ++i) {
            const NodeId other = (i + j) % nn;
            slots.push_back({i, other});
            present.insert(edge_key(i, other));
        }
    }

    Rng rng(seed);
    for (auto& slot : slots) {
        if (!rng.bernoulli(alpha)) continue;
        const NodeId anchor = slot.u;
        for (std::size_t attempt = 0; attempt < n; ++attempt) {
            const auto target = static_cast<NodeId>(rng.below(n));
            if (target == anchor || present.contains(edge_key(anchor, target))) continue;
            present.erase(edge_key(slot.u, slot.v));
            present.insert(edge_key(anchor, target));
            slot.v = target;
            break;
        }
    }
    return ContactNetwork(n, std::move(slots), {k, alpha, seed});
}

double mean_degree(const ContactNetwork& net) {
    if (net.node_count() == 0) return 0.0;
    return 2.0 * static_cast<double>(net.edge_count()) / static_cast<double>(net.node_count());
}

double clustering_coefficient(const ContactNetwork& net) {
    const std::size_t n = net.node_count();
    if (n < 3) throw std::invalid_argument("clustering coefficient needs at least 3 nodes");
    std::vector<char> mark(n, 0);
    double total = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        const auto nbrs = net.neighbors(v);
        const std::size_t d = nbrs.size();
        if (d < 2) continue;
        for (const auto& inc : nbrs) mark[inc.neighbor] = 1;
        std::size_t links = 0;
        for (const auto& inc : nbrs)
            for (const auto& second : net.neighbors(inc.neighbor))
                links += mark[second.neighbor];
        for (const auto& inc : nbrs) mark[inc.neighbor] = 0;
        // each neighbor-neighbor link was seen from both ends
        total += static_cast<double>(links) / static_cast<double>(d * (d - 1));
    }
    return total / static_cast<double>(n);
}

void write_edge_list(std::ostream& out, const ContactNetwork& net) {
    const auto& gp = net.generation_params();
    out << "n=" << net.node_count() << " k=" << gp.ring_degree << " alpha=" << format_double(gp.rewiring_fraction)
        << " seed=" << gp.seed << '\n';
    for (const auto& e : net.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string to_edge_list(const ContactNetwork& net) {
    std::ostringstream out;
    write_edge_list(out, net);
    return out.str();
}

ContactNetwork read_edge_list(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("edge list: missing header");
    std::istringstream hs(header);
    std::string token;
    std::size_t n = 0;
    GenerationParams gp;
    bool have_n = false;
    while (hs >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("edge list: bad header token '" + token + "'");
        const auto key = token.substr(0, eq);
        const auto value = token.substr(eq + 1);
        if (key == "n") {
            n = std::stoull(value);
            have_n = true;
        } else if (key == "k") {
            gp.ring_degree = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "alpha") {
            gp.rewiring_fraction = parse_double(value);
        } else if (key == "seed") {
            gp.seed = std::stoull(value);
        } else {
            throw std::invalid_argument("edge list: unknown header key '" + key + "'");
        }
    }
    if (!have_n) throw std::invalid_argument("edge list: header lacks n=");

    std::vector<Edge> edges;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long a = -1, b = -1;
        if (!(ls >> a >> b) || a < 0 || b < 0)
            throw std::invalid_argument("edge list: malformed line " + std::to_string(lineno));
        edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }
    return ContactNetwork(n, std::move(edges), gp);
}

}  // namespace netsir
