#include "netsir/convergence.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "netsir/csv.hpp"

namespace netsir {

double l2_relative_error(std::span<const double> reference, std::span<const double> candidate) {
    if (reference.size() != candidate.size())
        throw std::invalid_argument("series lengths differ: " + std::to_string(reference.size()) + " vs " +
                                    std::to_string(candidate.size()));
    double diff = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = reference[i] - candidate[i];
        diff += d * d;
        norm += reference[i] * reference[i];
    }
    if (norm == 0.0) throw std::invalid_argument("reference series has zero norm");
    return std::sqrt(diff / norm);
}

std::string to_csv_row(const ErrorReport& r) {
    std::string row = r.metric == Metric::E ? "E" : "F";
    row += ',' + std::to_string(r.replicates) + ',' + std::to_string(r.n1) + ',';
    if (r.metric == Metric::F) row += std::to_string(r.n2);
    row += ',' + format_double(r.dt) + ',' + format_double(r.p) + ',' + format_double(r.value);
    return row;
}

void append_error_log(const std::string& path, std::span<const ErrorReport> reports) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + path);
    if (fresh) out << kErrorLogHeader << '\n';
    for (const auto& r : reports) out << to_csv_row(r) << '\n';
}

std::size_t infected_count_for(std::size_t nodes, double fraction) {
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(nodes)));
}

namespace {

TimeSeries ensemble(const ContactNetwork& net, const ModelParams& params, const ConvergenceRun& run,
                    std::uint64_t seed) {
    EnsembleOptions opts;
    opts.replicates = run.replicates;
    opts.master_seed = seed;
    opts.max_steps = run.max_steps;
    opts.infected_count = infected_count_for(net.node_count(), run.infected_fraction);
    opts.threads = run.threads;
    return monte_carlo_mean(net, params, opts);
}

void align(TimeSeries& a, TimeSeries& b) {
    const auto length = std::max(a.size(), b.size());
    a.pad_to(length);
    b.pad_to(length);
}

}  // namespace

ErrorReport mc_self_error(const ContactNetwork& net, const ModelParams& params, const ConvergenceRun& run,
                          std::uint64_t seed_a, std::uint64_t seed_b) {
    if (seed_a == seed_b) throw std::invalid_argument("self-convergence needs two different seeds");
    auto a = ensemble(net, params, run, seed_a);
    auto b = ensemble(net, params, run, seed_b);
    align(a, b);
    ErrorReport report{Metric::E, 0.0, run.replicates, net.node_count(), 0, params.dt, params.p};
    report.value = l2_relative_error(a.column(Compartment::I), b.column(Compartment::I));
    return report;
}

ErrorReport cross_size_error(const ContactNetwork& net_small, const ContactNetwork& net_large,
                             const ModelParams& params, const ConvergenceRun& run, std::uint64_t seed_small,
                             std::uint64_t seed_large) {
    auto a = ensemble(net_small, params, run, seed_small);
    auto b = ensemble(net_large, params, run, seed_large);
    align(a, b);
    auto proportion = [](const TimeSeries& s, std::size_t n) {
        auto col = s.column(Compartment::I);
        for (auto& v : col) v /= static_cast<double>(n);
        return col;
    };
    ErrorReport report{Metric::F, 0.0, run.replicates, net_small.node_count(), net_large.node_count(), params.dt,
                       params.p};
    report.value = l2_relative_error(proportion(a, net_small.node_count()), proportion(b, net_large.node_count()));
    return report;
}

}  // namespace netsir
