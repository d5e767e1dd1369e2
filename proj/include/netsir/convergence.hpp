#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "netsir/graph.hpp"
#include "netsir/netsim.hpp"

namespace netsir {

/// ||reference - candidate||_2 / ||reference||_2. Throws
/// std::invalid_argument on length mismatch or an all-zero reference.
double l2_relative_error(std::span<const double> reference, std::span<const double> candidate);

enum class Metric { E, F };

/// A convergence diagnostic together with the run configuration it came from.
struct ErrorReport {
    Metric metric = Metric::E;
    double value = 0.0;
    std::size_t replicates = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;  ///< 0 for E
    double dt = 0.0;
    double p = 0.0;
};

inline constexpr const char* kErrorLogHeader = "metric,M,N1,N2,dt,p,value";

/// One CSV row, without trailing newline.
std::string to_csv_row(const ErrorReport& report);

/// Appends rows to `path`, writing the header first if the file is new.
void append_error_log(const std::string& path, std::span<const ErrorReport> reports);

struct ConvergenceRun {
    std::size_t replicates = 20;
    std::uint64_t max_steps = 50'000;
    double infected_fraction = 0.1;
    unsigned threads = 0;
};

/// Number of initially infected nodes for `fraction` of `nodes`, rounded.
std::size_t infected_count_for(std::size_t nodes, double fraction);

/// E: relative L2 distance between the mean infected counts of two
/// ensembles of M replicates seeded `seed_a` and `seed_b`. The shorter mean
/// is padded with its terminal value.
ErrorReport mc_self_error(const ContactNetwork& net, const ModelParams& params, const ConvergenceRun& run,
                          std::uint64_t seed_a, std::uint64_t seed_b);

/// F: relative L2 distance between mean infected proportions (counts / N)
/// on two networks, the smaller one as reference.
ErrorReport cross_size_error(const ContactNetwork& net_small, const ContactNetwork& net_large,
                             const ModelParams& params, const ConvergenceRun& run, std::uint64_t seed_small,
                             std::uint64_t seed_large);

}  // namespace netsir
