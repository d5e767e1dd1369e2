#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "netsir/compartments.hpp"

namespace netsir {

/// Compartment counts sampled on a uniform grid; row k is at time k*dt.
struct TimeSeries {
    double dt = 0.0;
    std::vector<CompartmentVector> rows;

    std::size_t size() const noexcept { return rows.size(); }

    /// Values of one compartment over time.
    std::vector<double> column(Compartment c) const;

    /// Extends to `length` rows by repeating the last row. No-op if already
    /// at least that long.
    void pad_to(std::size_t length);
};

/// Header of the 15-column CSV written for both models.
inline constexpr const char* kTimeSeriesCsvHeader = "t,S,I,R,SS,SI,SR,II,IR,RR,dSI,dSR,dII,dIR,dRR";

void write_csv(std::ostream& out, const TimeSeries& series);
std::string to_csv(const TimeSeries& series);
TimeSeries read_csv(std::istream& in);

}  // namespace netsir
