#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace netsir {

/// The 14 state variables shared by the network and mean-field models:
/// node counts, active-edge counts, deactivated-edge counts. There is no
/// deactivated S-S class; only S-I edges are ever deactivated and node
/// states never move back to S.
enum class Compartment : std::size_t {
    S, I, R,
    SS, SI, SR, II, IR, RR,
    dSI, dSR, dII, dIR, dRR,
};

inline constexpr std::size_t kCompartmentCount = 14;
inline constexpr std::size_t kNodeCompartments = 3;

inline constexpr std::array<std::string_view, kCompartmentCount> kCompartmentNames = {
    "S", "I", "R", "SS", "SI", "SR", "II", "IR", "RR", "dSI", "dSR", "dII", "dIR", "dRR",
};

struct CompartmentVector {
    std::array<double, kCompartmentCount> values{};

    double& operator[](Compartment c) noexcept { return values[static_cast<std::size_t>(c)]; }
    double operator[](Compartment c) const noexcept { return values[static_cast<std::size_t>(c)]; }

    double node_total() const noexcept {
        double sum = 0.0;
        for (std::size_t i = 0; i < kNodeCompartments; ++i) sum += values[i];
        return sum;
    }
    double edge_total() const noexcept {
        double sum = 0.0;
        for (std::size_t i = kNodeCompartments; i < kCompartmentCount; ++i) sum += values[i];
        return sum;
    }

    friend bool operator==(const CompartmentVector&, const CompartmentVector&) = default;
};

/// Mean-field states and their time derivatives use the same layout.
using MeanFieldState = CompartmentVector;

}  // namespace netsir
