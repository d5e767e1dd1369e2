#pragma once

#include <vector>

#include "netsir/compartments.hpp"
#include "netsir/netsim.hpp"
#include "netsir/timeseries.hpp"

namespace netsir {

struct IntegratorConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double t_max = 500.0;
    /// Closure terms are switched off while S is below this absolute count.
    double s_guard = 0.001;
    /// Integration stops once I falls below this while still decreasing.
    /// Negative means the default of 1e-8 * N.
    double i_extinction = -1.0;
    double initial_step = 1e-3;
};

/// Homogeneous pair approximation of the triple count [ABC] centred on a B
/// node: ((k-1)/k) [AB][BC] / B. Throws std::domain_error if b <= 0.
double triple_closure(double ab, double bc, double b, double mean_degree);

/// Time derivative of the 14-compartment pair-approximation model. Triples
/// [SSI], [ISI], [ISR], [I dSI], [I dSR] are closed around the S node; all
/// five vanish while S < config.s_guard.
MeanFieldState rhs(const MeanFieldState& state, const ModelParams& params, double mean_degree,
                   const IntegratorConfig& config = {});

/// Initial condition for a vanishing seed of infection: S = N - I0, I = I0,
/// [SI] = k I0, [SS] = nbar - k I0, everything else zero.
MeanFieldState analytic_initial(double nodes, double initial_infected, double mean_degree, double total_edges);

/// Average initial compartments of a 100-node, 600-edge network with 10
/// random infected nodes: S=90, I=10, SS=485, SI=110, II=5.
MeanFieldState empirical_initial();

/// Accepted integrator steps. times.front() == 0.
struct Trajectory {
    std::vector<double> times;
    std::vector<MeanFieldState> states;
    double population = 0.0;

    const MeanFieldState& final_state() const { return states.back(); }
    double final_time() const { return times.back(); }

    /// Linear interpolation between accepted steps; clamps outside the range.
    MeanFieldState at(double t) const;

    /// Samples at 0, dt, 2dt, ... up to the final time (inclusive within
    /// rounding), linearly interpolated.
    TimeSeries resample(double dt) const;
};

/// Dormand-Prince 5(4) with proportional step-size control. Stops at t_max,
/// or when I < i_extinction and dI/dt < 0. Throws NumericError on step-size
/// underflow or a non-finite state.
Trajectory integrate(const MeanFieldState& initial, const ModelParams& params, double mean_degree,
                     const IntegratorConfig& config = {});

/// R at the final time as a proportion of the population.
double final_recovered(const Trajectory& trajectory);

}  // namespace netsir
