#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netsir {

/// Severity regions of the (beta, p) plane.
///   I   R0 <= 1: infection shrinks from the start.
///   II  R0 > 1, p2* <= p < p1*: infections grow but decelerate.
///   III R0 > 1, p >= p1*: S-I edges shrink from the start.
///   IV  R0 > 1, p < p2*: infections grow and accelerate; a full epidemic.
enum class Region { I, II, III, IV };

std::string_view to_string(Region region);

double basic_reproduction_number(double beta, double gamma, double k);

/// Deactivation rate at which d[SI]/dt at t=0 (per I0, I0 -> 0) changes sign.
double p1_star(double beta, double gamma, double k);

/// Deactivation rate at which d^2 I/dt^2 at t=0 (per I0, I0 -> 0) changes sign.
double p2_star(double beta, double gamma, double k);

/// lim_{I0->0} d[SI]/dt(0) / I0.
double si_initial_rate(double beta, double gamma, double p, double k);

/// Ties go to the less severe region.
Region classify_region(double beta, double gamma, double p, double k);

struct ThresholdReport {
    double r0 = 0.0;
    double beta_star = 0.0;
    double p1_star = 0.0;
    double p2_star = 0.0;
    std::optional<Region> region;

    /// Flat `key=value` lines. Adds a `note=` line when a threshold is not
    /// positive, since the corresponding regions then vanish from p >= 0.
    std::string to_text() const;
};

/// p is optional; the region is only filled when it is given.
ThresholdReport threshold_report(double beta, double gamma, double k, std::optional<double> p = std::nullopt);

/// One row of a limit check: numerically evaluated initial rates per I0
/// next to their closed forms.
struct LimitSample {
    double i0 = 0.0;
    double i_rate = 0.0;       ///< dI/dt(0) / I0
    double si_rate = 0.0;      ///< d[SI]/dt(0) / I0
    double i_accel = 0.0;      ///< d2I/dt2(0) / I0 = (beta d[SI]/dt - gamma dI/dt) / I0
    double i_rate_error = 0.0;   ///< relative errors vs closed forms
    double si_rate_error = 0.0;
    double i_accel_error = 0.0;
};

struct LimitReport {
    double i_rate_limit = 0.0;   ///< beta k - gamma
    double si_rate_limit = 0.0;  ///< si_initial_rate
    double i_accel_limit = 0.0;  ///< beta si_rate_limit - gamma i_rate_limit
    Region region = Region::I;
    std::vector<LimitSample> samples;
    /// Last sample's signs match the limits' signs and the region.
    bool signs_agree = false;
};

/// Evaluates the mean-field right-hand side at analytic_initial(N, I0, k,
/// k N / 2) for each I0 in the decreasing sequence.
LimitReport verify_limits_numerically(double beta, double gamma, double p, double k,
                                      const std::vector<double>& i0_sequence, double nodes = 100.0);

}  // namespace netsir
