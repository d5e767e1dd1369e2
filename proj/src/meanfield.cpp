#include "netsir/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netsir/errors.hpp"

namespace netsir {

using C = Compartment;

double triple_closure(double ab, double bc, double b, double mean_degree) {
    if (!(b > 0.0)) throw std::domain_error("triple closure needs a positive centre count");
    return (mean_degree - 1.0) / mean_degree * ab * bc / b;
}

MeanFieldState rhs(const MeanFieldState& y, const ModelParams& params, double k, const IntegratorConfig& config) {
    const double beta = params.beta;
    const double gamma = params.gamma;
    const double p = params.p;
    const double r = params.r;

    const double s = y[C::S];
    const double si = y[C::SI];
    double ssi = 0.0, isi = 0.0, isr = 0.0, i_dsi = 0.0, i_dsr = 0.0;
    if (s >= config.s_guard && s > 0.0) {
        ssi = triple_closure(y[C::SS], si, s, k);
        isi = triple_closure(si, si, s, k);
        isr = triple_closure(si, y[C::SR], s, k);
        i_dsi = triple_closure(si, y[C::dSI], s, k);
        i_dsr = triple_closure(si, y[C::dSR], s, k);
    }

    // Each flux is computed once and used on both sides of the balance.
    const double infect_node = beta * si;
    const double recover_node = gamma * y[C::I];
    const double infect_ss = beta * ssi;
    const double infect_si = beta * (si + isi);
    const double infect_sr = beta * isr;
    const double infect_dsi = beta * i_dsi;
    const double infect_dsr = beta * i_dsr;
    const double recover_si = gamma * si;
    const double recover_ii = 2.0 * gamma * y[C::II];
    const double recover_ir = gamma * y[C::IR];
    const double recover_dsi = gamma * y[C::dSI];
    const double recover_dii = 2.0 * gamma * y[C::dII];
    const double recover_dir = gamma * y[C::dIR];
    const double deactivate = p * si;
    const double reactivate_sr = r * y[C::dSR];
    const double reactivate_rr = r * y[C::dRR];

    MeanFieldState d;
    d[C::S] = -infect_node;
    d[C::I] = infect_node - recover_node;
    d[C::R] = recover_node;

    d[C::SS] = -infect_ss;
    d[C::SI] = infect_ss - infect_si - recover_si - deactivate;
    d[C::SR] = -infect_sr + recover_si + reactivate_sr;
    d[C::II] = infect_si - recover_ii;
    d[C::IR] = recover_ii - recover_ir + infect_sr;
    d[C::RR] = recover_ir + reactivate_rr;

    d[C::dSI] = deactivate - recover_dsi - infect_dsi;
    d[C::dSR] = recover_dsi - reactivate_sr - infect_dsr;
    d[C::dII] = infect_dsi - recover_dii;
    d[C::dIR] = recover_dii + infect_dsr - recover_dir;
    d[C::dRR] = recover_dir - reactivate_rr;
    return d;
}

MeanFieldState analytic_initial(double nodes, double i0, double k, double nbar) {
    if (!(i0 > 0.0 && i0 < nodes)) throw std::invalid_argument("initial infected must lie in (0, N)");
    if (k * i0 > nbar) throw std::invalid_argument("k * I0 exceeds the total edge count");
    MeanFieldState y;
    y[C::S] = nodes - i0;
    y[C::I] = i0;
    y[C::SI] = k * i0;
    y[C::SS] = nbar - k * i0;
    return y;
}

MeanFieldState empirical_initial() {
    MeanFieldState y;
    y[C::S] = 90;
    y[C::I] = 10;
    y[C::SS] = 485;
    y[C::SI] = 110;
    y[C::II] = 5;
    return y;
}

MeanFieldState Trajectory::at(double t) const {
    if (times.empty()) throw std::logic_error("empty trajectory");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    MeanFieldState out;
    for (std::size_t c = 0; c < kCompartmentCount; ++c)
        out.values[c] = states[lo].values[c] + w * (states[hi].values[c] - states[lo].values[c]);
    return out;
}

TimeSeries Trajectory::resample(double dt) const {
    if (!(dt > 0.0)) throw std::invalid_argument("resample interval must be positive");
    TimeSeries series;
    series.dt = dt;
    const auto count = static_cast<std::size_t>(std::floor(final_time() / dt + 1e-9)) + 1;
    series.rows.reserve(count);
    for (std::size_t k = 0; k < count; ++k) series.rows.push_back(at(static_cast<double>(k) * dt));
    return series;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* for the embedded 4th-order solution.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using Vec = std::array<double, kCompartmentCount>;

template <typename F>
Vec combine(const Vec& y, double h, F&& weights) {
    Vec out;
    for (std::size_t i = 0; i < kCompartmentCount; ++i) out[i] = y[i] + h * weights(i);
    return out;
}

}  // namespace

Trajectory integrate(const MeanFieldState& initial, const ModelParams& params, double k,
                     const IntegratorConfig& config) {
    if (!(config.rel_tol > 0.0 && config.abs_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (config.s_guard < 0.0) throw std::invalid_argument("s_guard must be nonnegative");
    if (!(config.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

    Trajectory traj;
    traj.population = initial.node_total();
    const double i_ext = config.i_extinction >= 0.0 ? config.i_extinction : 1e-8 * traj.population;

    auto f = [&](const Vec& y) { return rhs(MeanFieldState{y}, params, k, config).values; };

    double t = 0.0;
    Vec y = initial.values;
    Vec k1 = f(y);
    traj.times.push_back(t);
    traj.states.push_back(initial);

    double h = std::min(config.initial_step, config.t_max);
    constexpr std::size_t kMaxSteps = 10'000'000;
    for (std::size_t n = 0; t < config.t_max; ++n) {
        if (n >= kMaxSteps) throw NumericError("integrator exceeded the step limit at t=" + std::to_string(t));
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw NumericError("integrator step size underflow at t=" + std::to_string(t));
        const bool last = t + h >= config.t_max;
        if (last) h = config.t_max - t;

        const Vec k2 = f(combine(y, h, [&](std::size_t i) { return a21 * k1[i]; }));
        const Vec k3 = f(combine(y, h, [&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; }));
        const Vec k4 = f(combine(y, h, [&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; }));
        const Vec k5 = f(combine(
            y, h, [&](std::size_t i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; }));
        const Vec k6 = f(combine(y, h, [&](std::size_t i) {
            return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
        }));
        const Vec y_new = combine(
            y, h, [&](std::size_t i) { return b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]; });
        const Vec k7 = f(y_new);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < kCompartmentCount; ++i) {
            const double local = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (local / scale) * (local / scale);
            finite = finite && std::isfinite(y_new[i]);
        }
        err = std::sqrt(err / kCompartmentCount);
        if (!finite || !std::isfinite(err)) {
            h *= 0.2;
            continue;
        }

        if (err <= 1.0) {
            t = last ? config.t_max : t + h;
            y = y_new;
            k1 = k7;
            traj.times.push_back(t);
            traj.states.push_back(MeanFieldState{y});
            if (y[static_cast<std::size_t>(C::I)] < i_ext && k1[static_cast<std::size_t>(C::I)] < 0.0) break;
            const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= grow;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    return traj;
}

double final_recovered(const Trajectory& trajectory) {
    if (trajectory.states.empty()) throw std::logic_error("empty trajectory");
    const double n = trajectory.population > 0.0 ? trajectory.population : trajectory.final_state().node_total();
    return trajectory.final_state()[C::R] / n;
}

}  // namespace netsir
