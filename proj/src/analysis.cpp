#include "netsir/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "netsir/csv.hpp"
#include "netsir/meanfield.hpp"

namespace netsir {

std::string_view to_string(Region region) {
    switch (region) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
    }
    return "?";
}

double basic_reproduction_number(double beta, double gamma, double k) {
    if (!(gamma > 0.0)) throw std::invalid_argument("recovery rate must be positive");
    return beta * k / gamma;
}

double p1_star(double beta, double gamma, double k) {
    return beta * (k / 2.0 - 1.5) - gamma;
}

double p2_star(double beta, double gamma, double k) {
    if (beta * k == 0.0) throw std::invalid_argument("p2* is undefined for beta * k = 0");
    return p1_star(beta, gamma, k) - gamma + gamma * gamma / (beta * k);
}

double si_initial_rate(double beta, double gamma, double p, double k) {
    return beta * (k * k / 2.0 - 1.5 * k) - (gamma + p) * k;
}

Region classify_region(double beta, double gamma, double p, double k) {
    if (basic_reproduction_number(beta, gamma, k) <= 1.0) return Region::I;
    if (p >= p1_star(beta, gamma, k)) return Region::III;
    if (p >= p2_star(beta, gamma, k)) return Region::II;
    return Region::IV;
}

ThresholdReport threshold_report(double beta, double gamma, double k, std::optional<double> p) {
    ThresholdReport report;
    report.r0 = basic_reproduction_number(beta, gamma, k);
    if (!(k > 0.0)) throw std::invalid_argument("mean degree must be positive");
    report.beta_star = gamma / k;
    report.p1_star = p1_star(beta, gamma, k);
    report.p2_star = beta * k > 0.0 ? p2_star(beta, gamma, k) : INFINITY;
    if (p) report.region = classify_region(beta, gamma, *p, k);
    return report;
}

std::string ThresholdReport::to_text() const {
    std::ostringstream out;
    out << "r0=" << format_double(r0) << '\n'
        << "beta_star=" << format_double(beta_star) << '\n'
        << "p1_star=" << format_double(p1_star) << '\n'
        << "p2_star=" << format_double(p2_star) << '\n';
    if (region) out << "region=" << to_string(*region) << '\n';
    if (r0 > 1.0 && p1_star <= 0.0)
        out << "note=p1_star<=0: every p>=0 lies in region III\n";
    else if (r0 > 1.0 && p2_star <= 0.0)
        out << "note=p2_star<=0: region IV is empty for p>=0\n";
    return out.str();
}

namespace {

double relative_error(double value, double reference) {
    const double diff = std::abs(value - reference);
    return reference == 0.0 ? diff : diff / std::abs(reference);
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

LimitReport verify_limits_numerically(double beta, double gamma, double p, double k,
                                      const std::vector<double>& i0_sequence, double nodes) {
    if (i0_sequence.empty()) throw std::invalid_argument("empty I0 sequence");
    for (std::size_t i = 0; i < i0_sequence.size(); ++i) {
        if (!(i0_sequence[i] > 0.0)) throw std::invalid_argument("I0 values must be positive");
        if (i > 0 && !(i0_sequence[i] < i0_sequence[i - 1]))
            throw std::invalid_argument("I0 sequence must be decreasing");
    }

    LimitReport report;
    report.i_rate_limit = beta * k - gamma;
    report.si_rate_limit = si_initial_rate(beta, gamma, p, k);
    report.i_accel_limit = beta * report.si_rate_limit - gamma * report.i_rate_limit;
    report.region = classify_region(beta, gamma, p, k);

    const ModelParams params{beta, gamma, p, 0.0, 1.0};
    const double nbar = k * nodes / 2.0;
    for (double i0 : i0_sequence) {
        const auto y0 = analytic_initial(nodes, i0, k, nbar);
        const auto d = rhs(y0, params, k);
        LimitSample s;
        s.i0 = i0;
        s.i_rate = d[Compartment::I] / i0;
        s.si_rate = d[Compartment::SI] / i0;
        s.i_accel = (beta * d[Compartment::SI] - gamma * d[Compartment::I]) / i0;
        s.i_rate_error = relative_error(s.i_rate, report.i_rate_limit);
        s.si_rate_error = relative_error(s.si_rate, report.si_rate_limit);
        s.i_accel_error = relative_error(s.i_accel, report.i_accel_limit);
        report.samples.push_back(s);
    }

    // Values within rounding of zero sit on a boundary and agree with either side.
    const double tol = 1e-9 * (1.0 + beta * k * k + (gamma + p) * k + gamma);
    auto positive = [tol](double x) { return x > tol; };
    auto nonpositive = [tol](double x) { return x < tol; };
    auto negative = [tol](double x) { return x < -tol; };
    auto agrees = [tol](double numeric, double limit) {
        return std::abs(numeric) <= tol || std::abs(limit) <= tol || sign(numeric) == sign(limit);
    };

    const auto& last = report.samples.back();
    const bool numeric_matches_limits = agrees(last.i_rate, report.i_rate_limit) &&
                                        agrees(last.si_rate, report.si_rate_limit) &&
                                        agrees(last.i_accel, report.i_accel_limit);
    bool region_matches = false;
    switch (report.region) {
        case Region::I: region_matches = nonpositive(last.i_rate); break;
        case Region::II:
            region_matches = positive(last.i_rate) && !negative(last.si_rate) && nonpositive(last.i_accel);
            break;
        case Region::III:
            region_matches = positive(last.i_rate) && nonpositive(last.si_rate) && nonpositive(last.i_accel);
            break;
        case Region::IV:
            region_matches = positive(last.i_rate) && positive(last.si_rate) && !negative(last.i_accel);
            break;
    }
    report.signs_agree = numeric_matches_limits && region_matches;
    return report;
}

}  // namespace netsir
