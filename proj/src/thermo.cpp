#include "covstat/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace covstat {

namespace {

using detail::LaguerreMap;

// ln(Y/m^3) by quadrature with a fixed variable map, so finite-difference
// stencils never straddle the map switch.
double ln_y_fixed_map(Approach a, double b, const QuadratureRule& rule, LaguerreMap map) {
    if (a == Approach::NonRelativistic) return 1.5 * std::log(2.0 * M_PI / b);
    const detail::Moments m = detail::laguerre_moments(a, b, rule, 0, map);
    return std::log(4.0 * M_PI * m.m0);
}

// d ln Y / d b by central differences with one Richardson step.
double fd_first(Approach a, double b, const QuadratureRule& rule, LaguerreMap map) {
    const double h = b * 1e-5;
    auto diff = [&](double hh) {
        return (ln_y_fixed_map(a, b + hh, rule, map) - ln_y_fixed_map(a, b - hh, rule, map)) / (2.0 * hh);
    };
    const double d1 = diff(h);
    const double d2 = diff(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

// d^2 ln Y / d b^2, central second difference with one Richardson step.
// A larger step than the first derivative's: at h ~ 1e-5 b the second
// difference is dominated by rounding of ln Y and cannot reach the 1e-6
// agreement bound.
double fd_second(Approach a, double b, const QuadratureRule& rule, LaguerreMap map) {
    const double h = b * 2e-4;
    auto diff = [&](double hh) {
        const double f0 = ln_y_fixed_map(a, b, rule, map);
        const double fp = ln_y_fixed_map(a, b + hh, rule, map);
        const double fm = ln_y_fixed_map(a, b - hh, rule, map);
        return (fp - 2.0 * f0 + fm) / (hh * hh);
    };
    const double d1 = diff(h);
    const double d2 = diff(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

double d_ln_y_dbeta(Approach approach, double beta_m, int order, int derivative_order) {
    if (!(beta_m > 0.0)) throw std::domain_error("d_ln_y_dbeta: beta_m must be > 0");
    if (derivative_order != 1 && derivative_order != 2)
        throw std::domain_error("d_ln_y_dbeta: derivative_order must be 1 or 2");

    const double b = beta_m;
    if (approach == Approach::NonRelativistic) {
        // Y/m^3 = (2 pi / b)^{3/2}: the derivatives are exact power laws.
        return derivative_order == 1 ? -1.5 / b : 1.5 / (b * b);
    }

    const QuadratureRule rule = gauss_laguerre_rule(order);
    const LaguerreMap map = b <= 1.0 ? LaguerreMap::Rapidity : LaguerreMap::Momentum;
    const detail::Moments m = detail::laguerre_moments(approach, b, rule, 2, map);
    const double mean_energy = m.m1 / m.m0; // <E/m> under the canonical weight
    // ln Y = b + ln(integral): d/db brings down -(E/m), plus the extracted e^{b}.
    const double moment_value =
        derivative_order == 1 ? 1.0 - mean_energy : m.m2 / m.m0 - mean_energy * mean_energy;

    const double fd_value =
        derivative_order == 1 ? fd_first(approach, b, rule, map) : fd_second(approach, b, rule, map);

    const double scale = std::max({std::fabs(moment_value), std::fabs(fd_value), 1e-300});
    const double disagreement = std::fabs(moment_value - fd_value) / scale;
    if (disagreement > 1e-4) {
        std::ostringstream msg;
        msg << "d_ln_y_dbeta: moment and finite-difference routes disagree by " << disagreement
            << " (approach " << approach_name(approach) << ", beta_m " << b << ", order " << order
            << ", derivative " << derivative_order << ")";
        throw accuracy_error(msg.str());
    }
    return moment_value;
}

ThermoReport thermo_report(const GasSpec& gas, Approach approach, double temperature, const QuadratureRule& rule,
                           bool subtract_rest_mass) {
    gas.validate();
    if (!(temperature > 0.0)) throw std::domain_error("thermo_report: temperature must be > 0");

    const double n = gas.n_particles;
    const double m = gas.mass;
    const double v = gas.volume;
    const double t = temperature;
    const double beta = 1.0 / t;
    const double b = beta * m;

    const double y = y_over_m3(approach, b, rule);
    const double ln_y = std::log(y) + 3.0 * std::log(m);
    // Derivatives carry their own moment-vs-difference cross-check, which a
    // low-order rule cannot pass; floor their order independently of the
    // order used for Y itself.
    const int d_order = std::max(rule.order, 64);
    const double dlny_dbeta = m * d_ln_y_dbeta(approach, b, d_order, 1);
    const double d2lny_dbeta2 = m * m * d_ln_y_dbeta(approach, b, d_order, 2);

    const bool relativistic = approach != Approach::NonRelativistic;
    const double rest_term = relativistic ? b : 0.0;

    ThermoReport rep;
    rep.approach = approach;
    rep.beta_m = b;
    rep.y_over_m3 = y;
    rep.ln_z = ln_z_canonical(gas, approach, beta, rule);
    rep.free_energy = -n * t * (std::log(v / n) + ln_y - rest_term + 1.0);
    rep.entropy = n * (std::log(v / n) + ln_y - beta * dlny_dbeta + 1.0);
    rep.pressure = n * t / v;
    rep.avg_energy = n * ((relativistic ? m : 0.0) - dlny_dbeta);
    rep.specific_heat = n * beta * beta * d2lny_dbeta2;

    if (subtract_rest_mass && relativistic) {
        rep.avg_energy -= n * m;
        rep.free_energy += n * m;
        rep.rest_mass_subtracted = true;
    }
    rep.rest_mass_subtracted |= !relativistic;
    return rep;
}

ThermoReport table1_closed_forms(Approach approach, const GasSpec& gas, double temperature) {
    gas.validate();
    if (!(temperature > 0.0)) throw std::domain_error("table1_closed_forms: temperature must be > 0");
    if (approach == Approach::NonRelativistic)
        throw std::domain_error("table1_closed_forms: no ultra-relativistic limit for the non-relativistic approach");

    const double n = gas.n_particles;
    const double m = gas.mass;
    const double v = gas.volume;
    const double t = temperature;
    const double b = m / t;

    double coef = 0.0;
    double ln_const = 0.0; // ln(4 pi m^3) or ln(8 pi m^3)
    switch (approach) {
        case Approach::FullCovariant:
            coef = 1.0;
            ln_const = std::log(4.0 * M_PI) + 3.0 * std::log(m);
            break;
        case Approach::SemiCovariant:
            coef = 2.0;
            ln_const = std::log(4.0 * M_PI) + 3.0 * std::log(m);
            break;
        case Approach::Juttner:
            coef = 3.0;
            ln_const = std::log(8.0 * M_PI) + 3.0 * std::log(m);
            break;
        default: break;
    }

    ThermoReport rep;
    rep.approach = approach;
    rep.beta_m = b;
    rep.y_over_m3 = y_ultra_relativistic(approach, b);
    // bracket of the limiting partition integral: ln = ln_const - coef ln(beta m)
    rep.ln_z = n * std::log(v) - ln_gamma(n + 1.0) + n * (ln_const - coef * std::log(b));
    rep.free_energy = -n * t * (std::log(v / n) + ln_const - coef * std::log(b) + 1.0);
    rep.entropy = n * (std::log(v / n) + ln_const - coef * std::log(b) + 1.0 + coef);
    rep.avg_energy = coef * n * t;
    rep.specific_heat = coef * n;
    rep.pressure = n * t / v;
    return rep;
}

} // namespace covstat
