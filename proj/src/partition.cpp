#include "covstat/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covstat {

const char* approach_name(Approach a) {
    switch (a) {
        case Approach::FullCovariant: return "full_covariant";
        case Approach::SemiCovariant: return "semi_covariant";
        case Approach::Juttner: return "juttner";
        case Approach::NonRelativistic: return "non_relativistic";
    }
    return "?";
}

void GasSpec::validate() const {
    if (n_particles < 1) throw std::domain_error("GasSpec: n_particles must be >= 1");
    if (!(mass > 0.0)) throw std::domain_error("GasSpec: mass must be > 0");
    if (!(volume > 0.0)) throw std::domain_error("GasSpec: volume must be > 0");
}

namespace detail {

namespace {

// Integrand family of each approach as a function of the rapidity xi
// (rho = m sinh xi, E = m cosh xi):
//   semi-covariant  rho^2 / E      -> sinh^2 xi
//   Juttner         rho^2          -> sinh^2 xi cosh xi
//   full covariant  rho^2 / E^2    -> sinh^2 xi / cosh xi
// all against e^{-b (cosh xi - 1)} d xi after extracting e^{-b}.
double family_rapidity(Approach a, double sh, double ch) {
    switch (a) {
        case Approach::SemiCovariant: return sh * sh;
        case Approach::Juttner: return sh * sh * ch;
        case Approach::FullCovariant: return sh * sh / ch;
        default: break;
    }
    throw std::domain_error("laguerre_moments: no integrand family for the non-relativistic approach");
}

// Solve t = xi + b (cosh xi - 1) for xi >= 0 (monotone; Newton).
double rapidity_of(double t, double b) {
    if (t <= 0.0) return 0.0;
    double xi = std::min(t, std::log(2.0 * (t + b) / b + 2.0));
    for (int it = 0; it < 100; ++it) {
        const double f = xi + b * (std::cosh(xi) - 1.0) - t;
        const double fp = 1.0 + b * std::sinh(xi);
        const double d = f / fp;
        xi -= d;
        if (xi < 0.0) xi = 1e-16;
        if (std::fabs(d) <= 1e-15 * (1.0 + std::fabs(xi))) return xi;
    }
    throw accuracy_error("laguerre_moments: rapidity map inversion did not converge");
}

} // namespace

Moments laguerre_moments(Approach approach, double beta_m, const QuadratureRule& rule, int kmax, LaguerreMap map) {
    if (!(beta_m > 0.0)) throw std::domain_error("laguerre_moments: beta_m must be > 0");
    if (map == LaguerreMap::Auto) map = beta_m <= 1.0 ? LaguerreMap::Rapidity : LaguerreMap::Momentum;

    Moments m;
    const double b = beta_m;
    for (int i = 0; i < rule.order; ++i) {
        const double t = rule.nodes[i];
        const double lw = rule.log_weights[i];
        double base;   // w_i * f * e^{-b (E/m - 1)} * Jacobian, overflow-free
        double energy; // E/m at the node
        if (map == LaguerreMap::Rapidity) {
            const double xi = rapidity_of(t, b);
            const double sh = std::sinh(xi);
            const double ch = std::cosh(xi);
            // d xi/dt = 1/(1 + b sinh xi); e^{-b (cosh xi - 1)} = e^{xi - t},
            // and ln w_i ~ -t_i, so the exponent xi + ln w_i cannot overflow.
            base = family_rapidity(approach, sh, ch) * std::exp(xi + lw) / (1.0 + b * sh);
            energy = ch;
        } else {
            // t = b rho/m; sinh xi = rho/m and cosh xi = E/m exactly, and
            // d rho = E d xi absorbs one factor of the energy.
            const double rho = t / b;
            energy = std::sqrt(rho * rho + 1.0);
            base = family_rapidity(approach, rho, energy) / energy * std::exp(t - b * (energy - 1.0) + lw) / b;
        }
        if (!std::isfinite(base)) throw evaluation_error("laguerre_moments: non-finite integrand contribution");
        m.m0 += base;
        if (kmax >= 1) m.m1 += base * energy;
        if (kmax >= 2) m.m2 += base * energy * energy;
    }
    return m;
}

} // namespace detail

namespace {

double y_quadrature_impl(Approach approach, double beta_m, const QuadratureRule& rule,
                         detail::LaguerreMap map = detail::LaguerreMap::Auto) {
    const detail::Moments m = detail::laguerre_moments(approach, beta_m, rule, 0, map);
    return 4.0 * M_PI * m.m0;
}

} // namespace

double y_over_m3_quadrature(Approach approach, double beta_m, const QuadratureRule& rule) {
    if (!(beta_m > 0.0)) throw std::domain_error("y_over_m3_quadrature: beta_m must be > 0");
    if (approach == Approach::NonRelativistic)
        throw std::domain_error("y_over_m3_quadrature: the non-relativistic Y has no integral form");
    return y_quadrature_impl(approach, beta_m, rule);
}

double y_over_m3(Approach approach, double beta_m, const QuadratureRule& rule) {
    if (!(beta_m > 0.0)) throw std::domain_error("y_over_m3: beta_m must be > 0");
    const double b = beta_m;
    switch (approach) {
        case Approach::SemiCovariant: return 4.0 * M_PI * bessel_k_scaled(1, b) / b;
        case Approach::Juttner: return 4.0 * M_PI * bessel_k_scaled(2, b) / b;
        case Approach::NonRelativistic: return std::pow(2.0 * M_PI / b, 1.5);
        case Approach::FullCovariant: return y_quadrature_impl(approach, b, rule);
    }
    throw std::domain_error("y_over_m3: unknown approach");
}

YResult y_over_m3_checked(Approach approach, double beta_m, const QuadratureRule& rule) {
    YResult r;
    r.value = y_over_m3(approach, beta_m, rule);
    if (approach == Approach::FullCovariant) {
        // at the top order, compare downwards instead (the difference still
        // estimates the discretization error)
        r.comparison_order = rule.order < 128 ? std::min(2 * rule.order, 128) : 96;
        const QuadratureRule other = gauss_laguerre_rule(r.comparison_order);
        const double y2 = y_quadrature_impl(approach, beta_m, other);
        r.order_doubling_change = std::fabs(y2 / r.value - 1.0);
        r.converged = r.order_doubling_change <= 1e-8;
    } else {
        r.comparison_order = rule.order;
        r.order_doubling_change = 0.0;
        r.converged = true;
    }
    return r;
}

double ln_z_canonical(const GasSpec& gas, Approach approach, double beta, const QuadratureRule& rule) {
    gas.validate();
    if (!(beta > 0.0)) throw std::domain_error("ln_z_canonical: beta must be > 0");
    const double b = beta * gas.mass;
    const double n = gas.n_particles;
    const double ln_y = std::log(y_over_m3(approach, b, rule)) + 3.0 * std::log(gas.mass);
    const double rest_mass_term = approach == Approach::NonRelativistic ? 0.0 : b;
    return n * std::log(gas.volume) - ln_gamma(n + 1.0) + n * (ln_y - rest_mass_term);
}

double y_ultra_relativistic(Approach approach, double beta_m) {
    if (!(beta_m > 0.0)) throw std::domain_error("y_ultra_relativistic: beta_m must be > 0");
    const double b = beta_m;
    switch (approach) {
        case Approach::FullCovariant: return std::exp(b) * 4.0 * M_PI / b;
        case Approach::SemiCovariant: return std::exp(b) * 4.0 * M_PI / (b * b);
        case Approach::Juttner: return std::exp(b) * 8.0 * M_PI / (b * b * b);
        case Approach::NonRelativistic:
            throw std::domain_error("y_ultra_relativistic: no ultra-relativistic limit for the non-relativistic approach");
    }
    throw std::domain_error("y_ultra_relativistic: unknown approach");
}

double y_nonrel_asymptotic(Approach approach, double beta_m) {
    if (!(beta_m >= 10.0)) throw std::domain_error("y_nonrel_asymptotic: requires beta_m >= 10");
    const double b = beta_m;
    const double leading = std::pow(2.0 * M_PI / b, 1.5);
    switch (approach) {
        case Approach::SemiCovariant: return leading * (1.0 + 3.0 / (8.0 * b));
        case Approach::Juttner: return leading * (1.0 + 15.0 / (8.0 * b));
        case Approach::FullCovariant: return leading;
        case Approach::NonRelativistic: return leading;
    }
    throw std::domain_error("y_nonrel_asymptotic: unknown approach");
}

} // namespace covstat
