#ifndef COVSTAT_PARTITION_HPP
#define COVSTAT_PARTITION_HPP

#include <string>

#include "covstat/specfun.hpp"

namespace covstat {

/// The four phase-space treatments of the monatomic perfect gas.
enum class Approach { FullCovariant, SemiCovariant, Juttner, NonRelativistic };

const char* approach_name(Approach a);

/// Monatomic perfect gas: N identical particles of rest mass m in rest-frame
/// volume V. Natural units (hbar = c = k = 1) throughout the core.
struct GasSpec {
    int n_particles = 1;
    double mass = 1.0;   // energy units
    double volume = 1.0; // length^3 units

    void validate() const;
};

/// Result of a quadrature evaluation with an order-doubling convergence check.
struct YResult {
    double value = 0.0;
    bool converged = true;
    double order_doubling_change = 0.0; // |y(2n)/y(n) - 1|
    int comparison_order = 0;
};

/// The per-particle factor Y of the canonical partition integral,
///   Z_C = (V^N / N!) (e^{-beta m} Y)^N,
/// returned as the dimensionless Y/m^3. Closed forms are used where they
/// exist (semi-covariant and Juttner via K_1/K_2, non-relativistic power
/// law); the full covariant integral is evaluated by the Gauss-Laguerre rule.
/// The quadrature switches variable maps at beta_m = 1, leaving a seam there
/// at the level of the discretization error (~1e-10 at order 64) -- relevant
/// only to finite-difference stencils tighter than that.
double y_over_m3(Approach approach, double beta_m, const QuadratureRule& rule);

/// Same quantity, with every relativistic approach evaluated by the
/// Gauss-Laguerre rule (no Bessel shortcut). Used to validate the numerical
/// method against the closed forms. NonRelativistic has no integral form.
double y_over_m3_quadrature(Approach approach, double beta_m, const QuadratureRule& rule);

/// y_over_m3 plus an order-doubling convergence check on the quadrature path.
/// converged == false means the doubled-order value moved by more than 1e-8
/// relative (an accuracy warning, not an error).
YResult y_over_m3_checked(Approach approach, double beta_m, const QuadratureRule& rule);

/// ln Z_C evaluated fully in log space:
///   relativistic approaches:  N ln V - ln Gamma(N+1) + N (ln Y - beta m)
///   non-relativistic:         N ln V - ln Gamma(N+1) + N ln Y
/// (the non-relativistic partition integral carries no rest-mass factor;
/// its energies are counted from the rest mass).
double ln_z_canonical(const GasSpec& gas, Approach approach, double beta, const QuadratureRule& rule);

/// Ultra-relativistic closed forms of Y/m^3 (the beta m -> 0 limit):
///   full covariant  e^{beta m} 4 pi / (beta m)
///   semi-covariant  e^{beta m} 4 pi / (beta m)^2
///   Juttner         e^{beta m} 8 pi / (beta m)^3
/// No such limit exists for the non-relativistic approach (domain error).
double y_ultra_relativistic(Approach approach, double beta_m);

/// Low-temperature asymptotics of Y/m^3 (leading order plus first
/// correction from the large-argument Bessel expansion):
///   semi-covariant  (2 pi / b)^{3/2} (1 + 3/(8b))
///   Juttner         (2 pi / b)^{3/2} (1 + 15/(8b))
///   full covariant  (2 pi / b)^{3/2}   (leading order; the limits coincide)
/// Requires beta_m >= 10.
double y_nonrel_asymptotic(Approach approach, double beta_m);

namespace detail {

/// Variable mapping used to express the momentum integral as
/// integral_0^inf e^{-t} F(t) dt with F smooth, so a Gauss-Laguerre rule
/// converges spectrally over the whole beta*m range.
enum class LaguerreMap {
    Rapidity, // t = xi + b (cosh xi - 1), xi the rapidity; best for b <= 1
    Momentum, // t = b * (rho/m);                           best for b  > 1
    Auto      // pick by b
};

/// Moments M_k = integral f(rho) (E/m)^k e^{-b (E/m - 1)} drho/m, k = 0..kmax,
/// where f selects the approach's integrand family. M_0 * 4 pi = Y/m^3 * e^0.
struct Moments {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};

Moments laguerre_moments(Approach approach, double beta_m, const QuadratureRule& rule, int kmax,
                         LaguerreMap map = LaguerreMap::Auto);

} // namespace detail

} // namespace covstat

#endif // COVSTAT_PARTITION_HPP
