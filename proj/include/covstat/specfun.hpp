#ifndef COVSTAT_SPECFUN_HPP
#define COVSTAT_SPECFUN_HPP

#include <cmath>
#include <sstream>
#include <vector>

#include "covstat/errors.hpp"

namespace covstat {

/// Nodes and weights for Gauss-Laguerre integration against the weight e^{-x}
/// on (0, inf). Immutable after construction; safe to share across threads.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;       // strictly increasing, all > 0
    std::vector<double> weights;     // all > 0, sum to 1
    std::vector<double> log_weights; // ln(weights), for overflow-free products
};

/// Build the Gauss-Laguerre rule of the given order (1..128).
/// Nodes are the roots of the Laguerre polynomial L_n, found by Newton
/// iteration in extended precision; weights follow from the derivative at
/// the root. Integrates polynomials up to degree 2n-1 exactly.
QuadratureRule gauss_laguerre_rule(int order);

/// Sum_i w_i f(x_i), approximating the integral of e^{-x} f(x) over (0, inf).
template <class F>
double integrate_laguerre(F&& f, const QuadratureRule& rule) {
    double acc = 0.0;
    for (int i = 0; i < rule.order; ++i) {
        const double fx = f(rule.nodes[i]);
        if (!std::isfinite(fx)) {
            std::ostringstream msg;
            msg << "integrate_laguerre: non-finite integrand at node x = " << rule.nodes[i];
            throw evaluation_error(msg.str());
        }
        acc += rule.weights[i] * fx;
    }
    return acc;
}

/// Modified Bessel function K_n(x) for n in {0,1,2}, x > 0, evaluated from
/// the integral over the rapidity-like variable:
///   K_n(x) = integral_0^inf e^{-x cosh(s)} cosh(n s) ds
/// by panel-based Gauss-Legendre. Relative accuracy <= 1e-10 on [1e-2, 700].
/// For x large enough that e^{-x} underflows the result is 0 and
/// *underflowed (if given) is set.
double bessel_k(int n, double x, bool* underflowed = nullptr);

/// Exponentially scaled variant e^{x} K_n(x); valid for the full x range.
double bessel_k_scaled(int n, double x);

/// ln Gamma(x) for x > 0 (Lanczos evaluation, relative accuracy <= 1e-12).
double ln_gamma(double x);

} // namespace covstat

#endif // COVSTAT_SPECFUN_HPP
