#ifndef COVSTAT_THERMO_HPP
#define COVSTAT_THERMO_HPP

#include "covstat/partition.hpp"

namespace covstat {

/// Canonical-ensemble state variables for one (gas, approach, temperature)
/// triple. Natural units with k = 1: entropy and specific heat are per k,
/// energies in the gas's mass units.
struct ThermoReport {
    double free_energy = 0.0;   // F
    double entropy = 0.0;       // S / k
    double pressure = 0.0;      // P
    double avg_energy = 0.0;    // <E>
    double specific_heat = 0.0; // c_V / k
    double y_over_m3 = 0.0;
    double ln_z = 0.0;
    double beta_m = 0.0;
    Approach approach = Approach::FullCovariant;
    bool rest_mass_subtracted = false;
};

/// Dimensionless derivative of ln Y with respect to beta:
///   derivative_order 1:  (1/m)   d ln Y / d beta   = d ln Y / d(beta m)
///   derivative_order 2:  (1/m^2) d^2 ln Y / d beta^2
/// Primary method: moment quadrature (differentiation under the integral,
/// which for the second derivative is an energy variance and hence >= 0).
/// A central-difference evaluation with Richardson extrapolation cross-checks
/// every call; disagreement beyond 1e-4 relative raises accuracy_error.
double d_ln_y_dbeta(Approach approach, double beta_m, int order, int derivative_order);

/// Full thermodynamic report from the canonical partition integral:
///   F   = -N k T (ln(V/N) + ln Y - beta m + 1)
///   S   =  N k   (ln(V/N) + ln Y - beta dlnY/dbeta + 1)
///   P   =  N k T / V
///   <E> =  N (m - dlnY/dbeta)
///   c_V = (N beta / T) d^2 lnY / dbeta^2
/// The non-relativistic approach carries no rest-mass terms (its energies
/// are counted from the rest mass). With subtract_rest_mass the same
/// convention is applied to the relativistic approaches: <E> drops N m and
/// F gains N m; S, P and c_V are unchanged.
ThermoReport thermo_report(const GasSpec& gas, Approach approach, double temperature, const QuadratureRule& rule,
                           bool subtract_rest_mass = false);

/// Ultra-relativistic closed forms (exact in the beta m -> 0 limit):
/// per-approach constants c = 1, 2, 3 for full covariant / semi-covariant /
/// Juttner give <E> = c N k T and c_V = c N k, with
///   F = -N k T [ln(V/N) + ln(4 pi m^3 or 8 pi m^3) - c ln(beta m) + 1]
///   S =  N k   [ln(V/N) + ln(4 pi m^3 or 8 pi m^3) - c ln(beta m) + 1 + c]
/// Defined only for the three relativistic approaches.
ThermoReport table1_closed_forms(Approach approach, const GasSpec& gas, double temperature);

} // namespace covstat

#endif // COVSTAT_THERMO_HPP
