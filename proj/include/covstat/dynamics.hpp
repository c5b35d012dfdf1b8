#ifndef COVSTAT_DYNAMICS_HPP
#define COVSTAT_DYNAMICS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "covstat/four_vector.hpp"
#include "covstat/linalg.hpp"

namespace covstat {

/// One particle of the extended phase space: position and momentum 4-vectors
/// plus rest mass.
struct Particle {
    FourVector q;
    FourVector p;
    double mass = 1.0;
};

/// N particles plus the global scalar evolution parameter tau.
struct SystemState {
    std::vector<Particle> particles;
    double tau = 0.0;

    std::size_t size() const { return particles.size(); }
};

/// Generalized Lennard-Jones tuning parameters: kappa an energy, sigma a length.
struct LennardJonesParams {
    double kappa = 0.0;
    double sigma = 0.0;
};

enum class ModelKind {
    PerfectSimple,    // free on-shell constraints + lab-time fixations q_i^0 = tau
    PerfectCovariant, // free on-shell constraints + proper-time fixations p.q/m = tau
    RealGas           // interacting on-shell constraints + pair/global time fixations
};

/// Constraint model selector. RealGas requires Lennard-Jones parameters;
/// the perfect models forbid them.
struct GasModel {
    ModelKind kind = ModelKind::PerfectCovariant;
    std::optional<LennardJonesParams> lj;

    static GasModel perfect_simple() { return {ModelKind::PerfectSimple, std::nullopt}; }
    static GasModel perfect_covariant() { return {ModelKind::PerfectCovariant, std::nullopt}; }
    static GasModel real_gas(LennardJonesParams p) { return {ModelKind::RealGas, p}; }

    void validate() const;
    bool is_perfect() const { return kind != ModelKind::RealGas; }
};

/// A scalar function on the extended phase space exposing analytic gradients
/// with respect to every contravariant component q_i^mu, p_i^mu. Gradient
/// vectors hold plain partial derivatives; the Poisson bracket applies the
/// metric between them.
class PhaseFunction {
public:
    virtual ~PhaseFunction() = default;
    virtual double value(const SystemState& s) const = 0;
    virtual FourVector grad_q(const SystemState& s, std::size_t particle) const = 0;
    virtual FourVector grad_p(const SystemState& s, std::size_t particle) const = 0;
    /// Explicit dependence on the evolution parameter (d/dtau at fixed phase point).
    virtual double d_tau(const SystemState&) const { return 0.0; }
};

/// {A, B} = sum_i (dA/dp_i^mu dB/dq_i_mu - dA/dq_i^mu dB/dp_i_mu),
/// indices contracted with the (+,-,-,-) metric. Antisymmetric.
double poisson_bracket(const PhaseFunction& a, const PhaseFunction& b, const SystemState& s);

/// Invariant energy E = U.P for a fixed observer 4-velocity U, as a phase
/// function (the argument of the canonical weight). Useful for probing the
/// equilibrium condition sum_i lambda_i {E, psi_i} = 0 numerically.
std::unique_ptr<PhaseFunction> invariant_energy(const FourVector& u);

/// The model's ordered constraint set:
///   perfect gas: [phi_1..phi_N, chi_1..chi_N]
///   real gas:    [phi_1..phi_N, chi_1..chi_{N-1}, chi_global]
/// phi_i = (p_i^2 - m_i^2 [- V_i]) / (2 m_i); chi per the model's time fixation.
std::vector<std::unique_ptr<PhaseFunction>> constraint_set(const GasModel& model, std::size_t n);

/// Residuals of all 2N constraints at the given state.
std::vector<double> constraint_values(const GasModel& model, const SystemState& s);

/// Largest absolute constraint residual.
double max_constraint_residual(const GasModel& model, const SystemState& s);

/// Bracket matrix governing the multiplier solve, with its condition number.
/// Perfect gas: N x N with entries {phi_i, chi_j} (diagonal in structure).
/// Real gas: the full antisymmetric 2N x 2N matrix {psi_a, psi_b} over the
/// ordered set [phi..., chi..., chi_global].
struct CMatrix {
    Matrix m;
    double condition_number = 0.0;
    bool near_singular = false; // condition number > 1e12
};
CMatrix c_matrix(const GasModel& model, const SystemState& s);

/// Lagrange multipliers of the Dirac Hamiltonian H = sum_a lambda_a psi_a,
/// fixed by the consistency conditions d psi_j / d tau = 0:
///   sum_a lambda_a {psi_a, psi_j} = -d psi_j/d tau  for every constraint j.
/// Perfect gas: N multipliers (H contains only the phi's); reproduces the
/// closed forms m_i/p_i^0 (simple fixation) and m_i^2/p_i^2 (covariant).
/// Real gas: 2N-1 multipliers (the global time fixation is not in H); the
/// solve runs over the full antisymmetric matrix and the consistency of the
/// overdetermined system is checked.
std::vector<double> multipliers(const GasModel& model, const SystemState& s);

/// tau-derivatives of every q_i^mu and p_i^mu generated by the Dirac
/// Hamiltonian (index raised with the metric).
struct Flow {
    std::vector<FourVector> dq;
    std::vector<FourVector> dp;
};
Flow flow_derivatives(const GasModel& model, const SystemState& s);

/// One classical RK4 step of size dtau followed by Newton projection back
/// onto the constraint manifold.
SystemState step(const GasModel& model, const SystemState& s, double dtau);

/// Newton iteration adjusting only the time components (p_i^0, q_i^0) until
/// every constraint residual is below 1e-12 (at most 20 iterations).
/// Spatial components are untouched.
SystemState project(const GasModel& model, const SystemState& s);

/// Lorentz-invariant squared transverse distance of the pair (i, j):
///   qT^2 = q_ij^2 - (q_ij . p_ij)^2 / p_ij^2,
/// q_ij the coordinate difference and p_ij the momentum sum. Spacelike
/// (negative) for causally ordinary configurations.
double transverse_distance_sq(std::size_t i, std::size_t j, const SystemState& s);

/// Generalized Lennard-Jones pair term
///   V_ij = 2 m_i kappa [ (sigma/r_T)^12 - (sigma/r_T)^6 ],  r_T = sqrt(-qT^2),
/// with its partial derivatives w.r.t. all eight position/momentum components
/// of the pair. Configurations with qT^2 >= 0 are rejected as causally
/// degenerate; separations below 1e-6 sigma trip the overflow guard.
struct LjEval {
    double value = 0.0;
    FourVector grad_qi, grad_qj, grad_pi, grad_pj;
};
LjEval lj_tilde(std::size_t i, std::size_t j, const SystemState& s, const LennardJonesParams& params);

/// Causal scalar weight of the pair time fixations:
///   w_ij = (sigma^2 / q_ij^2) e^{q_ij^2 / sigma^2}.
/// Negative for spacelike separations (the prefactor keeps its sign) and
/// vanishing as the separation grows. Lightlike separations are singular.
double weighting(std::size_t i, std::size_t j, const SystemState& s, double sigma);

/// Deterministic initial state on the constraint manifold at tau = tau0:
/// spatial positions uniform in a cube of side `box`, spatial momenta
/// Gaussian with scale momentum_scale, time components solved from the
/// model's constraints. All particles carry the same `mass`.
SystemState init_state(const GasModel& model, int n, std::uint64_t seed, double box, double momentum_scale,
                       double tau0, double mass = 1.0);

/// All positions and momenta boosted by the same velocity; tau (a scalar)
/// is unchanged.
SystemState boosted(const SystemState& s, const Vec3& velocity);

} // namespace covstat

#endif // COVSTAT_DYNAMICS_HPP
