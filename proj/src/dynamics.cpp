#include "covstat/dynamics.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace covstat {

void GasModel::validate() const {
    if (kind == ModelKind::RealGas) {
        if (!lj) throw std::domain_error("GasModel: RealGas requires Lennard-Jones parameters");
        if (!(lj->kappa > 0.0) || !(lj->sigma > 0.0))
            throw std::domain_error("GasModel: Lennard-Jones parameters must be > 0");
    } else if (lj) {
        throw std::domain_error("GasModel: perfect-gas models take no interaction parameters");
    }
}

namespace {

// Pair kinematics entering the interacting constraints, with the partial
// derivatives of the squared transverse distance. Derivatives w.r.t. the
// second particle follow by sign: d/dq_j = -d/dq_i, d/dp_j = +d/dp_i.
struct PairGeometry {
    FourVector q_ij, p_ij;
    double s = 0.0;   // q_ij^2
    double w = 0.0;   // q_ij . p_ij
    double p2 = 0.0;  // p_ij^2
    double qt2 = 0.0; // transverse squared distance
    FourVector dqt2_dqi, dqt2_dpi;
};

PairGeometry pair_geometry(const SystemState& st, std::size_t i, std::size_t j) {
    PairGeometry g;
    g.q_ij = st.particles[i].q - st.particles[j].q;
    g.p_ij = st.particles[i].p + st.particles[j].p;
    g.s = dot(g.q_ij, g.q_ij);
    g.w = dot(g.q_ij, g.p_ij);
    g.p2 = dot(g.p_ij, g.p_ij);
    if (g.p2 == 0.0) {
        std::ostringstream msg;
        msg << "pair (" << i << ", " << j << "): lightlike total momentum, p_ij^2 = 0";
        throw evaluation_error(msg.str());
    }
    g.qt2 = g.s - g.w * g.w / g.p2;
    const FourVector lq = lower(g.q_ij);
    const FourVector lp = lower(g.p_ij);
    g.dqt2_dqi = lq * 2.0 - lp * (2.0 * g.w / g.p2);
    g.dqt2_dpi = lq * (-2.0 * g.w / g.p2) + lp * (2.0 * g.w * g.w / (g.p2 * g.p2));
    return g;
}

// Lennard-Jones value and derivative w.r.t. qT^2, in terms of
// y = sigma^2 / r_T^2 = -sigma^2 / qT^2:
//   V = 2 m_i kappa (y^6 - y^3),  dV/dqT^2 = (2 m_i kappa / sigma^2)(6 y^7 - 3 y^4)
struct LjCore {
    double value = 0.0;
    double dv_dqt2 = 0.0;
};

LjCore lj_core(double qt2, double m_i, const LennardJonesParams& lj) {
    if (qt2 >= 0.0)
        throw evaluation_error("lj_tilde: non-spacelike transverse separation (qT^2 >= 0) is causally degenerate");
    const double rt2 = -qt2;
    const double floor = 1e-6 * lj.sigma;
    if (rt2 < floor * floor)
        throw evaluation_error("lj_tilde: transverse separation below the overflow floor of 1e-6 sigma");
    const double y = lj.sigma * lj.sigma / rt2;
    const double y3 = y * y * y;
    LjCore c;
    c.value = 2.0 * m_i * lj.kappa * (y3 * y3 - y3);
    c.dv_dqt2 = 2.0 * m_i * lj.kappa / (lj.sigma * lj.sigma) * (6.0 * y3 * y3 * y - 3.0 * y3 * y);
    return c;
}

void check_weight_domain(double u) {
    if (std::fabs(u) < 1e-12)
        throw evaluation_error("weighting: (near-)lightlike pair separation, q_ij^2 = 0");
    if (u > 700.0) throw evaluation_error("weighting: strongly timelike pair separation, weight overflows");
}

double weight_of(double s, double sigma) {
    const double u = s / (sigma * sigma);
    check_weight_domain(u);
    return std::exp(u) / u;
}

double dweight_ds(double s, double sigma) {
    const double s2 = sigma * sigma;
    check_weight_domain(s / s2);
    return std::exp(s / s2) * (1.0 / s - s2 / (s * s));
}

// --- constraint implementations ------------------------------------------

// phi_i = (p_i^2 - m_i^2) / (2 m_i)
class OnShellFree : public PhaseFunction {
public:
    explicit OnShellFree(std::size_t i) : i_(i) {}
    double value(const SystemState& s) const override {
        const Particle& pt = s.particles[i_];
        return (dot(pt.p, pt.p) - pt.mass * pt.mass) / (2.0 * pt.mass);
    }
    FourVector grad_q(const SystemState&, std::size_t) const override { return {}; }
    FourVector grad_p(const SystemState& s, std::size_t k) const override {
        if (k != i_) return {};
        const Particle& pt = s.particles[i_];
        return lower(pt.p) * (1.0 / pt.mass);
    }

private:
    std::size_t i_;
};

// phi_i = (p_i^2 - m_i^2 - sum_j V_ij(qT^2)) / (2 m_i)
class OnShellInteracting : public PhaseFunction {
public:
    OnShellInteracting(std::size_t i, LennardJonesParams lj) : i_(i), lj_(lj) {}
    double value(const SystemState& s) const override {
        const Particle& pt = s.particles[i_];
        double v = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j == i_) continue;
            v += lj_core(pair_geometry(s, i_, j).qt2, pt.mass, lj_).value;
        }
        return (dot(pt.p, pt.p) - pt.mass * pt.mass - v) / (2.0 * pt.mass);
    }
    FourVector grad_q(const SystemState& s, std::size_t k) const override {
        const double m = s.particles[i_].mass;
        FourVector g;
        if (k == i_) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (j == i_) continue;
                const PairGeometry pg = pair_geometry(s, i_, j);
                g += pg.dqt2_dqi * (-lj_core(pg.qt2, m, lj_).dv_dqt2 / (2.0 * m));
            }
        } else {
            const PairGeometry pg = pair_geometry(s, i_, k);
            g = pg.dqt2_dqi * (lj_core(pg.qt2, m, lj_).dv_dqt2 / (2.0 * m));
        }
        return g;
    }
    FourVector grad_p(const SystemState& s, std::size_t k) const override {
        const Particle& pt = s.particles[i_];
        FourVector g;
        if (k == i_) {
            g = lower(pt.p) * (1.0 / pt.mass);
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (j == i_) continue;
                const PairGeometry pg = pair_geometry(s, i_, j);
                g += pg.dqt2_dpi * (-lj_core(pg.qt2, pt.mass, lj_).dv_dqt2 / (2.0 * pt.mass));
            }
        } else {
            const PairGeometry pg = pair_geometry(s, i_, k);
            g = pg.dqt2_dpi * (-lj_core(pg.qt2, pt.mass, lj_).dv_dqt2 / (2.0 * pt.mass));
        }
        return g;
    }

private:
    std::size_t i_;
    LennardJonesParams lj_;
};

// chi_i = q_i^0 - tau
class SimpleTimeFix : public PhaseFunction {
public:
    explicit SimpleTimeFix(std::size_t i) : i_(i) {}
    double value(const SystemState& s) const override { return s.particles[i_].q.t - s.tau; }
    FourVector grad_q(const SystemState&, std::size_t k) const override {
        return k == i_ ? FourVector{1.0, 0.0, 0.0, 0.0} : FourVector{};
    }
    FourVector grad_p(const SystemState&, std::size_t) const override { return {}; }
    double d_tau(const SystemState&) const override { return -1.0; }

private:
    std::size_t i_;
};

// chi_i = p_i . q_i / m_i - tau   (proper times synchronized to tau)
class CovariantTimeFix : public PhaseFunction {
public:
    explicit CovariantTimeFix(std::size_t i) : i_(i) {}
    double value(const SystemState& s) const override {
        const Particle& pt = s.particles[i_];
        return dot(pt.p, pt.q) / pt.mass - s.tau;
    }
    FourVector grad_q(const SystemState& s, std::size_t k) const override {
        if (k != i_) return {};
        const Particle& pt = s.particles[i_];
        return lower(pt.p) * (1.0 / pt.mass);
    }
    FourVector grad_p(const SystemState& s, std::size_t k) const override {
        if (k != i_) return {};
        const Particle& pt = s.particles[i_];
        return lower(pt.q) * (1.0 / pt.mass);
    }
    double d_tau(const SystemState&) const override { return -1.0; }

private:
    std::size_t i_;
};

// chi_i = (1/m_i) sum_j w_ij (p_ij . q_ij), the pair time fixations keeping
// interacting particles' times aligned in their common CMS.
class PairTimeFix : public PhaseFunction {
public:
    PairTimeFix(std::size_t i, double sigma) : i_(i), sigma_(sigma) {}
    double value(const SystemState& s) const override {
        const double m = s.particles[i_].mass;
        double acc = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j == i_) continue;
            const PairGeometry pg = pair_geometry(s, i_, j);
            acc += weight_of(pg.s, sigma_) * pg.w;
        }
        return acc / m;
    }
    FourVector grad_q(const SystemState& s, std::size_t k) const override {
        const double m = s.particles[i_].mass;
        FourVector g;
        if (k == i_) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (j == i_) continue;
                const PairGeometry pg = pair_geometry(s, i_, j);
                g += lower(pg.q_ij) * (2.0 * dweight_ds(pg.s, sigma_) * pg.w) + lower(pg.p_ij) * weight_of(pg.s, sigma_);
            }
        } else {
            const PairGeometry pg = pair_geometry(s, i_, k);
            g = lower(pg.q_ij) * (-2.0 * dweight_ds(pg.s, sigma_) * pg.w) + lower(pg.p_ij) * (-weight_of(pg.s, sigma_));
        }
        return g * (1.0 / m);
    }
    FourVector grad_p(const SystemState& s, std::size_t k) const override {
        const double m = s.particles[i_].mass;
        FourVector g;
        if (k == i_) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (j == i_) continue;
                const PairGeometry pg = pair_geometry(s, i_, j);
                g += lower(pg.q_ij) * weight_of(pg.s, sigma_);
            }
        } else {
            const PairGeometry pg = pair_geometry(s, i_, k);
            g = lower(pg.q_ij) * weight_of(pg.s, sigma_);
        }
        return g * (1.0 / m);
    }

private:
    std::size_t i_;
    double sigma_;
};

// chi_N = P.Q / sqrt(P^2) - tau, the global time fixation defining tau as the
// invariant average time coordinate.
class GlobalTimeFix : public PhaseFunction {
public:
    double value(const SystemState& s) const override {
        FourVector p_tot, q_avg;
        for (const Particle& pt : s.particles) {
            p_tot += pt.p;
            q_avg += pt.q;
        }
        q_avg = q_avg * (1.0 / (double)s.size());
        const double p2 = dot(p_tot, p_tot);
        if (!(p2 > 0.0)) throw evaluation_error("global time fixation: total momentum is not timelike");
        return dot(p_tot, q_avg) / std::sqrt(p2) - s.tau;
    }
    FourVector grad_q(const SystemState& s, std::size_t) const override {
        FourVector p_tot;
        for (const Particle& pt : s.particles) p_tot += pt.p;
        const double p2 = dot(p_tot, p_tot);
        if (!(p2 > 0.0)) throw evaluation_error("global time fixation: total momentum is not timelike");
        return lower(p_tot) * (1.0 / ((double)s.size() * std::sqrt(p2)));
    }
    FourVector grad_p(const SystemState& s, std::size_t) const override {
        FourVector p_tot, q_avg;
        for (const Particle& pt : s.particles) {
            p_tot += pt.p;
            q_avg += pt.q;
        }
        q_avg = q_avg * (1.0 / (double)s.size());
        const double p2 = dot(p_tot, p_tot);
        if (!(p2 > 0.0)) throw evaluation_error("global time fixation: total momentum is not timelike");
        const double root = std::sqrt(p2);
        return lower(q_avg) * (1.0 / root) - lower(p_tot) * (dot(p_tot, q_avg) / (p2 * root));
    }
    double d_tau(const SystemState&) const override { return -1.0; }
};

class InvariantEnergyFn : public PhaseFunction {
public:
    explicit InvariantEnergyFn(FourVector u) : u_(u) {}
    double value(const SystemState& s) const override {
        double acc = 0.0;
        for (const Particle& pt : s.particles) acc += dot(u_, pt.p);
        return acc;
    }
    FourVector grad_q(const SystemState&, std::size_t) const override { return {}; }
    FourVector grad_p(const SystemState&, std::size_t) const override { return lower(u_); }

private:
    FourVector u_;
};

std::size_t hamiltonian_size(const GasModel& model, std::size_t n) {
    return model.is_perfect() ? n : 2 * n - 1;
}

} // namespace

double poisson_bracket(const PhaseFunction& a, const PhaseFunction& b, const SystemState& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += dot(a.grad_p(s, i), b.grad_q(s, i)) - dot(a.grad_q(s, i), b.grad_p(s, i));
    }
    return acc;
}

std::unique_ptr<PhaseFunction> invariant_energy(const FourVector& u) {
    return std::make_unique<InvariantEnergyFn>(u);
}

std::vector<std::unique_ptr<PhaseFunction>> constraint_set(const GasModel& model, std::size_t n) {
    model.validate();
    if (n < 1) throw std::domain_error("constraint_set: need at least one particle");
    if (model.kind == ModelKind::RealGas && n < 2)
        throw std::domain_error("constraint_set: the interacting model needs at least two particles");

    std::vector<std::unique_ptr<PhaseFunction>> set;
    set.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (model.kind == ModelKind::RealGas)
            set.push_back(std::make_unique<OnShellInteracting>(i, *model.lj));
        else
            set.push_back(std::make_unique<OnShellFree>(i));
    }
    switch (model.kind) {
        case ModelKind::PerfectSimple:
            for (std::size_t i = 0; i < n; ++i) set.push_back(std::make_unique<SimpleTimeFix>(i));
            break;
        case ModelKind::PerfectCovariant:
            for (std::size_t i = 0; i < n; ++i) set.push_back(std::make_unique<CovariantTimeFix>(i));
            break;
        case ModelKind::RealGas:
            for (std::size_t i = 0; i + 1 < n; ++i) set.push_back(std::make_unique<PairTimeFix>(i, model.lj->sigma));
            set.push_back(std::make_unique<GlobalTimeFix>());
            break;
    }
    return set;
}

std::vector<double> constraint_values(const GasModel& model, const SystemState& s) {
    const auto set = constraint_set(model, s.size());
    std::vector<double> vals;
    vals.reserve(set.size());
    for (const auto& c : set) vals.push_back(c->value(s));
    return vals;
}

double max_constraint_residual(const GasModel& model, const SystemState& s) {
    double worst = 0.0;
    for (const double v : constraint_values(model, s)) worst = std::max(worst, std::fabs(v));
    return worst;
}

CMatrix c_matrix(const GasModel& model, const SystemState& s) {
    const std::size_t n = s.size();
    const auto set = constraint_set(model, n);
    CMatrix out;
    if (model.is_perfect()) {
        out.m = Matrix(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.m(i, j) = poisson_bracket(*set[i], *set[n + j], s);
    } else {
        out.m = Matrix(2 * n);
        for (std::size_t a = 0; a < 2 * n; ++a)
            for (std::size_t b = a + 1; b < 2 * n; ++b) {
                const double v = poisson_bracket(*set[a], *set[b], s);
                out.m(a, b) = v;
                out.m(b, a) = -v;
            }
    }
    out.condition_number = out.m.condition_number();
    out.near_singular = out.condition_number > 1e12;
    return out;
}

std::vector<double> multipliers(const GasModel& model, const SystemState& s) {
    const std::size_t n = s.size();
    const auto set = constraint_set(model, n);

    if (model.is_perfect()) {
        // sum_i lambda_i {phi_i, chi_j} = -d chi_j/d tau = 1
        Matrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c(i, j) = poisson_bracket(*set[i], *set[n + j], s);
        return c.transposed().solve(std::vector<double>(n, 1.0));
    }

    // Real gas: consistency over the full antisymmetric 2N x 2N matrix, with
    // the auxiliary multiplier of the global fixation as a consistency probe
    // (it must come out zero, the inverse of an antisymmetric matrix having
    // a zero diagonal).
    Matrix c(2 * n);
    for (std::size_t a = 0; a < 2 * n; ++a)
        for (std::size_t b = a + 1; b < 2 * n; ++b) {
            const double v = poisson_bracket(*set[a], *set[b], s);
            c(a, b) = v;
            c(b, a) = -v;
        }
    std::vector<double> rhs(2 * n, 0.0);
    for (std::size_t j = 0; j < 2 * n; ++j) rhs[j] = -set[j]->d_tau(s);
    std::vector<double> mu = c.transposed().solve(rhs);
    double scale = 0.0;
    for (const double x : mu) scale = std::max(scale, std::fabs(x));
    if (std::fabs(mu[2 * n - 1]) > 1e-6 * std::max(scale, 1e-300)) {
        std::ostringstream msg;
        msg << "multipliers: inconsistent constraint system, auxiliary multiplier " << mu[2 * n - 1]
            << " against scale " << scale;
        throw accuracy_error(msg.str());
    }
    mu.pop_back();
    return mu;
}

Flow flow_derivatives(const GasModel& model, const SystemState& s) {
    const std::size_t n = s.size();
    const auto set = constraint_set(model, n);
    const std::vector<double> lam = multipliers(model, s);
    const std::size_t m = hamiltonian_size(model, n);

    Flow f;
    f.dq.assign(n, {});
    f.dp.assign(n, {});
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            // raise the index: dq^mu = lambda dH/dp_mu = eta^{mu nu} dH/dp^nu
            f.dq[i] += lower(set[a]->grad_p(s, i)) * lam[a];
            f.dp[i] += lower(set[a]->grad_q(s, i)) * (-lam[a]);
        }
    }
    return f;
}

namespace {

SystemState advanced(const SystemState& s, const Flow& f, double h) {
    SystemState out = s;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.particles[i].q += f.dq[i] * h;
        out.particles[i].p += f.dp[i] * h;
    }
    out.tau = s.tau + h;
    return out;
}

} // namespace

SystemState project(const GasModel& model, const SystemState& s) {
    const std::size_t n = s.size();
    const auto set = constraint_set(model, n);
    SystemState cur = s;
    std::vector<double> trace;

    for (int it = 0; it <= 20; ++it) {
        std::vector<double> r(2 * n);
        double worst = 0.0;
        for (std::size_t a = 0; a < 2 * n; ++a) {
            r[a] = set[a]->value(cur);
            worst = std::max(worst, std::fabs(r[a]));
        }
        trace.push_back(worst);
        if (worst <= 1e-12) {
            for (const Particle& pt : cur.particles)
                if (!(pt.p.t > 0.0))
                    throw projection_error("project: converged onto the negative-energy branch");
            return cur;
        }
        if (it == 20) break;

        // Unknowns: (p_i^0, q_i^0); the Jacobian entries are the time
        // components of the analytic gradients.
        Matrix jac(2 * n);
        for (std::size_t a = 0; a < 2 * n; ++a) {
            for (std::size_t i = 0; i < n; ++i) {
                jac(a, i) = set[a]->grad_p(cur, i).t;
                jac(a, n + i) = set[a]->grad_q(cur, i).t;
            }
        }
        for (double& x : r) x = -x;
        const std::vector<double> delta = jac.solve(r);
        for (std::size_t i = 0; i < n; ++i) {
            cur.particles[i].p.t += delta[i];
            cur.particles[i].q.t += delta[n + i];
        }
    }

    std::ostringstream msg;
    msg << "project: Newton did not reach 1e-12 in 20 iterations; residual trace:";
    for (const double v : trace) msg << " " << v;
    throw projection_error(msg.str());
}

SystemState step(const GasModel& model, const SystemState& s, double dtau) {
    if (!(dtau > 0.0)) throw std::domain_error("step: dtau must be > 0");
    const double h = dtau;

    const Flow k1 = flow_derivatives(model, s);
    const Flow k2 = flow_derivatives(model, advanced(s, k1, 0.5 * h));
    const Flow k3 = flow_derivatives(model, advanced(s, k2, 0.5 * h));
    const Flow k4 = flow_derivatives(model, advanced(s, k3, h));

    SystemState out = s;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.particles[i].q += (k1.dq[i] + (k2.dq[i] + k3.dq[i]) * 2.0 + k4.dq[i]) * (h / 6.0);
        out.particles[i].p += (k1.dp[i] + (k2.dp[i] + k3.dp[i]) * 2.0 + k4.dp[i]) * (h / 6.0);
    }
    out.tau = s.tau + h;
    return project(model, out);
}

double transverse_distance_sq(std::size_t i, std::size_t j, const SystemState& s) {
    if (i == j) throw std::domain_error("transverse_distance_sq: needs two distinct particles");
    return pair_geometry(s, i, j).qt2;
}

LjEval lj_tilde(std::size_t i, std::size_t j, const SystemState& s, const LennardJonesParams& params) {
    if (i == j) throw std::domain_error("lj_tilde: needs two distinct particles");
    const PairGeometry pg = pair_geometry(s, i, j);
    const LjCore core = lj_core(pg.qt2, s.particles[i].mass, params);
    LjEval e;
    e.value = core.value;
    e.grad_qi = pg.dqt2_dqi * core.dv_dqt2;
    e.grad_qj = pg.dqt2_dqi * -core.dv_dqt2;
    e.grad_pi = pg.dqt2_dpi * core.dv_dqt2;
    e.grad_pj = pg.dqt2_dpi * core.dv_dqt2;
    return e;
}

double weighting(std::size_t i, std::size_t j, const SystemState& s, double sigma) {
    if (i == j) throw std::domain_error("weighting: needs two distinct particles");
    if (!(sigma > 0.0)) throw std::domain_error("weighting: sigma must be > 0");
    const FourVector q_ij = s.particles[i].q - s.particles[j].q;
    return weight_of(dot(q_ij, q_ij), sigma);
}

SystemState init_state(const GasModel& model, int n, std::uint64_t seed, double box, double momentum_scale,
                       double tau0, double mass) {
    model.validate();
    if (n < 1 || (model.kind == ModelKind::RealGas && n < 2))
        throw std::domain_error("init_state: too few particles for the model");
    if (!(box > 0.0) || !(momentum_scale > 0.0) || !(mass > 0.0))
        throw std::domain_error("init_state: box, momentum_scale and mass must be > 0");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-0.5 * box, 0.5 * box);
    std::normal_distribution<double> mom(0.0, momentum_scale);

    SystemState s;
    s.tau = tau0;
    s.particles.resize(n);
    for (int i = 0; i < n; ++i) {
        Particle& pt = s.particles[i];
        pt.mass = mass;
        for (int attempt = 0;; ++attempt) {
            pt.q = {0.0, pos(rng), pos(rng), pos(rng)};
            if (model.kind != ModelKind::RealGas) break;
            // keep pairs outside the repulsive core so the constraint solve
            // starts from a physical configuration
            bool ok = true;
            for (int j = 0; j < i; ++j) {
                if ((pt.q.spatial() - s.particles[j].q.spatial()).norm() < model.lj->sigma) {
                    ok = false;
                    break;
                }
            }
            if (ok) break;
            if (attempt > 10000) throw std::domain_error("init_state: box too small for the requested separations");
        }
        pt.p = {0.0, mom(rng), mom(rng), mom(rng)};
        pt.p.t = std::sqrt(pt.p.spatial().norm2() + mass * mass);
    }

    switch (model.kind) {
        case ModelKind::PerfectSimple:
            for (Particle& pt : s.particles) pt.q.t = tau0;
            return s;
        case ModelKind::PerfectCovariant:
            // p.q/m = tau0  =>  q^0 = (p.q_spatial + m tau0) / p^0
            for (Particle& pt : s.particles)
                pt.q.t = (dot(pt.p.spatial(), pt.q.spatial()) + pt.mass * tau0) / pt.p.t;
            return s;
        case ModelKind::RealGas: {
            // Fixed-point passes on the energies with the interacting shell
            // condition, then the full Newton projection for the time fixations.
            for (Particle& pt : s.particles) pt.q.t = tau0;
            for (int pass = 0; pass < 4; ++pass) {
                for (int i = 0; i < n; ++i) {
                    Particle& pt = s.particles[i];
                    double v = 0.0;
                    for (int j = 0; j < n; ++j) {
                        if (j == i) continue;
                        v += lj_core(pair_geometry(s, i, j).qt2, pt.mass, *model.lj).value;
                    }
                    const double e2 = pt.p.spatial().norm2() + pt.mass * pt.mass + v;
                    if (!(e2 > 0.0)) throw std::domain_error("init_state: interaction too strong for a positive energy");
                    pt.p.t = std::sqrt(e2);
                }
            }
            return project(model, s);
        }
    }
    throw std::domain_error("init_state: unknown model");
}

SystemState boosted(const SystemState& s, const Vec3& velocity) {
    SystemState out = s;
    for (Particle& pt : out.particles) {
        pt.q = boost(pt.q, velocity);
        pt.p = boost(pt.p, velocity);
    }
    return out;
}

} // namespace covstat
