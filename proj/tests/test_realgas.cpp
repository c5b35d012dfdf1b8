#include <doctest.h>

#include <cmath>
#include <random>

#include "covstat/dynamics.hpp"

using namespace covstat;

namespace {

// equal-time pair at rest, separated along x by r (their common CMS)
SystemState rest_pair(double r, double mass = 1.0) {
    SystemState s;
    s.particles.resize(2);
    s.particles[0] = {{0.0, -0.5 * r, 0.0, 0.0}, {mass, 0.0, 0.0, 0.0}, mass};
    s.particles[1] = {{0.0, 0.5 * r, 0.0, 0.0}, {mass, 0.0, 0.0, 0.0}, mass};
    return s;
}

std::mt19937_64 rng(2468);

Vec3 random_velocity(double vmax) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        const Vec3 v{vmax * u(rng), vmax * u(rng), vmax * u(rng)};
        if (v.norm() < vmax) return v;
    }
}

} // namespace

TEST_CASE("transverse_distance_sq: CMS reduction to -|q|^2") {
    const double r = 1.7;
    const SystemState s = rest_pair(r);
    CHECK(transverse_distance_sq(0, 1, s) == doctest::Approx(-r * r).epsilon(1e-14));
}

TEST_CASE("transverse_distance_sq: boost invariance") {
    for (int k = 0; k < 50; ++k) {
        SystemState s = rest_pair(1.3);
        std::uniform_real_distribution<double> u(-0.4, 0.4);
        for (Particle& pt : s.particles) {
            pt.q.t = u(rng);
            pt.p = {0.0, u(rng), u(rng), u(rng)};
            pt.p.t = std::sqrt(pt.p.spatial().norm2() + pt.mass * pt.mass);
        }
        const double before = transverse_distance_sq(0, 1, s);
        const SystemState b = boosted(s, random_velocity(0.7));
        CHECK(std::fabs(transverse_distance_sq(0, 1, b) - before) <= 1e-10 * std::max(1.0, std::fabs(before)));
    }
}

TEST_CASE("transverse_distance_sq: longitudinal displacement projected out") {
    // displace the pair purely along p_ij: the projector must remove it
    SystemState s = rest_pair(0.0);
    const FourVector p_ij = s.particles[0].p + s.particles[1].p; // (2m, 0)
    s.particles[0].q = s.particles[0].q + p_ij * 0.37; // purely timelike shift in the CMS
    CHECK(std::fabs(transverse_distance_sq(0, 1, s)) <= 1e-13);
}

TEST_CASE("lj_tilde: zero at separation sigma, minimum at 2^{1/6} sigma") {
    const LennardJonesParams lj{0.8, 1.4};
    const double m = 1.0;
    {
        const SystemState s = rest_pair(lj.sigma, m);
        CHECK(std::fabs(lj_tilde(0, 1, s, lj).value) <= 1e-12);
    }
    {
        const double r_min = std::pow(2.0, 1.0 / 6.0) * lj.sigma;
        const SystemState s = rest_pair(r_min, m);
        CHECK(lj_tilde(0, 1, s, lj).value == doctest::Approx(-m * lj.kappa / 2.0).epsilon(1e-12));
        // 1-D scan confirms this is the minimum
        for (const double f : {0.9, 0.95, 1.05, 1.1}) {
            CHECK(lj_tilde(0, 1, rest_pair(f * r_min, m), lj).value > -m * lj.kappa / 2.0);
        }
    }
}

TEST_CASE("lj_tilde: analytic gradients against central finite differences") {
    const LennardJonesParams lj{0.5, 1.0};
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    int tested = 0;
    while (tested < 100) {
        SystemState s = rest_pair(1.2 + 0.8 * std::fabs(u(rng)));
        for (Particle& pt : s.particles) {
            pt.q.t += 0.2 * u(rng);
            pt.q.y += u(rng);
            pt.q.z += u(rng);
            pt.p = {0.0, u(rng), u(rng), u(rng)};
            pt.p.t = std::sqrt(pt.p.spatial().norm2() + pt.mass * pt.mass);
        }
        double qt2;
        try {
            qt2 = transverse_distance_sq(0, 1, s);
        } catch (const evaluation_error&) {
            continue;
        }
        if (qt2 >= -0.25) continue; // keep away from the causal boundary
        ++tested;

        const LjEval e = lj_tilde(0, 1, s, lj);
        const double h = 1e-6;
        auto probe = [&](auto mutate) {
            SystemState up = s, down = s;
            mutate(up, h);
            mutate(down, -h);
            return (lj_tilde(0, 1, up, lj).value - lj_tilde(0, 1, down, lj).value) / (2.0 * h);
        };
        const double fd_qix = probe([](SystemState& st, double d) { st.particles[0].q.x += d; });
        const double fd_qjt = probe([](SystemState& st, double d) { st.particles[1].q.t += d; });
        const double fd_piy = probe([](SystemState& st, double d) { st.particles[0].p.y += d; });
        const double fd_pjz = probe([](SystemState& st, double d) { st.particles[1].p.z += d; });
        CHECK(std::fabs(e.grad_qi.x - fd_qix) <= 1e-6 * std::max(1.0, std::fabs(fd_qix)));
        CHECK(std::fabs(e.grad_qj.t - fd_qjt) <= 1e-6 * std::max(1.0, std::fabs(fd_qjt)));
        CHECK(std::fabs(e.grad_pi.y - fd_piy) <= 1e-6 * std::max(1.0, std::fabs(fd_piy)));
        CHECK(std::fabs(e.grad_pj.z - fd_pjz) <= 1e-6 * std::max(1.0, std::fabs(fd_pjz)));
    }
}

TEST_CASE("lj_tilde: causal and overflow guards") {
    const LennardJonesParams lj{1.0, 1.0};
    // spatially coincident pair: the transverse separation degenerates to zero
    SystemState s = rest_pair(0.0);
    s.particles[0].q.t = 5.0;
    CHECK_THROWS_AS(lj_tilde(0, 1, s, lj), evaluation_error);
    // off-shell probe with spacelike pair momentum: qT^2 comes out positive
    SystemState probe = rest_pair(1.0);
    probe.particles[0].p = {1.0, 2.0, 0.0, 0.0};
    probe.particles[1].p = {1.0, 2.0, 0.0, 0.0};
    CHECK(transverse_distance_sq(0, 1, probe) > 0.0);
    CHECK_THROWS_AS(lj_tilde(0, 1, probe, lj), evaluation_error);
    CHECK_THROWS_AS(lj_tilde(0, 1, rest_pair(1e-8), lj), evaluation_error);
}

TEST_CASE("weighting: direct value at spacelike separation") {
    const double sigma = 2.0;
    const SystemState s = rest_pair(sigma); // q_ij^2 = -sigma^2
    CHECK(weighting(0, 1, s, sigma) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("weighting: vanishes for growing spacelike separation") {
    const double sigma = 1.0;
    double prev = 1.0;
    for (const double r : {1.0, 2.0, 4.0, 8.0}) {
        const double w = std::fabs(weighting(0, 1, rest_pair(r), sigma));
        CHECK(w < prev);
        prev = w;
    }
    CHECK(prev <= 1e-20);
}

TEST_CASE("weighting: boost invariant and singular on the light cone") {
    SystemState s = rest_pair(1.5);
    s.particles[0].q.t = 0.3;
    const double w = weighting(0, 1, s, 1.0);
    const SystemState b = boosted(s, random_velocity(0.8));
    CHECK(weighting(0, 1, b, 1.0) == doctest::Approx(w).epsilon(1e-10));

    SystemState light = rest_pair(1.0);
    light.particles[0].q.t = 1.0; // null separation
    CHECK_THROWS_AS(weighting(0, 1, light, 1.0), evaluation_error);
}

TEST_CASE("real gas: on-shell residual reduces to the free one for distant pairs") {
    const GasModel model = GasModel::real_gas({0.5, 1.0});
    SystemState s = rest_pair(25.0);
    s.particles[0].p.t = 2.0; // off shell by 3/2 in free terms
    const std::vector<double> r = constraint_values(model, s);
    // LJ tail at 25 sigma: (1/25)^6 ~ 4e-9 scaled by kappa
    const double tail_bound = 2.0 * 0.5 * std::pow(1.0 / 25.0, 6.0);
    CHECK(std::fabs(r[0] - 1.5) <= tail_bound);
}

TEST_CASE("real gas: constraint gradients against finite differences") {
    const GasModel model = GasModel::real_gas({0.05, 1.0});
    SystemState s = rest_pair(1.5);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (Particle& pt : s.particles) {
        pt.q.t = 0.1 * u(rng);
        pt.q.y += u(rng);
        pt.p = {0.0, u(rng), u(rng), u(rng)};
        pt.p.t = std::sqrt(pt.p.spatial().norm2() + pt.mass * pt.mass);
    }
    const auto set = constraint_set(model, 2);
    const double h = 1e-6;
    for (const auto& c : set) {
        for (std::size_t i = 0; i < 2; ++i) {
            const FourVector gq = c->grad_q(s, i);
            const FourVector gp = c->grad_p(s, i);
            auto fd = [&](bool position, int comp) {
                SystemState up = s, down = s;
                double* target_up;
                double* target_down;
                FourVector& fu = position ? up.particles[i].q : up.particles[i].p;
                FourVector& fd_ = position ? down.particles[i].q : down.particles[i].p;
                double FourVector::*mem[4] = {&FourVector::t, &FourVector::x, &FourVector::y, &FourVector::z};
                target_up = &(fu.*mem[comp]);
                target_down = &(fd_.*mem[comp]);
                *target_up += h;
                *target_down -= h;
                return (c->value(up) - c->value(down)) / (2.0 * h);
            };
            const double aq[4] = {gq.t, gq.x, gq.y, gq.z};
            const double ap[4] = {gp.t, gp.x, gp.y, gp.z};
            for (int comp = 0; comp < 4; ++comp) {
                const double fq = fd(true, comp);
                const double fp = fd(false, comp);
                CHECK(std::fabs(aq[comp] - fq) <= 1e-6 * std::max(1.0, std::fabs(fq)));
                CHECK(std::fabs(ap[comp] - fp) <= 1e-6 * std::max(1.0, std::fabs(fp)));
            }
        }
    }
}

TEST_CASE("real gas: bracket matrix is antisymmetric and invertible") {
    const GasModel model = GasModel::real_gas({0.05, 1.0});
    SystemState s = init_state(model, 2, 11, 4.0, 0.2, 0.0);
    const CMatrix c = c_matrix(model, s);
    REQUIRE(c.m.size() == 4);
    for (std::size_t a = 0; a < 4; ++a) {
        CHECK(c.m(a, a) == 0.0);
        for (std::size_t b = 0; b < 4; ++b) CHECK(c.m(a, b) == doctest::Approx(-c.m(b, a)).epsilon(1e-14));
    }
    CHECK_FALSE(c.near_singular);

    // {phi, phi} entry vanishes at a symmetric rest configuration (gradients cancel)
    const SystemState sym = rest_pair(1.5);
    const CMatrix cs = c_matrix(model, sym);
    CHECK(std::fabs(cs.m(0, 1)) <= 1e-14);
}

TEST_CASE("real gas: force-free at the interaction minimum") {
    const GasModel model = GasModel::real_gas({0.01, 1.0});
    const double r_min = std::pow(2.0, 1.0 / 6.0);
    const SystemState s = rest_pair(r_min);
    const Flow f = flow_derivatives(model, s);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::fabs(f.dp[i].x) <= 1e-12);
        CHECK(std::fabs(f.dp[i].y) <= 1e-12);
        CHECK(std::fabs(f.dp[i].z) <= 1e-12);
    }
}

TEST_CASE("real gas: init_state lands on the manifold") {
    const GasModel model = GasModel::real_gas({0.05, 1.0});
    const SystemState s = init_state(model, 2, 2024, 5.0, 0.2, 0.0);
    CHECK(max_constraint_residual(model, s) <= 1e-10);
    const SystemState s4 = init_state(model, 4, 7, 6.0, 0.1, 0.0);
    CHECK(max_constraint_residual(model, s4) <= 1e-10);
}

TEST_CASE("real gas: projection recovers from coupled perturbations") {
    const GasModel model = GasModel::real_gas({0.05, 1.0});
    SystemState s = init_state(model, 2, 5, 5.0, 0.2, 0.0);
    s.particles[0].p.t += 1e-4;
    s.particles[1].q.t -= 1e-4;
    const SystemState fixed = project(model, s);
    CHECK(max_constraint_residual(model, fixed) <= 1e-12);
}

TEST_CASE("real gas: total four-momentum conserved over a bound-pair trajectory") {
    const GasModel model = GasModel::real_gas({0.01, 1.0});
    const double r_min = std::pow(2.0, 1.0 / 6.0);
    SystemState s = rest_pair(r_min);
    s.particles[0].p.y = 1e-3;
    s.particles[1].p.y = -1e-3;
    for (Particle& pt : s.particles) pt.p.t = std::sqrt(pt.p.spatial().norm2() + pt.mass * pt.mass);
    s = project(model, s);

    FourVector p0;
    for (const Particle& pt : s.particles) p0 += pt.p;
    for (int k = 0; k < 1000; ++k) s = step(model, s, 0.01);
    FourVector p1;
    for (const Particle& pt : s.particles) p1 += pt.p;
    CHECK(component_norm(p1 - p0) <= 1e-8 * component_norm(p0));
    CHECK(max_constraint_residual(model, s) <= 1e-8);
}

TEST_CASE("real gas: two distant pairs evolve like independent pairs (cluster check)") {
    // Separation 5 sigma: the inter-cluster couplings (LJ tail ~ (1/5)^6,
    // weight ~ e^{-25}) are tiny but still resolve the relative-time gauge
    // freedom that opens up at exact cluster decomposition. Much beyond this
    // the bracket matrix degenerates to machine precision, which is the
    // model's behavior, not a solver artifact.
    const GasModel model = GasModel::real_gas({0.01, 1.0});
    const double r = 1.3;

    // isolated pair
    SystemState pair = rest_pair(r);
    pair.particles[0].p.y = 5e-3;
    pair.particles[1].p.y = -5e-3;
    for (Particle& pt : pair.particles) pt.p.t = std::sqrt(pt.p.spatial().norm2() + pt.mass * pt.mass);
    pair = project(model, pair);

    // same pair plus a far-away copy along z
    SystemState four = pair;
    for (const Particle& pt : pair.particles) {
        Particle shifted = pt;
        shifted.q.z += 5.0;
        four.particles.push_back(shifted);
    }
    four = project(model, four);

    for (int k = 0; k < 200; ++k) {
        pair = step(model, pair, 0.01);
        four = step(model, four, 0.01);
    }
    for (std::size_t i = 0; i < 2; ++i) {
        const Vec3 a = pair.particles[i].q.spatial();
        const Vec3 b = four.particles[i].q.spatial();
        CHECK((a - b).norm() <= 2e-5); // bounded by the physical LJ tail over tau = 2
    }
}
