#include <doctest.h>

#include <cmath>

#include "covstat/specfun.hpp"
#include "oracles.hpp"

using namespace covstat;

TEST_CASE("gauss_laguerre_rule: order 1 is the single node x=1, w=1") {
    const QuadratureRule r = gauss_laguerre_rule(1);
    REQUIRE(r.nodes.size() == 1);
    CHECK(r.nodes[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gauss_laguerre_rule: order 2 closed-form nodes and weights") {
    const QuadratureRule r = gauss_laguerre_rule(2);
    REQUIRE(r.nodes.size() == 2);
    const double s = std::sqrt(2.0);
    CHECK(r.nodes[0] == doctest::Approx(2.0 - s).epsilon(1e-14));
    CHECK(r.nodes[1] == doctest::Approx(2.0 + s).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx((2.0 + s) / 4.0).epsilon(1e-14));
    CHECK(r.weights[1] == doctest::Approx((2.0 - s) / 4.0).epsilon(1e-14));
    // weight formula cross-check by exact integration of 1 and x
    CHECK(r.weights[0] + r.weights[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r.weights[0] * r.nodes[0] + r.weights[1] * r.nodes[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("gauss_laguerre_rule: invariants across orders") {
    for (const int n : {1, 2, 5, 15, 40, 64, 96, 128}) {
        const QuadratureRule r = gauss_laguerre_rule(n);
        REQUIRE((int)r.nodes.size() == n);
        REQUIRE((int)r.weights.size() == n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(r.nodes[i] > 0.0);
            CHECK(r.weights[i] > 0.0);
            if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
            sum += r.weights[i];
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("gauss_laguerre_rule: exact for x^k up to degree 2n-1") {
    for (const int n : {1, 2, 3, 5, 8, 10, 15}) {
        const QuadratureRule r = gauss_laguerre_rule(n);
        double factorial = 1.0;
        for (int k = 0; k <= std::min(2 * n - 1, 20); ++k) {
            if (k > 0) factorial *= k;
            const double got = integrate_laguerre([k](double x) { return std::pow(x, k); }, r);
            CHECK(std::fabs(got / factorial - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("gauss_laguerre_rule: order out of range") {
    CHECK_THROWS_AS(gauss_laguerre_rule(0), std::domain_error);
    CHECK_THROWS_AS(gauss_laguerre_rule(129), std::domain_error);
}

TEST_CASE("integrate_laguerre: weight normalization and moments") {
    const QuadratureRule r15 = gauss_laguerre_rule(15);
    CHECK(integrate_laguerre([](double) { return 1.0; }, r15) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::fabs(integrate_laguerre([](double x) { return x * x; }, r15) - 2.0) <= 1e-12 * 2.0);
    CHECK(std::fabs(integrate_laguerre([](double x) { return x * x * x; }, gauss_laguerre_rule(15)) - 6.0) <= 1e-10 * 6.0);
}

TEST_CASE("integrate_laguerre: non-finite integrand reports the node") {
    const QuadratureRule r = gauss_laguerre_rule(4);
    CHECK_THROWS_AS(integrate_laguerre([](double x) { return 1.0 / (x - x); }, r), evaluation_error);
}

TEST_CASE("integrate_laguerre: 1/(1+x) against the adaptive-Simpson oracle") {
    // integral_0^inf e^{-x}/(1+x) dx, oracle value by adaptive Simpson
    const double oracle =
        oracles::adaptive_simpson_halfline([](double x) { return std::exp(-x) / (1.0 + x); }, 1e-13);
    double previous_error = 1e9;
    for (int n = 5; n <= 60; n += 5) {
        const double got = integrate_laguerre([](double x) { return 1.0 / (1.0 + x); }, gauss_laguerre_rule(n));
        const double err = std::fabs(got - oracle);
        CHECK(err < previous_error); // error decreases monotonically with order
        previous_error = err;
    }
    CHECK(previous_error <= 1e-12);
}

TEST_CASE("bessel_k: recurrence K2 = K0 + 2 K1 / x") {
    for (const double x : {0.1, 1.0, 10.0, 100.0}) {
        const double lhs = bessel_k(2, x);
        const double rhs = bessel_k(0, x) + 2.0 * bessel_k(1, x) / x;
        CHECK(std::fabs(lhs / rhs - 1.0) <= 1e-10);
    }
}

TEST_CASE("bessel_k: recurrence holds across [0.01, 500] (scaled form)") {
    for (double x = 0.01; x <= 500.0; x *= 1.7) {
        const double lhs = bessel_k_scaled(2, x);
        const double rhs = bessel_k_scaled(0, x) + 2.0 * bessel_k_scaled(1, x) / x;
        CHECK(std::fabs(lhs / rhs - 1.0) <= 1e-10);
    }
}

TEST_CASE("bessel_k: K1(50) against the two-term asymptotic") {
    const double x = 50.0;
    const double scaled = bessel_k_scaled(1, x);
    const double asym2 = std::sqrt(M_PI / (2.0 * x)) * (1.0 + 3.0 / (8.0 * x));
    const double next_term = std::sqrt(M_PI / (2.0 * x)) * 15.0 / (128.0 * x * x);
    CHECK(std::fabs(scaled - asym2) <= next_term);
}

TEST_CASE("bessel_k: two-term asymptotic tail bounded by C/x^2 with C <= 10") {
    for (const int n : {0, 1, 2}) {
        for (const double x : {30.0, 50.0, 100.0, 300.0, 700.0}) {
            const double asym2 = std::sqrt(M_PI / (2.0 * x)) * (1.0 + (4.0 * n * n - 1.0) / (8.0 * x));
            const double c_fit = std::fabs(bessel_k_scaled(n, x) / asym2 - 1.0) * x * x;
            CHECK(c_fit <= 10.0);
        }
    }
}

TEST_CASE("bessel_k: momentum integral cross-check via the energy substitution") {
    // integral_0^inf rho^2/sqrt(rho^2+1) e^{-2 sqrt(rho^2+1)} drho = K1(2)/2
    const double lhs = oracles::adaptive_simpson_halfline(
        [](double rho) {
            const double e = std::sqrt(rho * rho + 1.0);
            return rho * rho / e * std::exp(-2.0 * e);
        },
        1e-13);
    CHECK(lhs == doctest::Approx(0.5 * bessel_k(1, 2.0)).epsilon(1e-10));
}

TEST_CASE("bessel_k: agrees with the standard-library evaluation") {
    for (const int n : {0, 1, 2}) {
        for (double x = 0.01; x <= 300.0; x *= 1.6) {
            const double ref = std::cyl_bessel_k((double)n, x);
            CHECK(std::fabs(bessel_k(n, x) / ref - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("ln_gamma: agrees with the standard-library evaluation") {
    for (double x = 0.1; x <= 2000.0; x *= 1.9) {
        CHECK(std::fabs(ln_gamma(x) - std::lgamma(x)) <= 1e-12 * std::max(1.0, std::fabs(std::lgamma(x))));
    }
}

TEST_CASE("bessel_k: positive and strictly decreasing") {
    for (const int n : {0, 1, 2}) {
        double prev = 1e300;
        for (double x = 0.05; x <= 200.0; x *= 1.3) {
            const double v = bessel_k(n, x);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("bessel_k: domain errors and underflow flag") {
    CHECK_THROWS_AS(bessel_k(1, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(3, 1.0), std::domain_error);
    bool underflowed = false;
    const double v = bessel_k(1, 800.0, &underflowed);
    CHECK(v == 0.0);
    CHECK(underflowed);
    bessel_k(1, 10.0, &underflowed);
    CHECK_FALSE(underflowed);
}

TEST_CASE("ln_gamma: special values and recurrence") {
    CHECK(std::fabs(ln_gamma(1.0)) <= 1e-14);
    CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-13));
    for (const double x : {0.5, 3.7, 42.0}) {
        CHECK(std::exp(ln_gamma(x + 1.0) - ln_gamma(x)) == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-2.0), std::domain_error);
}
