#include "covstat/specfun.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace covstat {

namespace {

// Laguerre polynomial L_n and L_{n-1} at z via the three-term recurrence,
// in extended precision to keep high orders usable.
struct LaguerrePair {
    long double pn;   // L_n(z)
    long double pnm1; // L_{n-1}(z)
};

LaguerrePair laguerre_eval(int n, long double z) {
    long double p1 = 1.0L;
    long double p2 = 0.0L;
    for (int j = 1; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j;
    }
    return {p1, p2};
}

} // namespace

QuadratureRule gauss_laguerre_rule(int order) {
    if (order < 1 || order > 128) throw std::domain_error("gauss_laguerre_rule: order must be in [1, 128]");

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    rule.log_weights.resize(order);

    long double z = 0.0L;
    std::vector<long double> roots(order);
    for (int i = 0; i < order; ++i) {
        // Initial guesses: leading-root approximation plus extrapolated spacing.
        if (i == 0) {
            z = 3.0L / (1.0L + 2.4L * order);
        } else if (i == 1) {
            z += 15.0L / (1.0L + 2.5L * order);
        } else {
            const long double ai = i - 1;
            z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - roots[i - 2]);
        }
        long double pp = 0.0L;
        long double pnm1 = 0.0L;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const LaguerrePair lp = laguerre_eval(order, z);
            pnm1 = lp.pnm1;
            pp = order * (lp.pn - lp.pnm1) / z; // dL_n/dx = n (L_n - L_{n-1}) / x
            const long double z1 = z;
            z = z1 - lp.pn / pp;
            if (std::fabs((double)(z - z1)) <= 1e-14 * std::max(1.0, std::fabs((double)z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw accuracy_error("gauss_laguerre_rule: Newton iteration did not converge");
        roots[i] = z;
        rule.nodes[i] = (double)z;
        rule.weights[i] = (double)(-1.0L / (pp * order * pnm1));
        rule.log_weights[i] = std::log(rule.weights[i]);
    }
    return rule;
}

namespace {

// 32-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kLegendreHalf = 16;
constexpr std::array<double, kLegendreHalf> kLegendreX = {
    0.0483076656877383162348126, 0.1444719615827964934851864, 0.2392873622521370745446032,
    0.3318686022821276497799168, 0.4213512761306353453641194, 0.5068999089322293900237475,
    0.5877157572407623290407455, 0.6630442669302152009751152, 0.7321821187402896803874267,
    0.7944837959679424069630973, 0.8493676137325699701336930, 0.8963211557660521239653072,
    0.9349060759377396891709191, 0.9647622555875064307738119, 0.9856115115452683354001750,
    0.9972638618494815635449811};
constexpr std::array<double, kLegendreHalf> kLegendreW = {
    0.0965400885147278005667648, 0.0956387200792748594190820, 0.0938443990808045656391802,
    0.0911738786957638847128686, 0.0876520930044038111427715, 0.0833119242269467552221991,
    0.0781938957870703064717409, 0.0723457941088485062253994, 0.0658222227763618468376501,
    0.0586840934785355471452836, 0.0509980592623761761961632, 0.0428358980222266806568786,
    0.0342738629130214331026877, 0.0253920653092620594557526, 0.0162743947309056706051706,
    0.0070186100094700966004071};

// integral of e^{-x (cosh(s) - 1)} cosh(n s) over one panel [a, b]
double bessel_panel(int n, double x, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < kLegendreHalf; ++k) {
        for (const double sgn : {-1.0, 1.0}) {
            const double s = mid + sgn * half * kLegendreX[k];
            acc += kLegendreW[k] * std::exp(-x * (std::cosh(s) - 1.0)) * std::cosh(n * s);
        }
    }
    return half * acc;
}

} // namespace

double bessel_k_scaled(int n, double x) {
    if (n < 0 || n > 2) throw std::domain_error("bessel_k_scaled: order must be 0, 1 or 2");
    if (!(x > 0.0)) throw std::domain_error("bessel_k_scaled: argument must be > 0");

    // Truncation point: beyond s_max the tail is below 1e-16 of the peak.
    double s_max = 1.0;
    while (x * (std::cosh(s_max) - 1.0) - n * s_max < 45.0) s_max *= 1.25;

    // Panel width resolves the e^{-x s^2 / 2} peak near the origin.
    const double width = std::min(0.5, 1.0 / std::sqrt(std::max(x, 1e-2)));
    const int panels = (int)std::ceil(s_max / width);
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) {
        acc += bessel_panel(n, x, s_max * k / panels, s_max * (k + 1) / panels);
    }
    return acc;
}

double bessel_k(int n, double x, bool* underflowed) {
    const double scaled = bessel_k_scaled(n, x);
    if (underflowed) *underflowed = false;
    const double log_result = -x + std::log(scaled);
    if (log_result < std::log(DBL_MIN)) {
        if (underflowed) *underflowed = true;
        return 0.0;
    }
    return std::exp(log_result);
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be > 0");
    // Lanczos approximation, g = 7, 9 coefficients.
    static const double coeff[9] = {0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
                                    771.32342877765313,       -176.61502916214059,   12.507343278686905,
                                    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double sum = coeff[0];
    for (int k = 1; k < 9; ++k) sum += coeff[k] / (z + k);
    const double base = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(base) - base + std::log(sum);
}

} // namespace covstat
