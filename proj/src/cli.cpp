#include "covstat/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "covstat/thermo.hpp"

namespace covstat {

namespace {

constexpr const char* kVersion = "covstat 1.0.0";
constexpr const char* kCsvSchema = "covstat-csv v1";

const std::map<std::string, double> kBuiltinSpeciesMev = {
    {"hydrogen", 938.8}, {"helium", 3727.4}, {"neon", 18798.0}, {"argon", 37211.0}};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> make_grid(const RunConfig& c) {
    std::vector<double> g(c.points);
    if (c.points == 1) {
        g[0] = c.beta_m_min;
        return g;
    }
    for (int i = 0; i < c.points; ++i) {
        const double f = (double)i / (c.points - 1);
        g[i] = c.log_spaced ? std::exp(std::log(c.beta_m_min) + f * (std::log(c.beta_m_max) - std::log(c.beta_m_min)))
                            : c.beta_m_min + f * (c.beta_m_max - c.beta_m_min);
    }
    return g;
}

std::vector<Approach> all_approaches() {
    return {Approach::FullCovariant, Approach::SemiCovariant, Approach::Juttner, Approach::NonRelativistic};
}

// Run f(i) for i in [0, n) on a few threads; results land by index, so the
// output is independent of the scheduling.
template <class F>
void parallel_for(int n, F&& f) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(hw, (unsigned)std::max(1, n));
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = (int)w; i < n; i += (int)workers) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

bool all_finite(const std::vector<double>& xs) {
    for (const double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

int write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return kIoError;
    }
    out << content;
    out.flush();
    return out ? kOk : kIoError;
}

const char* model_name(ModelKind k) {
    switch (k) {
        case ModelKind::PerfectSimple: return "perfect_simple";
        case ModelKind::PerfectCovariant: return "perfect_covariant";
        case ModelKind::RealGas: return "real_gas";
    }
    return "?";
}

} // namespace

void RunConfig::validate() const {
    if (!(beta_m_min > 0.0)) throw std::domain_error("beta-m-min must be > 0");
    if (!(beta_m_max >= beta_m_min)) throw std::domain_error("beta-m-max must be >= beta-m-min");
    if (points < 1) throw std::domain_error("points must be >= 1");
    if (order < 1 || order > 128) throw std::domain_error("order must be in [1, 128]");
    if (n_particles < 1) throw std::domain_error("n must be >= 1");
    if (!(volume > 0.0)) throw std::domain_error("volume must be > 0");
    if (!(t_kelvin > 0.0)) throw std::domain_error("t-kelvin must be > 0");
    if (std::fabs(boost_vx) >= 1.0) throw std::domain_error("boost-vx must satisfy |v| < 1");
}

double RunConfig::resolve_mass_mev() const {
    if (mass_mev > 0.0) return mass_mev;
    // species file first (editable), built-in values as fallback
    std::ifstream in(species_file);
    if (in) {
        nlohmann::json j;
        in >> j;
        if (j.contains(gas_species)) return j[gas_species].get<double>();
    }
    const auto it = kBuiltinSpeciesMev.find(gas_species);
    if (it == kBuiltinSpeciesMev.end()) throw std::domain_error("unknown gas species: " + gas_species);
    return it->second;
}

int cmd_figure1(const RunConfig& config) {
    config.validate();
    const std::vector<double> grid = make_grid(config);
    const QuadratureRule rule = gauss_laguerre_rule(config.order);

    struct Row {
        double beta_m, y_full, y_semi, y_jut, y_nonrel;
        bool converged;
        double change;
        int comparison_order;
    };
    std::vector<Row> rows(grid.size());
    parallel_for((int)grid.size(), [&](int i) {
        const double b = grid[i];
        const YResult full = y_over_m3_checked(Approach::FullCovariant, b, rule);
        rows[i] = {b,
                   full.value,
                   y_over_m3(Approach::SemiCovariant, b, rule),
                   y_over_m3(Approach::Juttner, b, rule),
                   y_over_m3(Approach::NonRelativistic, b, rule),
                   full.converged,
                   full.order_doubling_change,
                   full.comparison_order};
    });

    std::ostringstream csv;
    csv << "# " << kCsvSchema << "\n# generator: " << kVersion << "\n";
    csv << "# command: figure1\n# quadrature_order: " << config.order << "\n";
    csv << "# columns: beta_m,y_full,y_semi,y_juttner,y_nonrel (all Y/m^3)\n";
    csv << "beta_m,y_full,y_semi,y_juttner,y_nonrel\n";
    nlohmann::json meta;
    meta["command"] = "figure1";
    meta["generator"] = kVersion;
    meta["quadrature_order"] = config.order;
    meta["order_doubling_tolerance"] = 1e-8;
    bool all_converged = true;
    double worst_change = 0.0;
    nlohmann::json row_meta = nlohmann::json::array();
    for (const Row& r : rows) {
        if (!all_finite({r.y_full, r.y_semi, r.y_jut, r.y_nonrel})) {
            std::cerr << "non-finite Y at beta_m = " << r.beta_m << "\n";
            return kAccuracyError;
        }
        csv << fmt(r.beta_m) << ',' << fmt(r.y_full) << ',' << fmt(r.y_semi) << ',' << fmt(r.y_jut) << ','
            << fmt(r.y_nonrel) << "\n";
        all_converged &= r.converged;
        worst_change = std::max(worst_change, r.change);
        row_meta.push_back({{"beta_m", r.beta_m},
                            {"converged", r.converged},
                            {"order_doubling_change", r.change},
                            {"comparison_order", r.comparison_order}});
    }
    meta["all_converged"] = all_converged;
    meta["max_order_doubling_change"] = worst_change;
    meta["rows"] = row_meta;

    const int rc = write_text_file(config.out, csv.str());
    if (rc != kOk) return rc;
    return write_text_file(config.out + ".meta.json", meta.dump(2) + "\n");
}

namespace {

nlohmann::json report_to_json(const ThermoReport& r) {
    return {{"free_energy", r.free_energy}, {"entropy", r.entropy},           {"pressure", r.pressure},
            {"avg_energy", r.avg_energy},   {"specific_heat", r.specific_heat}, {"y_over_m3", r.y_over_m3},
            {"ln_z", r.ln_z},               {"beta_m", r.beta_m}};
}

double rel_dev(double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300}); }

} // namespace

int cmd_table1(const RunConfig& config) {
    config.validate();
    const double m = config.resolve_mass_mev();
    const GasSpec gas{config.n_particles, m, config.volume};
    const double t_config = kBoltzmannMevPerK * config.t_kelvin;

    const double beta_m_limit = 1e-4;
    const double t_limit = m / beta_m_limit;
    const QuadratureRule rule = gauss_laguerre_rule(std::max(config.order, 96));

    nlohmann::json out;
    out["generator"] = kVersion;
    out["command"] = "table1";
    out["config"] = {{"n_particles", gas.n_particles}, {"mass_mev", m},          {"volume", gas.volume},
                     {"t_kelvin", config.t_kelvin},    {"t_mev", t_config},      {"beta_m_limit", beta_m_limit},
                     {"quadrature_order", rule.order}};

    const struct {
        Approach a;
        const char* key;
    } rels[] = {{Approach::FullCovariant, "full"}, {Approach::SemiCovariant, "semi"}, {Approach::Juttner, "juttner"}};

    nlohmann::json approaches;
    nlohmann::json e_over_nkt, cv_over_nk;
    for (const auto& [a, key] : rels) {
        const ThermoReport closed = table1_closed_forms(a, gas, t_config);
        const ThermoReport closed_limit = table1_closed_forms(a, gas, t_limit);
        const ThermoReport numeric = thermo_report(gas, a, t_limit, rule);
        nlohmann::json block;
        block["closed_form"] = report_to_json(closed);
        block["closed_form_at_beta_m_limit"] = report_to_json(closed_limit);
        block["numeric_at_beta_m_limit"] = report_to_json(numeric);
        block["relative_deviation"] = {{"free_energy", rel_dev(closed_limit.free_energy, numeric.free_energy)},
                                       {"entropy", rel_dev(closed_limit.entropy, numeric.entropy)},
                                       {"avg_energy", rel_dev(closed_limit.avg_energy, numeric.avg_energy)},
                                       {"specific_heat", rel_dev(closed_limit.specific_heat, numeric.specific_heat)},
                                       {"pressure", rel_dev(closed_limit.pressure, numeric.pressure)}};
        approaches[approach_name(a)] = block;
        e_over_nkt[key] = closed.avg_energy / (gas.n_particles * t_config);
        cv_over_nk[key] = closed.specific_heat / gas.n_particles;
    }
    out["approaches"] = approaches;
    out["avg_energy_over_NkT"] = e_over_nkt;
    out["specific_heat_over_Nk"] = cv_over_nk;

    return write_text_file(config.out, out.dump(2) + "\n");
}

int cmd_thermo(const RunConfig& config) {
    config.validate();
    const double m = config.resolve_mass_mev();
    const GasSpec gas{config.n_particles, m, config.volume};
    const QuadratureRule rule = gauss_laguerre_rule(config.order);
    const std::vector<double> grid = make_grid(config);
    const std::vector<Approach> approaches = config.approaches.empty() ? all_approaches() : config.approaches;

    struct Row {
        double t_kelvin, beta_m;
        Approach a;
        ThermoReport rep;
    };
    std::vector<Row> rows(grid.size() * approaches.size());
    parallel_for((int)rows.size(), [&](int idx) {
        const double b = grid[idx / approaches.size()];
        const Approach a = approaches[idx % approaches.size()];
        const double t_mev = m / b;
        Row& r = rows[idx];
        r.t_kelvin = t_mev / kBoltzmannMevPerK;
        r.beta_m = b;
        r.a = a;
        r.rep = thermo_report(gas, a, t_mev, rule, config.subtract_rest_mass);
    });

    std::ostringstream csv;
    csv << "# " << kCsvSchema << "\n# generator: " << kVersion << "\n";
    csv << "# command: thermo\n# quadrature_order: " << config.order << "\n";
    csv << "# gas: N=" << gas.n_particles << " mass_mev=" << fmt(m) << " volume=" << fmt(gas.volume)
        << " subtract_rest_mass=" << (config.subtract_rest_mass ? 1 : 0) << "\n";
    csv << "# units: energies MeV, S and c_V per k, P in MeV^4, V in MeV^-3\n";
    csv << "T_kelvin,beta_m,approach,F,S,P,E_avg,c_V,y_over_m3\n";
    for (const Row& r : rows) {
        if (!all_finite({r.rep.free_energy, r.rep.entropy, r.rep.pressure, r.rep.avg_energy, r.rep.specific_heat,
                         r.rep.y_over_m3})) {
            std::cerr << "non-finite thermodynamics at beta_m = " << r.beta_m << "\n";
            return kAccuracyError;
        }
        csv << fmt(r.t_kelvin) << ',' << fmt(r.beta_m) << ',' << approach_name(r.a) << ',' << fmt(r.rep.free_energy)
            << ',' << fmt(r.rep.entropy) << ',' << fmt(r.rep.pressure) << ',' << fmt(r.rep.avg_energy) << ','
            << fmt(r.rep.specific_heat) << ',' << fmt(r.rep.y_over_m3) << "\n";
    }
    return write_text_file(config.out, csv.str());
}

int cmd_simulate(const RunConfig& config) {
    config.validate();
    GasModel model;
    switch (config.model) {
        case ModelKind::PerfectSimple: model = GasModel::perfect_simple(); break;
        case ModelKind::PerfectCovariant: model = GasModel::perfect_covariant(); break;
        case ModelKind::RealGas: model = GasModel::real_gas({config.kappa, config.sigma}); break;
    }

    const auto t0 = std::chrono::steady_clock::now();
    SystemState state = init_state(model, config.sim_n, config.seed, config.box, config.momentum_scale, 0.0);
    if (config.boost_vx != 0.0) state = boosted(state, {config.boost_vx, 0.0, 0.0});

    const std::size_t n = state.size();
    FourVector p_initial;
    for (const Particle& pt : state.particles) p_initial += pt.p;

    std::ostringstream csv;
    csv << "# " << kCsvSchema << "\n# generator: " << kVersion << "\n";
    csv << "# command: simulate\n# model: " << model_name(config.model) << " n=" << n << " seed=" << config.seed
        << " dtau=" << fmt(config.dtau) << " steps=" << config.steps << "\n";
    csv << "tau,particle_id,q0,q1,q2,q3,p0,p1,p2,p3,phi_residual,chi_residual\n";

    double max_phi = 0.0, max_chi = 0.0, max_condition = 0.0;
    FourVector max_drift;
    auto emit = [&](const SystemState& s) -> int {
        const std::vector<double> res = constraint_values(model, s);
        for (std::size_t i = 0; i < n; ++i) {
            const Particle& pt = s.particles[i];
            const double phi = res[i];
            const double chi = res[n + i];
            max_phi = std::max(max_phi, std::fabs(phi));
            max_chi = std::max(max_chi, std::fabs(chi));
            if (!all_finite({pt.q.t, pt.q.x, pt.q.y, pt.q.z, pt.p.t, pt.p.x, pt.p.y, pt.p.z, phi, chi})) {
                std::cerr << "non-finite state at tau = " << s.tau << "\n";
                return kAccuracyError;
            }
            csv << fmt(s.tau) << ',' << i << ',' << fmt(pt.q.t) << ',' << fmt(pt.q.x) << ',' << fmt(pt.q.y) << ','
                << fmt(pt.q.z) << ',' << fmt(pt.p.t) << ',' << fmt(pt.p.x) << ',' << fmt(pt.p.y) << ',' << fmt(pt.p.z)
                << ',' << fmt(phi) << ',' << fmt(chi) << "\n";
        }
        return kOk;
    };

    int rc = emit(state);
    if (rc != kOk) return rc;
    for (int k = 0; k < config.steps; ++k) {
        try {
            state = step(model, state, config.dtau);
        } catch (const std::exception& e) {
            std::cerr << "step " << k << ": " << e.what() << "\n";
            return kAccuracyError;
        }
        max_condition = std::max(max_condition, c_matrix(model, state).condition_number);
        FourVector p_now;
        for (const Particle& pt : state.particles) p_now += pt.p;
        const FourVector d = p_now - p_initial;
        max_drift = {std::max(max_drift.t, std::fabs(d.t)), std::max(max_drift.x, std::fabs(d.x)),
                     std::max(max_drift.y, std::fabs(d.y)), std::max(max_drift.z, std::fabs(d.z))};
        rc = emit(state);
        if (rc != kOk) return rc;
    }
    const double wall =
        std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - t0).count();

    const double p_scale = std::max(component_norm(p_initial), 1e-300);
    nlohmann::json summary;
    summary["generator"] = kVersion;
    summary["command"] = "simulate";
    summary["model"] = model_name(config.model);
    summary["n"] = n;
    summary["seed"] = config.seed;
    summary["dtau"] = config.dtau;
    summary["steps"] = config.steps;
    summary["boost_vx"] = config.boost_vx;
    summary["max_phi_residual"] = max_phi;
    summary["max_chi_residual"] = max_chi;
    summary["max_condition_number"] = max_condition;
    summary["p_total_initial"] = {p_initial.t, p_initial.x, p_initial.y, p_initial.z};
    summary["p_total_max_drift"] = {max_drift.t, max_drift.x, max_drift.y, max_drift.z};
    summary["p_total_max_relative_drift"] =
        std::max({max_drift.t, max_drift.x, max_drift.y, max_drift.z}) / p_scale;
    summary["wall_time_s"] = wall;

    rc = write_text_file(config.out, csv.str());
    if (rc != kOk) return rc;
    return write_text_file(config.out + ".summary.json", summary.dump(2) + "\n");
}

namespace {

struct SelfTest {
    std::ostream& log;
    int failures = 0;

    void check(const std::string& name, bool ok) {
        log << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    }
};

} // namespace

int cmd_selftest(std::ostream& log) {
    SelfTest t{log};
    try {
        // quadrature
        {
            const QuadratureRule r15 = gauss_laguerre_rule(15);
            double sum = 0.0;
            for (double w : r15.weights) sum += w;
            t.check("gauss-laguerre(15) weights sum to 1", std::fabs(sum - 1.0) <= 1e-12);
            const double g4 = integrate_laguerre([](double x) { return x * x * x; }, r15);
            t.check("gauss-laguerre(15) integrates x^3 to Gamma(4)", std::fabs(g4 / 6.0 - 1.0) <= 1e-10);
        }
        // bessel
        {
            bool ok = true;
            for (const double x : {0.1, 1.0, 10.0, 100.0}) {
                const double lhs = bessel_k_scaled(2, x) - bessel_k_scaled(0, x);
                const double rhs = 2.0 * bessel_k_scaled(1, x) / x;
                ok &= std::fabs(lhs / rhs - 1.0) <= 1e-10;
            }
            t.check("bessel recurrence K2 - K0 = 2 K1 / x", ok);
        }
        t.check("ln_gamma(5) = ln 24", std::fabs(ln_gamma(5.0) - std::log(24.0)) <= 1e-12);
        // boost invariance
        {
            std::mt19937_64 rng(7);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            bool ok = true;
            for (int k = 0; k < 200; ++k) {
                const FourVector a{u(rng) * 3, u(rng), u(rng), u(rng)};
                const FourVector b{u(rng) * 3, u(rng), u(rng), u(rng)};
                const Vec3 v{0.99 * u(rng), 0.99 * u(rng) * 0.5, 0.99 * u(rng) * 0.5};
                if (v.norm2() >= 1.0) continue;
                const double before = dot(a, b);
                const double after = dot(boost(a, v), boost(b, v));
                const double scale = std::max({1.0, std::fabs(before), component_norm(a) * component_norm(b)});
                ok &= std::fabs(after - before) <= 1e-10 * scale;
            }
            t.check("minkowski dot invariant under boosts", ok);
        }
        // quadrature vs closed forms
        {
            const QuadratureRule r64 = gauss_laguerre_rule(64);
            bool ok = true;
            for (const double b : {0.1, 0.5, 2.0, 10.0, 50.0}) {
                ok &= std::fabs(y_over_m3_quadrature(Approach::SemiCovariant, b, r64) /
                                    y_over_m3(Approach::SemiCovariant, b, r64) -
                                1.0) <= 1e-8;
                ok &= std::fabs(y_over_m3_quadrature(Approach::Juttner, b, r64) /
                                    y_over_m3(Approach::Juttner, b, r64) -
                                1.0) <= 1e-8;
            }
            t.check("quadrature matches Bessel closed forms to 1e-8 (order 64)", ok);
        }
        // orderings and limits
        {
            const QuadratureRule r64 = gauss_laguerre_rule(64);
            const double b = 0.01;
            const double yf = y_over_m3(Approach::FullCovariant, b, r64);
            const double ys = y_over_m3(Approach::SemiCovariant, b, r64);
            const double yj = y_over_m3(Approach::Juttner, b, r64);
            t.check("ultra-relativistic ordering Y_jut > Y_semi > Y_full", yj > ys && ys > yf);
            bool ok = true;
            for (const double bb : {100.0, 1000.0}) {
                const double tol = bb >= 1000.0 ? 0.002 : 0.02;
                const double yn = y_over_m3(Approach::NonRelativistic, bb, r64);
                for (const Approach a : {Approach::FullCovariant, Approach::SemiCovariant, Approach::Juttner})
                    ok &= std::fabs(y_over_m3(a, bb, r64) / yn - 1.0) <= tol;
            }
            t.check("low-temperature agreement with the non-relativistic Y", ok);
        }
        // equation of state + ultra-relativistic energies
        {
            const QuadratureRule r96 = gauss_laguerre_rule(96);
            std::mt19937_64 rng(11);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            bool ok = true;
            for (int k = 0; k < 5; ++k) {
                const GasSpec gas{1 + (int)(u(rng) * 500), 1.0, 0.1 + 10.0 * u(rng)};
                const double b = std::exp(std::log(1e-3) + u(rng) * std::log(1e5));
                const ThermoReport rep = thermo_report(gas, all_approaches()[k % 4], 1.0 / b, r96);
                ok &= std::fabs(rep.pressure * gas.volume / (gas.n_particles / b) - 1.0) <= 1e-12;
            }
            t.check("equation of state P V = N k T", ok);
            const GasSpec gas{10, 1.0, 1.0};
            bool ok2 = true;
            const double expected[] = {1.0, 2.0, 3.0};
            const Approach rel[] = {Approach::FullCovariant, Approach::SemiCovariant, Approach::Juttner};
            for (int i = 0; i < 3; ++i) {
                const ThermoReport rep = thermo_report(gas, rel[i], 1.0 / 1e-4, r96);
                ok2 &= std::fabs(rep.avg_energy / (gas.n_particles * 1e4) / expected[i] - 1.0) <= 0.01;
                ok2 &= std::fabs(rep.specific_heat / gas.n_particles / expected[i] - 1.0) <= 0.01;
            }
            t.check("ultra-relativistic <E>/NkT and c_V/Nk reach 1, 2, 3", ok2);
        }
        // multipliers
        {
            std::mt19937_64 rng(23);
            std::normal_distribution<double> g(0.0, 1.0);
            bool ok = true;
            for (int k = 0; k < 20; ++k) {
                SystemState s;
                s.particles.resize(3);
                for (Particle& pt : s.particles) {
                    pt.mass = 0.5 + std::fabs(g(rng));
                    pt.q = {g(rng), g(rng), g(rng), g(rng)};
                    pt.p = {0.0, g(rng), g(rng), g(rng)};
                    pt.p.t = std::sqrt(pt.p.spatial().norm2() + pt.mass * pt.mass);
                }
                const std::vector<double> ls = multipliers(GasModel::perfect_simple(), s);
                const std::vector<double> lc = multipliers(GasModel::perfect_covariant(), s);
                for (std::size_t i = 0; i < 3; ++i) {
                    const Particle& pt = s.particles[i];
                    ok &= std::fabs(ls[i] - pt.mass / pt.p.t) <= 1e-10;
                    ok &= std::fabs(lc[i] - pt.mass * pt.mass / dot(pt.p, pt.p)) <= 1e-10;
                }
            }
            t.check("multiplier closed forms m/p^0 and m^2/p^2", ok);
        }
        // short trajectories
        {
            const GasModel model = GasModel::perfect_covariant();
            SystemState s = init_state(model, 3, 5, 4.0, 0.5, 0.0);
            const SystemState s0 = s;
            for (int k = 0; k < 200; ++k) s = step(model, s, 0.01);
            double max_res = max_constraint_residual(model, s);
            bool straight = true;
            for (std::size_t i = 0; i < s.size(); ++i) {
                const FourVector expect = s0.particles[i].q + s0.particles[i].p * (s.tau / s0.particles[i].mass);
                straight &= component_norm(s.particles[i].q - expect) <= 1e-9;
            }
            t.check("perfect gas: constraints preserved over 200 steps", max_res <= 1e-10);
            t.check("perfect gas: free world lines are straight", straight);

            const GasModel rg = GasModel::real_gas({0.01, 1.0});
            SystemState r = init_state(rg, 2, 5, 6.0, 0.05, 0.0);
            FourVector p0;
            for (const Particle& pt : r.particles) p0 += pt.p;
            for (int k = 0; k < 200; ++k) r = step(rg, r, 0.01);
            FourVector p1;
            for (const Particle& pt : r.particles) p1 += pt.p;
            t.check("real gas: constraints preserved over 200 steps", max_constraint_residual(rg, r) <= 1e-8);
            t.check("real gas: total four-momentum conserved",
                    component_norm(p1 - p0) <= 1e-8 * component_norm(p0));
        }
        // thermodynamic identity
        {
            const QuadratureRule r64 = gauss_laguerre_rule(64);
            bool ok = true;
            for (const Approach a : all_approaches()) {
                for (const double b : {1e-3, 1.0, 100.0}) {
                    const GasSpec gas{50, 2.0, 3.0};
                    const double temp = gas.mass / b;
                    const ThermoReport rep = thermo_report(gas, a, temp, r64);
                    const double lhs = rep.free_energy;
                    const double rhs = rep.avg_energy - temp * rep.entropy;
                    ok &= std::fabs(lhs - rhs) <= 1e-6 * std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
                }
            }
            t.check("identity F = <E> - T S", ok);
        }
    } catch (const std::exception& e) {
        t.check(std::string("unexpected exception: ") + e.what(), false);
    }

    log << (t.failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return t.failures == 0 ? kOk : kAccuracyError;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"covstat: covariant equilibrium statistical mechanics of the relativistic perfect gas"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> approach_names;
    std::string model_name_arg = "perfect_covariant";

    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--beta-m-min", cfg.beta_m_min, "grid minimum of beta*m");
        sub->add_option("--beta-m-max", cfg.beta_m_max, "grid maximum of beta*m");
        sub->add_option("--points", cfg.points, "number of grid points");
        sub->add_flag("--linear", [&cfg](std::int64_t) { cfg.log_spaced = false; }, "linear instead of log grid");
    };
    auto add_gas = [&](CLI::App* sub) {
        sub->add_option("--gas", cfg.gas_species, "species: hydrogen|helium|neon|argon");
        sub->add_option("--mass-mev", cfg.mass_mev, "explicit particle mass in MeV (overrides --gas)");
        sub->add_option("--n", cfg.n_particles, "particle number N");
        sub->add_option("--volume", cfg.volume, "rest-frame volume V in natural units");
        sub->add_option("--t-kelvin", cfg.t_kelvin, "reference temperature in kelvin");
        sub->add_option("--species-file", cfg.species_file, "species mass table (JSON)");
        sub->add_flag("--subtract-rest-mass", cfg.subtract_rest_mass, "count energies from the rest mass");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--order", cfg.order, "Gauss-Laguerre order (1..128)");
        sub->add_option("--out", cfg.out, "output path")->required();
        sub->add_option("--approach", approach_names, "full|semi|juttner|nonrel (repeatable)");
    };

    CLI::App* fig = app.add_subcommand("figure1", "sweep Y/m^3 over a beta*m grid (CSV + meta JSON)");
    add_grid(fig);
    add_common(fig);

    CLI::App* tab = app.add_subcommand("table1", "ultra-relativistic closed forms vs numerics (JSON)");
    add_gas(tab);
    add_common(tab);

    CLI::App* thermo = app.add_subcommand("thermo", "thermodynamic sweep (CSV)");
    add_grid(thermo);
    add_gas(thermo);
    add_common(thermo);

    CLI::App* sim = app.add_subcommand("simulate", "constrained-dynamics trajectory (CSV + summary JSON)");
    sim->add_option("--model", model_name_arg, "perfect_simple|perfect_covariant|real_gas");
    sim->add_option("--n", cfg.sim_n, "particle count");
    sim->add_option("--seed", cfg.seed, "RNG seed");
    sim->add_option("--dtau", cfg.dtau, "step size in tau");
    sim->add_option("--steps", cfg.steps, "number of steps");
    sim->add_option("--box", cfg.box, "initial position cube side");
    sim->add_option("--momentum-scale", cfg.momentum_scale, "Gaussian momentum scale");
    sim->add_option("--kappa", cfg.kappa, "Lennard-Jones energy parameter");
    sim->add_option("--sigma", cfg.sigma, "Lennard-Jones length parameter");
    sim->add_option("--boost-vx", cfg.boost_vx, "boost the initial state along x");
    sim->add_option("--out", cfg.out, "output path")->required();

    CLI::App* self = app.add_subcommand("selftest", "run the invariant battery of every module");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsageError;
    }

    try {
        for (const std::string& name : approach_names) {
            if (name == "full") cfg.approaches.push_back(Approach::FullCovariant);
            else if (name == "semi") cfg.approaches.push_back(Approach::SemiCovariant);
            else if (name == "juttner") cfg.approaches.push_back(Approach::Juttner);
            else if (name == "nonrel") cfg.approaches.push_back(Approach::NonRelativistic);
            else throw std::domain_error("unknown approach: " + name);
        }
        if (sim->parsed()) {
            if (model_name_arg == "perfect_simple") cfg.model = ModelKind::PerfectSimple;
            else if (model_name_arg == "perfect_covariant") cfg.model = ModelKind::PerfectCovariant;
            else if (model_name_arg == "real_gas") cfg.model = ModelKind::RealGas;
            else throw std::domain_error("unknown model: " + model_name_arg);
        }

        if (fig->parsed()) return cmd_figure1(cfg);
        if (tab->parsed()) return cmd_table1(cfg);
        if (thermo->parsed()) return cmd_thermo(cfg);
        if (sim->parsed()) return cmd_simulate(cfg);
        if (self->parsed()) return cmd_selftest(std::cout);
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const accuracy_error& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return kAccuracyError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAccuracyError;
    }
    return kUsageError;
}

} // namespace covstat
