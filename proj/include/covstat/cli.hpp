#ifndef COVSTAT_CLI_HPP
#define COVSTAT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "covstat/dynamics.hpp"
#include "covstat/partition.hpp"

namespace covstat {

/// Exit codes of every command.
enum ExitCode : int { kOk = 0, kUsageError = 1, kAccuracyError = 2, kIoError = 3 };

/// Boltzmann constant used for the kelvin <-> natural-units boundary.
constexpr double kBoltzmannMevPerK = 8.617333262e-11;

/// Parsed command-line configuration shared by all subcommands.
struct RunConfig {
    // grid
    double beta_m_min = 0.01;
    double beta_m_max = 100.0;
    int points = 50;
    bool log_spaced = true;

    // gas
    std::vector<Approach> approaches; // empty => all four
    std::string gas_species = "hydrogen";
    double mass_mev = 0.0; // > 0 overrides the species table
    int n_particles = 100;
    double volume = 1.0; // natural units (1/energy^3)
    double t_kelvin = 1e13;
    bool subtract_rest_mass = false;
    std::string species_file = "data/species.json";

    // numerics
    int order = 15;

    // output
    std::string out;

    // simulation block
    ModelKind model = ModelKind::PerfectCovariant;
    int sim_n = 5;
    std::uint64_t seed = 1;
    double dtau = 0.01;
    int steps = 1000;
    double box = 10.0;
    double momentum_scale = 0.5;
    double kappa = 0.01;
    double sigma = 1.0;
    double boost_vx = 0.0;

    void validate() const; // throws std::domain_error on bad values
    double resolve_mass_mev() const;
};

/// Figure-style sweep of Y/m^3 for all four approaches over the beta m grid.
/// Writes a CSV plus a sidecar JSON (<out>.meta.json) with the quadrature
/// order and per-row order-doubling convergence flags.
int cmd_figure1(const RunConfig& config);

/// Ultra-relativistic closed forms and their numeric counterparts at
/// beta m = 1e-4, as a JSON report keyed by approach.
int cmd_table1(const RunConfig& config);

/// Thermodynamic sweep: one CSV row per (grid point, approach) with
/// T_kelvin, beta_m, F, S, P, <E>, c_V and Y/m^3.
int cmd_thermo(const RunConfig& config);

/// Constrained-dynamics trajectory: per-step CSV rows for every particle
/// plus a summary JSON (<out>.summary.json) with residual maxima, total
/// four-momentum drift and wall time.
int cmd_simulate(const RunConfig& config);

/// Compact invariant battery over every module; one line per check.
int cmd_selftest(std::ostream& log);

/// Parse argv and dispatch. Returns a process exit code.
int run_cli(int argc, char** argv);

} // namespace covstat

#endif // COVSTAT_CLI_HPP
