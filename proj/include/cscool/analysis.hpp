#pragma once
//
// Steady-state analysis drivers: the closed-form weak-damping occupation
// formula and its limits, generic one-parameter sweeps, ground-state scans
// over the cavity linewidth, and the named figure presets.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cscool/config.hpp"

namespace cscool {

// --- analytic steady occupation --------------------------------------------
// Simplified single-axis notation: coupling |g|, detuning delta, total
// position-localization heating Gamma, cavity half-linewidth kappa,
// mechanical frequency Omega; valid for gamma << Omega, kappa, |g|.
struct AnalyticOccInput {
    double g = 0;     // rad/s
    double delta = 0; // rad/s
    double Gamma = 0; // rad/s
    double kappa = 0; // rad/s
    double Omega = 0; // rad/s
};

// n_ss = (A - B + C) / (4|g|^2 delta kappa Omega [4|g|^2 delta -
// (delta^2+kappa^2) Omega]).  Sets *near_singular when the denominator is
// below 1e-6 of its largest constituent (formula unreliable there).
double analytic_occupation(const AnalyticOccInput& in,
                           bool* near_singular = nullptr);

// --- point evaluation -------------------------------------------------------
struct PointResult {
    std::string status = "ok"; // ok | Ambiguous | Unstable | NoRealRoot | ...
    std::array<double, 3> occupation = {0, 0, 0};
    std::array<double, 3> temperature = {0, 0, 0};  // K
    std::array<double, 3> shift = {0, 0, 0};        // m, 2 beta_j r_j0
    std::array<double, 3> Omega_prime = {0, 0, 0};  // rad/s
    std::array<double, 3> g_abs = {0, 0, 0};        // rad/s, |g_j'|
    std::array<double, 3> Gamma_total = {0, 0, 0};  // rad/s
    double photon_number = 0;
    double kappa_prime = 0;    // rad/s
    double delta_prime = 0;    // rad/s
    double stability_margin = 0; // rad/s
};

// Build the model, solve the steady state, collect observables.  Physics
// failures are captured into status (never thrown); an ambiguous displacement
// root downgrades "ok" to "Ambiguous" (the third stability state).
PointResult evaluate_point(const SystemConfig& cfg);

// FWHM of the main motional peak per axis (rad/s); needs a stable point.
std::array<double, 3> evaluate_fwhm(const SystemConfig& cfg);

// --- sweeps -----------------------------------------------------------------
struct SweepSpec {
    SystemConfig base;
    std::string parameter;      // config key, e.g. "gas_pressure", "phi"
    std::vector<double> values; // SI / rad/s
    bool with_fwhm = false;     // also compute spectra (slower)
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows; // numeric part, status kept aside
    std::vector<std::string> status;       // one per row
};

// Assign one overridable numeric field by its config-file key.
// Throws ConfigError for unknown keys.
void set_config_field(SystemConfig& cfg, const std::string& key, double value);

// Evaluate every grid point (in parallel, gathered by index).  Per-point
// failures are recorded in the status column and leave NaN observables.
SweepTable run_sweep(const SweepSpec& spec);

// Linewidth scan for ground-state cooling: run_sweep over cavity_halfwidth
// plus derived ratio columns (kappa'/|g_j'|) and the analytic-occupation
// comparison along `axis`.
SweepTable ground_state_scan(const SweepSpec& spec, int axis);

// Tweezer power minimizing the total heating rate along `axis`
// (golden-section search on [1 mW, 10 W]).
double optimal_tweezer_power(const SystemConfig& base, int axis,
                             double p_lo = 1e-3, double p_hi = 10.0);

// --- figure presets ---------------------------------------------------------
// Emit the CSV datasets behind the named preset figure ("fig2".."fig9") into
// outdir, plus a JSON manifest; returns the written file paths.
std::vector<std::string> figure_driver(const std::string& name,
                                       const std::string& outdir);

// All valid figure names, in order.
const std::vector<std::string>& figure_names();

// Static-partition parallel loop; thread count from CSCOOL_THREADS (default:
// hardware concurrency, capped at 16).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace cscool
