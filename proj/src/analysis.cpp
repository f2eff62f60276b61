#include "cscool/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include <json.hpp>

#include "cscool/constants.hpp"
#include "cscool/dynamics.hpp"
#include "cscool/errors.hpp"
#include "cscool/io.hpp"
#include "cscool/model.hpp"
#include "cscool/spectra.hpp"

namespace cscool {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sq(double x) { return x * x; }
} // namespace

// --- analytic occupation ----------------------------------------------------

double analytic_occupation(const AnalyticOccInput& in, bool* near_singular) {
    const double g2 = sq(in.g);
    const double d = in.delta, k = in.kappa, Om = in.Omega, G = in.Gamma;
    const double dk2 = d * d + k * k;

    const double A = 2.0 * g2 * g2 * d *
                     (d * d * k + k * k * k + 4.0 * d * Om * (G - k) +
                      2.0 * k * Om * Om);
    const double B = G * Om * dk2 * (k * k + sq(d - Om)) * (k * k + sq(d + Om));
    const double C =
        g2 * (-k * Om * dk2 * (k * k + sq(d - Om)) +
              2.0 * G * d *
                  (2.0 * std::pow(Om, 4) + Om * Om * (3.0 * k * k - 5.0 * d * d) +
                   dk2 * dk2));

    const double f1 = 4.0 * g2 * d;
    const double f2 = f1 - dk2 * Om;
    const double denom = f1 * k * Om * f2;
    // The denominator is a difference of the two scattering/loss channels;
    // when they nearly cancel the formula loses validity.
    const double scale = std::max({std::abs(f1 * k * Om * f1),
                                   std::abs(f1 * k * Om * dk2 * Om), 1e-300});
    if (near_singular) *near_singular = std::abs(denom) < 1e-6 * scale;
    return (A - B + C) / denom;
}

// --- parallel loop ----------------------------------------------------------

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned nt = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("CSCOOL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) nt = static_cast<unsigned>(v);
    }
    nt = std::clamp(nt, 1u, 16u);
    if (nt == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& th : pool) th.join();
}

// --- config field assignment ------------------------------------------------

void set_config_field(SystemConfig& cfg, const std::string& key, double value) {
    if (key == "tweezer_power") cfg.tweezer_power = value;
    else if (key == "tweezer_wavelength") cfg.tweezer_wavelength = value;
    else if (key == "tweezer_waist") cfg.tweezer_waist = value;
    else if (key == "asym_x") cfg.asym_x = value;
    else if (key == "asym_y") cfg.asym_y = value;
    else if (key == "cavity_length") cfg.cavity_length = value;
    else if (key == "cavity_waist") cfg.cavity_waist = value;
    else if (key == "cavity_halfwidth") cfg.cavity_halfwidth = value;
    else if (key == "particle_radius") cfg.particle_radius = value;
    else if (key == "rel_permittivity") cfg.rel_permittivity = value;
    else if (key == "mass_density") cfg.mass_density = value;
    else if (key == "theta") cfg.theta = value;
    else if (key == "phi") cfg.phi = value;
    else if (key == "gas_pressure") cfg.gas_pressure = value;
    else if (key == "gas_temperature") cfg.gas_temperature = value;
    else if (key == "detuning_target") {
        cfg.detuning_mode = DetuningMode::Target;
        cfg.detuning = value;
    } else if (key == "detuning_bare") {
        cfg.detuning_mode = DetuningMode::Bare;
        cfg.detuning = value;
    } else if (key == "sigma_x") cfg.sigma[0] = value;
    else if (key == "sigma_y") cfg.sigma[1] = value;
    else if (key == "sigma_z") cfg.sigma[2] = value;
    else if (key == "displacement_psd_x") cfg.displacement_psd[0] = value;
    else if (key == "displacement_psd_y") cfg.displacement_psd[1] = value;
    else if (key == "displacement_psd_z") cfg.displacement_psd[2] = value;
    else throw ConfigError("unknown sweep parameter: " + key);
}

// --- point evaluation -------------------------------------------------------

PointResult evaluate_point(const SystemConfig& cfg) {
    PointResult r;
    r.occupation = {kNaN, kNaN, kNaN};
    r.temperature = {kNaN, kNaN, kNaN};
    r.shift = {kNaN, kNaN, kNaN};
    r.Omega_prime = {kNaN, kNaN, kNaN};
    r.g_abs = {kNaN, kNaN, kNaN};
    r.Gamma_total = {kNaN, kNaN, kNaN};
    r.photon_number = kNaN;
    r.kappa_prime = kNaN;
    r.delta_prime = kNaN;
    r.stability_margin = kNaN;

    try {
        const Model m = build_model(cfg);
        r.shift = m.disp.equilibrium_shift;
        r.photon_number = m.disp.photon_number;
        r.kappa_prime = m.mc.kappa_prime;
        r.delta_prime = m.mc.delta_prime;
        r.Omega_prime = m.mc.Omega_prime;
        r.Gamma_total = m.nr.Gamma_total;
        for (int j = 0; j < 3; ++j) r.g_abs[j] = std::abs(m.mc.g_prime[j]);

        const DriftModel dm = build_drift(m.mc, m.nr);
        const StabilityReport rep = stability(dm);
        r.stability_margin = rep.margin;
        if (!rep.stable) {
            r.status = m.disp.ambiguous_root ? "Ambiguous" : "Unstable";
            return r;
        }
        const MomentState ss = steady_state(dm);
        const Temperatures temps = temperatures(ss, m.mc);
        r.occupation = temps.occ;
        r.temperature = temps.T;
        // A close competitor root means stability itself is uncertain: the
        // third state between stable and unstable.
        if (m.disp.ambiguous_root) r.status = "Ambiguous";
    } catch (const PhysicsError& e) {
        r.status = e.kind();
    }
    return r;
}

std::array<double, 3> evaluate_fwhm(const SystemConfig& cfg) {
    const Model m = build_model(cfg);
    const DriftModel dm = build_drift(m.mc, m.nr);
    const MomentState ss = steady_state(dm);
    std::array<double, 3> f;
    for (int j = 0; j < 3; ++j)
        f[static_cast<std::size_t>(j)] =
            psd(dm, ss, j, default_omega_grid(m.mc, 2048)).fwhm_main;
    return f;
}

// --- sweeps -----------------------------------------------------------------

namespace {

bool frequency_like(const std::string& key) {
    return key == "cavity_halfwidth" || key == "detuning_target" ||
           key == "detuning_bare";
}

struct SweepData {
    std::vector<PointResult> points;
    std::vector<std::array<double, 3>> fwhm; // empty unless requested
};

SweepData sweep_points(const SweepSpec& spec) {
    SweepData out;
    out.points.resize(spec.values.size());
    if (spec.with_fwhm)
        out.fwhm.assign(spec.values.size(), {kNaN, kNaN, kNaN});
    parallel_for(spec.values.size(), [&](std::size_t i) {
        SystemConfig cfg = spec.base;
        set_config_field(cfg, spec.parameter, spec.values[i]);
        out.points[i] = evaluate_point(cfg);
        if (spec.with_fwhm && out.points[i].status != "Unstable") {
            try {
                out.fwhm[i] = evaluate_fwhm(cfg);
            } catch (const PhysicsError&) {
                // leave NaN; status already captured by evaluate_point
            }
        }
    });
    return out;
}

// Flatten into boundary-ready columns (frequencies in Hz).
SweepTable assemble_table(const SweepSpec& spec, const SweepData& data) {
    SweepTable t;
    const bool par_hz = frequency_like(spec.parameter);
    t.columns = {spec.parameter + (par_hz ? "_Hz" : ""),
                 "occupation_x", "occupation_y", "occupation_z",
                 "temperature_x_K", "temperature_y_K", "temperature_z_K",
                 "shift_x_m", "shift_y_m", "shift_z_m",
                 "photon_number",
                 "kappa_prime_Hz", "delta_prime_Hz",
                 "Omega_prime_x_Hz", "Omega_prime_y_Hz", "Omega_prime_z_Hz",
                 "g_abs_x_Hz", "g_abs_y_Hz", "g_abs_z_Hz",
                 "Gamma_total_x_Hz", "Gamma_total_y_Hz", "Gamma_total_z_Hz",
                 "stability_margin_Hz"};
    if (!data.fwhm.empty())
        for (const char* c : {"fwhm_x_Hz", "fwhm_y_Hz", "fwhm_z_Hz"})
            t.columns.push_back(c);

    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        const PointResult& p = data.points[i];
        std::vector<double> row;
        row.push_back(par_hz ? spec.values[i] / kTwoPi : spec.values[i]);
        for (double v : p.occupation) row.push_back(v);
        for (double v : p.temperature) row.push_back(v);
        for (double v : p.shift) row.push_back(v);
        row.push_back(p.photon_number);
        row.push_back(p.kappa_prime / kTwoPi);
        row.push_back(p.delta_prime / kTwoPi);
        for (double v : p.Omega_prime) row.push_back(v / kTwoPi);
        for (double v : p.g_abs) row.push_back(v / kTwoPi);
        for (double v : p.Gamma_total) row.push_back(v / kTwoPi);
        row.push_back(p.stability_margin / kTwoPi);
        if (!data.fwhm.empty())
            for (double v : data.fwhm[i]) row.push_back(v / kTwoPi);
        t.rows.push_back(std::move(row));
        t.status.push_back(p.status);
    }
    return t;
}

} // namespace

SweepTable run_sweep(const SweepSpec& spec) {
    return assemble_table(spec, sweep_points(spec));
}

SweepTable ground_state_scan(const SweepSpec& spec, int axis) {
    const SweepData data = sweep_points(spec);
    SweepTable t = assemble_table(spec, data);
    t.columns.push_back("kappa_over_g");
    t.columns.push_back("occupation_analytic");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const PointResult& p = data.points[i];
        const double g = p.g_abs[static_cast<std::size_t>(axis)];
        t.rows[i].push_back(p.kappa_prime / g);
        AnalyticOccInput in;
        in.g = g;
        in.delta = p.delta_prime;
        in.Gamma = p.Gamma_total[static_cast<std::size_t>(axis)];
        in.kappa = p.kappa_prime;
        in.Omega = p.Omega_prime[static_cast<std::size_t>(axis)];
        bool singular = false;
        const double n = analytic_occupation(in, &singular);
        t.rows[i].push_back(singular ? kNaN : n);
    }
    return t;
}

double optimal_tweezer_power(const SystemConfig& base, int axis, double p_lo,
                             double p_hi) {
    // Golden-section on log(P): Gamma_j(P) is smooth with a single interior
    // minimum (falling gas term vs rising recoil/displacement terms).
    auto objective = [&](double logp) {
        SystemConfig cfg = base;
        cfg.tweezer_power = std::exp(logp);
        try {
            return build_model(cfg).nr.Gamma_total[static_cast<std::size_t>(axis)];
        } catch (const PhysicsError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(p_lo), b = std::log(p_hi);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    for (int it = 0; it < 80 && (b - a) > 1e-6; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
    }
    return std::exp((a + b) / 2.0);
}

// --- figure presets ---------------------------------------------------------

namespace {

using nlohmann::json;

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
    return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

SystemConfig base_config() { return parse_config_text(default_config_template()); }

CsvTable table_to_csv(const SweepTable& t, const std::string& title) {
    CsvTable c;
    c.comments = {title, "frequencies in Hz (ordinary), lengths in m, temperatures in K"};
    c.columns = t.columns;
    c.columns.push_back("status");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        std::vector<std::string> row;
        for (double v : t.rows[i]) row.push_back(format_sig(v));
        row.push_back(t.status[i]);
        c.rows.push_back(std::move(row));
    }
    return c;
}

std::string emit_sweep(const SweepSpec& spec, const std::string& path,
                       const std::string& title) {
    write_csv_atomic(path, table_to_csv(run_sweep(spec), title));
    return path;
}

// Trajectory CSV: time + per-axis temperature/occupation columns.
std::string emit_trajectory(const DriftModel& dm, const MomentState& s0,
                            double t_end, int n_out, const std::string& path,
                            const std::string& title,
                            const std::vector<double>* analytic_Tz = nullptr) {
    const std::vector<MomentState> traj = evolve(dm, s0, t_end, n_out);
    CsvTable c;
    c.comments = {title, "temperatures in K"};
    c.columns = {"t_s", "temperature_x_K", "temperature_y_K", "temperature_z_K",
                 "occupation_x", "occupation_y", "occupation_z"};
    if (analytic_Tz) c.columns.push_back("temperature_z_analytic_K");
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const Temperatures temps = temperatures(traj[i], dm.mc);
        std::vector<double> row = {traj[i].time, temps.T[0], temps.T[1],
                                   temps.T[2], temps.occ[0], temps.occ[1],
                                   temps.occ[2]};
        if (analytic_Tz) row.push_back((*analytic_Tz)[i]);
        c.add_row_values(row);
    }
    write_csv_atomic(path, c);
    return path;
}

// Build a model whose operational detuning equals Omega_axis' (the frequency
// itself does not depend on the detuning, so one provisional build fixes it).
double omega_prime_of(const SystemConfig& cfg, int axis) {
    SystemConfig probe = cfg;
    probe.detuning_mode = DetuningMode::Target;
    probe.detuning = kTwoPi * 400e3;
    return build_model(probe).mc.Omega_prime[static_cast<std::size_t>(axis)];
}

// Shared scaffolding for the linewidth scans: set the preset, resolve the
// axis-resonant detuning, scale the kappa grid to the coupling magnitude.
struct LinewidthScan {
    SweepSpec spec;
    double g_ref = 0;  // rad/s, |g_axis'| at the reference linewidth
    double p_t = 0;    // W, tweezer power actually used
};

LinewidthScan linewidth_scan(SystemConfig cfg, int axis, int n_pts) {
    LinewidthScan out;
    cfg.detuning_mode = DetuningMode::Target;
    cfg.detuning = omega_prime_of(cfg, axis);
    out.p_t = cfg.tweezer_power;
    out.g_ref = std::abs(
        build_model(cfg).mc.g_prime[static_cast<std::size_t>(axis)]);
    out.spec.base = cfg;
    out.spec.parameter = "cavity_halfwidth";
    out.spec.values = log_grid(0.05 * out.g_ref, 50.0 * out.g_ref, n_pts);
    return out;
}

} // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {
        "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
    return names;
}

std::vector<std::string> figure_driver(const std::string& name,
                                       const std::string& outdir) {
    std::vector<std::string> files;
    json manifest;
    manifest["figure"] = name;
    auto path = [&](const std::string& leaf) { return outdir + "/" + leaf; };

    if (name == "fig2") {
        // Equilibrium displacements vs position in the cavity and vs
        // polarization angle.
        SweepSpec s;
        s.base = base_config();
        s.parameter = "phi";
        s.values = lin_grid(0.0, kPi / 2.0, 81);
        files.push_back(emit_sweep(s, path("fig2_vs_phi.csv"),
                                   "equilibrium displacements vs phi, theta = 10 deg"));
        s.base.phi = kPi / 4.0;
        s.parameter = "theta";
        s.values = lin_grid(0.0, kPi / 2.0, 81);
        files.push_back(emit_sweep(s, path("fig2_vs_theta.csv"),
                                   "equilibrium displacements vs theta, phi = pi/4"));
        manifest["presets"] = {{"detuning_target_Hz", 400e3},
                               {"tweezer_power_W", 0.5}};
    } else if (name == "fig3") {
        // Steady temperatures vs gas pressure for five cavity positions.
        const std::array<double, 5> phis = {0.0, kPi / 8, kPi / 4,
                                            3 * kPi / 8, kPi / 2};
        const std::array<const char*, 5> tags = {"phi0", "phi22", "phi45",
                                                 "phi67", "phi90"};
        for (std::size_t i = 0; i < phis.size(); ++i) {
            SweepSpec s;
            s.base = base_config();
            s.base.phi = phis[i];
            s.parameter = "gas_pressure";
            s.values = log_grid(1e-5 * 100.0, 1.0 * 100.0, 31); // mbar -> Pa
            files.push_back(emit_sweep(
                s, path(std::string("fig3_") + tags[i] + ".csv"),
                "steady temperatures vs pressure (Pa)"));
        }
    } else if (name == "fig4") {
        // (a) motional PSDs at 3e-3 mbar, phi = pi/4; (b) FWHM vs pressure.
        SystemConfig cfg = base_config();
        cfg.phi = kPi / 4.0;
        cfg.gas_pressure = 3e-3 * 100.0;
        const Model m = build_model(cfg);
        const DriftModel dm = build_drift(m.mc, m.nr);
        const MomentState ss = steady_state(dm);
        const std::vector<double> grid = default_omega_grid(m.mc, 4096);
        std::array<SpectrumResult, 3> spectra;
        for (int j = 0; j < 3; ++j)
            spectra[static_cast<std::size_t>(j)] = psd(dm, ss, j, grid);
        CsvTable c;
        c.comments = {"motional PSDs, P = 3e-3 mbar, phi = pi/4",
                      "S columns are two-sided PSDs in m^2/Hz"};
        c.columns = {"omega_Hz", "S_x_m2_per_Hz", "S_y_m2_per_Hz",
                     "S_z_m2_per_Hz"};
        for (std::size_t i = 0; i < grid.size(); ++i)
            c.add_row_values({grid[i] / kTwoPi, kTwoPi * spectra[0].S[i],
                              kTwoPi * spectra[1].S[i], kTwoPi * spectra[2].S[i]});
        write_csv_atomic(path("fig4_psd.csv"), c);
        files.push_back(path("fig4_psd.csv"));

        SweepSpec s;
        s.base = cfg;
        s.parameter = "gas_pressure";
        s.values = log_grid(1e-5 * 100.0, 1.0 * 100.0, 17);
        s.with_fwhm = true;
        files.push_back(emit_sweep(s, path("fig4_fwhm_vs_pressure.csv"),
                                   "main-peak FWHM vs pressure (Pa)"));
    } else if (name == "fig5") {
        // Cooling transients from room temperature at 3e-3 mbar.
        const std::array<double, 5> phis = {0.0, kPi / 8, kPi / 4,
                                            3 * kPi / 8, kPi / 2};
        const std::array<const char*, 5> tags = {"phi0", "phi22", "phi45",
                                                 "phi67", "phi90"};
        for (std::size_t i = 0; i < phis.size(); ++i) {
            SystemConfig cfg = base_config();
            cfg.phi = phis[i];
            cfg.gas_pressure = 3e-3 * 100.0;
            const Model m = build_model(cfg);
            const DriftModel dm = build_drift(m.mc, m.nr);
            const MomentState s0 = thermal_state(kRoomTemperature, m.mc);
            files.push_back(emit_trajectory(
                dm, s0, 10e-3, 200,
                path(std::string("fig5_") + tags[i] + ".csv"),
                "cooling transient from 300 K, P = 3e-3 mbar"));
        }
    } else if (name == "fig6") {
        // Reheating: start from the cooled steady state, then detune the
        // cavity far off resonance so only the gas acts.
        SystemConfig cold = base_config();
        cold.phi = 0.0; // best Z cooling
        cold.gas_pressure = 3e-3 * 100.0;
        const Model mc_cold = build_model(cold);
        const DriftModel dm_cold = build_drift(mc_cold.mc, mc_cold.nr);
        const MomentState s0 = steady_state(dm_cold);

        SystemConfig hot = cold;
        hot.detuning = kTwoPi * 20e6;
        const Model mc_hot = build_model(hot);
        const DriftModel dm_hot = build_drift(mc_hot.mc, mc_hot.nr);
        const MomentState ss_hot = steady_state(dm_hot);
        const double T_ss = temperatures(ss_hot, mc_hot.mc).T[2];
        const double T_0 = temperatures(s0, mc_hot.mc).T[2];

        const double t_end = 0.25;
        const int n_out = 200;
        std::vector<double> analytic(static_cast<std::size_t>(n_out) + 1);
        for (int i = 0; i <= n_out; ++i)
            analytic[static_cast<std::size_t>(i)] =
                T_ss + (T_0 - T_ss) *
                           std::exp(-mc_hot.nr.gamma * t_end * i / n_out);
        files.push_back(emit_trajectory(
            dm_hot, s0, t_end, n_out, path("fig6_reheating.csv"),
            "reheating at delta' = 20 MHz (decoupled cavity)", &analytic));
        manifest["gamma_Hz"] = mc_hot.nr.gamma / kTwoPi;
    } else if (name == "fig7") {
        // (a-c) steady temperatures vs detuning at the best cooling position
        // per axis; (d) vs tweezer power at delta' = 400 kHz.
        const std::array<double, 3> panel_phi = {kPi / 2, kPi / 2, 0.0};
        const std::array<const char*, 3> tags = {"x", "y", "z"};
        for (int j = 0; j < 3; ++j) {
            SweepSpec s;
            s.base = base_config();
            s.base.phi = panel_phi[static_cast<std::size_t>(j)];
            s.base.gas_pressure = 3e-3 * 100.0;
            s.parameter = "detuning_target";
            s.values = log_grid(kTwoPi * 50e3, kTwoPi * 10e6, 33);
            files.push_back(emit_sweep(
                s, path(std::string("fig7_") + tags[static_cast<std::size_t>(j)] + ".csv"),
                "steady temperatures vs operational detuning"));
        }
        for (double phi : {kPi / 2, 0.0}) {
            SweepSpec s;
            s.base = base_config();
            s.base.phi = phi;
            s.base.gas_pressure = 3e-3 * 100.0;
            s.parameter = "tweezer_power";
            s.values = log_grid(10e-3, 10.0, 25);
            files.push_back(emit_sweep(
                s,
                path(phi == 0.0 ? "fig7_d_phi0.csv" : "fig7_d_phi90.csv"),
                "steady temperatures vs tweezer power, delta' = 400 kHz"));
        }
    } else if (name == "fig8") {
        // Ground-state scans over the cavity linewidth, one axis at a time,
        // at low pressure and low displacement noise.
        SystemConfig cfg = base_config();
        cfg.gas_pressure = 1e-9 * 100.0;
        cfg.noise_mode = NoiseInputMode::Psd;
        cfg.sigma = {0, 0, 0};
        cfg.displacement_psd = {1e-32, 1e-32, 1e-32}; // (1e-16 m/rtHz)^2

        const std::array<double, 3> theta = {kPi / 4, 0.0, 0.0};
        const std::array<double, 3> phi = {kPi / 2, kPi / 2,
                                           60.0 * kPi / 180.0};
        const std::array<const char*, 3> tags = {"a", "b", "c"};
        for (int axis = 0; axis < 3; ++axis) {
            SystemConfig c = cfg;
            c.theta = theta[static_cast<std::size_t>(axis)];
            c.phi = phi[static_cast<std::size_t>(axis)];
            if (axis == 2) {
                c.tweezer_power = 3.0;
            } else {
                SystemConfig probe = c;
                probe.detuning_mode = DetuningMode::Target;
                probe.detuning = kTwoPi * 400e3;
                c.tweezer_power = optimal_tweezer_power(probe, axis);
            }
            LinewidthScan scan = linewidth_scan(c, axis, 41);
            const SweepTable t = ground_state_scan(scan.spec, axis);
            write_csv_atomic(
                path(std::string("fig8_") + tags[static_cast<std::size_t>(axis)] + ".csv"),
                table_to_csv(t, "steady occupation vs cavity linewidth"));
            files.push_back(path(std::string("fig8_") +
                                 tags[static_cast<std::size_t>(axis)] + ".csv"));
            manifest["panels"][tags[static_cast<std::size_t>(axis)]] = {
                {"tweezer_power_W", scan.p_t},
                {"g_ref_Hz", scan.g_ref / kTwoPi},
                {"detuning_target_Hz", scan.spec.base.detuning / kTwoPi}};
        }
    } else if (name == "fig9") {
        // Simultaneous three-axis cooling presets.
        SystemConfig cfg = base_config();
        cfg.gas_pressure = 1e-9 * 100.0;
        cfg.noise_mode = NoiseInputMode::Psd;
        cfg.sigma = {0, 0, 0};
        cfg.displacement_psd = {1e-32, 1e-32, 1e-32};
        cfg.theta = kPi / 4;

        struct Panel { const char* tag; double power, phi; int axis; };
        const std::array<Panel, 2> panels = {
            Panel{"a", 75e-3, 65.0 * kPi / 180.0, 1},
            Panel{"b", 3.0, 60.0 * kPi / 180.0, 2}};
        for (const Panel& p : panels) {
            SystemConfig c = cfg;
            c.tweezer_power = p.power;
            c.phi = p.phi;
            LinewidthScan scan = linewidth_scan(c, p.axis, 41);
            const SweepTable t = ground_state_scan(scan.spec, p.axis);
            write_csv_atomic(path(std::string("fig9_") + p.tag + ".csv"),
                             table_to_csv(t, "three-axis occupations vs linewidth"));
            files.push_back(path(std::string("fig9_") + p.tag + ".csv"));
            manifest["panels"][p.tag] = {
                {"tweezer_power_W", p.power},
                {"phi_deg", p.phi * 180.0 / kPi},
                {"detuning_target_Hz", scan.spec.base.detuning / kTwoPi}};
        }
    } else {
        throw ConfigError("unknown figure name: " + name);
    }

    manifest["files"] = files;
    const std::string mpath = path(name + "_manifest.json");
    write_text_atomic(mpath, manifest.dump(2) + "\n");
    files.push_back(mpath);
    return files;
}

} // namespace cscool
