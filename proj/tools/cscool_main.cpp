// cscool: command-line front end for the coherent-scattering cavity-cooling
// model.  Subcommands map one-to-one onto the library stages:
//
//   derive         resolved config echo + every derived coefficient
//   displacements  steady cavity amplitude and equilibrium shifts
//   steady         steady-state occupations and temperatures
//   evolve         moment-system time evolution from a thermal state
//   psd            motional power spectral densities + Lorentzian pole table
//   sweep          generic one-parameter sweep
//   figure         named preset datasets (fig2..fig9 | all)
//   gscool         ground-state linewidth scan for one axis
//
// Exit codes: 0 success, 2 configuration error, 3 physics error (the error
// kind is printed on stderr).  All file outputs are written atomically.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cscool/analysis.hpp"
#include "cscool/constants.hpp"
#include "cscool/dynamics.hpp"
#include "cscool/errors.hpp"
#include "cscool/io.hpp"
#include "cscool/model.hpp"
#include "cscool/spectra.hpp"

namespace {

using namespace cscool;
using nlohmann::json;

constexpr const char* kVersion = "cscool 1.0.0";

struct CommonOpts {
    std::string config_path;
    std::string out;
    // unit-suffixed override strings, applied after parsing the file
    std::string pressure, phi, theta, detuning, power;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required = true) {
    auto* c = cmd->add_option("--config", o.config_path, "configuration file");
    if (config_required) c->required();
    cmd->add_option("--out", o.out, "output path (CSV; default: stdout)");
    cmd->add_option("--pressure", o.pressure, "override gas pressure (e.g. 1e-5mbar)");
    cmd->add_option("--phi", o.phi, "override cavity position angle (e.g. 45deg)");
    cmd->add_option("--theta", o.theta, "override polarization angle");
    cmd->add_option("--detuning", o.detuning, "override target detuning (e.g. 400kHz)");
    cmd->add_option("--power", o.power, "override tweezer power (e.g. 500mW)");
}

SystemConfig load_config(const CommonOpts& o) {
    SystemConfig cfg = parse_config_file(o.config_path);
    if (!o.pressure.empty())
        cfg.gas_pressure = parse_unit_value(o.pressure, "gas_pressure");
    if (!o.phi.empty()) cfg.phi = parse_unit_value(o.phi, "phi");
    if (!o.theta.empty()) cfg.theta = parse_unit_value(o.theta, "theta");
    if (!o.detuning.empty()) {
        cfg.detuning_mode = DetuningMode::Target;
        cfg.detuning = parse_unit_value(o.detuning, "detuning_target");
    }
    if (!o.power.empty())
        cfg.tweezer_power = parse_unit_value(o.power, "tweezer_power");
    cfg.validate();
    return cfg;
}

// Emit a CSV to --out (atomically, with a sidecar run manifest) or to stdout.
void deliver(const CommonOpts& o, const CsvTable& t,
             const std::vector<std::string>& warnings,
             std::vector<std::string> extra_files = {}) {
    if (o.out.empty()) {
        std::cout << csv_to_string(t);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
        return;
    }
    write_csv_atomic(o.out, t);
    json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = o.config_path;
    manifest["warnings"] = warnings;
    extra_files.insert(extra_files.begin(), o.out);
    manifest["files"] = extra_files;
    write_text_atomic(o.out + ".manifest.json", manifest.dump(2) + "\n");
}

CsvTable sweep_csv(const SweepTable& t, const std::string& title) {
    CsvTable c;
    c.comments = {title,
                  "frequencies in Hz (ordinary), lengths in m, temperatures in K"};
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

// `derive` output doubles as a valid config file: resolved inputs as
// `key = value` lines (bare SI numbers), derived quantities as comments.
std::string derive_report(const Model& m) {
    const SystemConfig& c = m.cfg;
    std::ostringstream os;
    os << "# resolved configuration (SI base units; frequencies rad/s)\n";
    auto kv = [&](const char* k, double v) {
        os << k << " = " << format_sig(v) << "\n";
    };
    kv("tweezer_power", c.tweezer_power);
    kv("tweezer_wavelength", c.tweezer_wavelength);
    kv("tweezer_waist", c.tweezer_waist);
    kv("asym_x", c.asym_x);
    kv("asym_y", c.asym_y);
    kv("cavity_length", c.cavity_length);
    kv("cavity_waist", c.cavity_waist);
    kv("cavity_halfwidth", c.cavity_halfwidth);
    kv("particle_radius", c.particle_radius);
    kv("rel_permittivity", c.rel_permittivity);
    kv("mass_density", c.mass_density);
    kv("theta", c.theta);
    kv("phi", c.phi);
    kv(c.detuning_mode == DetuningMode::Target ? "detuning_target"
                                               : "detuning_bare",
       c.detuning);
    kv("gas_pressure", c.gas_pressure);
    kv("gas_temperature", c.gas_temperature);
    kv("gas_molecule_mass", c.gas_molecule_mass);
    if (c.noise_mode == NoiseInputMode::Sigma) {
        kv("sigma_x", c.sigma[0]);
        kv("sigma_y", c.sigma[1]);
        kv("sigma_z", c.sigma[2]);
    } else {
        kv("displacement_psd_x", c.displacement_psd[0]);
        kv("displacement_psd_y", c.displacement_psd[1]);
        kv("displacement_psd_z", c.displacement_psd[2]);
    }
    kv("pv_cutoff_factor", c.pv_cutoff_factor);
    os << "include_upsilon = " << (c.include_upsilon ? "true" : "false") << "\n";

    os << "#\n# derived quantities (frequencies in Hz unless noted)\n";
    auto dv = [&](const char* k, double v, const char* unit = "") {
        os << "# " << k << " = " << format_sig(v) << (unit[0] ? " " : "")
           << unit << "\n";
    };
    dv("mass", m.prm.mass, "kg");
    dv("trap_freq_x", m.prm.trap_freqs[0] / kTwoPi, "Hz");
    dv("trap_freq_y", m.prm.trap_freqs[1] / kTwoPi, "Hz");
    dv("trap_freq_z", m.prm.trap_freqs[2] / kTwoPi, "Hz");
    dv("Omega_prime_x", m.mc.Omega_prime[0] / kTwoPi, "Hz");
    dv("Omega_prime_y", m.mc.Omega_prime[1] / kTwoPi, "Hz");
    dv("Omega_prime_z", m.mc.Omega_prime[2] / kTwoPi, "Hz");
    dv("zero_point_x", m.prm.zero_point[0], "m");
    dv("zero_point_y", m.prm.zero_point[1], "m");
    dv("zero_point_z", m.prm.zero_point[2], "m");
    dv("kappa_prime", m.mc.kappa_prime / kTwoPi, "Hz");
    dv("delta_prime", m.mc.delta_prime / kTwoPi, "Hz");
    dv("delta_bare", m.mc.delta_bare / kTwoPi, "Hz");
    dv("Delta_A", m.mc.Delta_A / kTwoPi, "Hz");
    dv("Delta_B1", m.mc.Delta_B1 / kTwoPi, "Hz");
    dv("kappa_B1", m.mc.kappa_B1 / kTwoPi, "Hz");
    for (int j = 0; j < 3; ++j) {
        const char ax = "xyz"[j];
        os << "# g_abs_" << ax << " = "
           << format_sig(std::abs(m.mc.g_prime[j]) / kTwoPi) << " Hz\n";
        os << "# Gamma_recoil_" << ax << " = "
           << format_sig(m.mc.Gamma_recoil[j] / kTwoPi) << " Hz\n";
        os << "# Gamma_total_" << ax << " = "
           << format_sig(m.nr.Gamma_total[j] / kTwoPi) << " Hz\n";
    }
    dv("gamma_gas", m.nr.gamma / kTwoPi, "Hz");
    dv("photon_number", m.disp.photon_number);
    dv("Upsilon_abs", std::abs(m.mc.Upsilon) / kTwoPi, "Hz");
    dv("detuning_iterations", m.detuning_iterations);
    for (const auto& w : m.warnings) os << "# warning: " << w << "\n";
    return os.str();
}

int run_derive(const CommonOpts& o) {
    const Model m = build_model(load_config(o));
    const std::string report = derive_report(m);
    if (o.out.empty())
        std::cout << report;
    else
        write_text_atomic(o.out, report);
    return 0;
}

int run_displacements(const CommonOpts& o) {
    const Model m = build_model(load_config(o));
    CsvTable t;
    t.comments = {"steady displacements of cavity field and COM equilibrium"};
    t.columns = {"alpha_re", "alpha_im", "photon_number",
                 "beta_x", "beta_y", "beta_z",
                 "shift_x_m", "shift_y_m", "shift_z_m",
                 "residual_x", "residual_y", "residual_z",
                 "n_candidate_roots", "ambiguous"};
    t.add_row_values({m.disp.alpha_c.real(), m.disp.alpha_c.imag(),
                      m.disp.photon_number, m.disp.beta[0], m.disp.beta[1],
                      m.disp.beta[2], m.disp.equilibrium_shift[0],
                      m.disp.equilibrium_shift[1], m.disp.equilibrium_shift[2],
                      m.disp.residuals[0], m.disp.residuals[1],
                      m.disp.residuals[2],
                      static_cast<double>(m.disp.quintic_real_roots.size()),
                      m.disp.ambiguous_root ? 1.0 : 0.0});
    deliver(o, t, m.warnings);
    return 0;
}

int run_steady(const CommonOpts& o) {
    const Model m = build_model(load_config(o));
    const DriftModel dm = build_drift(m.mc, m.nr);
    const MomentState ss = steady_state(dm);
    const Temperatures temps = temperatures(ss, m.mc);
    CsvTable t;
    t.comments = {"steady-state occupations and temperatures"};
    t.columns = {"occupation_x", "occupation_y", "occupation_z",
                 "temperature_x_K", "temperature_y_K", "temperature_z_K",
                 "cavity_photons", "photon_number_coherent",
                 "stability_margin_Hz"};
    t.add_row_values({temps.occ[0], temps.occ[1], temps.occ[2], temps.T[0],
                      temps.T[1], temps.T[2], ss.second(midx::ncc).real(),
                      m.disp.photon_number, stability(dm).margin / kTwoPi});
    deliver(o, t, m.warnings);
    return 0;
}

int run_evolve(const CommonOpts& o, double t_end, int n_out, double T0) {
    const Model m = build_model(load_config(o));
    const DriftModel dm = build_drift(m.mc, m.nr);
    const MomentState s0 = thermal_state(T0, m.mc);
    const std::vector<MomentState> traj = evolve(dm, s0, t_end, n_out);
    CsvTable t;
    t.comments = {"moment-system time evolution from a thermal state",
                  "temperatures in K"};
    t.columns = {"t_s", "temperature_x_K", "temperature_y_K",
                 "temperature_z_K", "occupation_x", "occupation_y",
                 "occupation_z", "cavity_photons"};
    for (const MomentState& s : traj) {
        const Temperatures temps = temperatures(s, m.mc);
        t.add_row_values({s.time, temps.T[0], temps.T[1], temps.T[2],
                          temps.occ[0], temps.occ[1], temps.occ[2],
                          s.second(midx::ncc).real()});
    }
    deliver(o, t, m.warnings);
    return 0;
}

int run_psd(const CommonOpts& o, int n_grid) {
    const Model m = build_model(load_config(o));
    const DriftModel dm = build_drift(m.mc, m.nr);
    const MomentState ss = steady_state(dm);
    const std::vector<double> grid = default_omega_grid(m.mc, n_grid);
    std::array<SpectrumResult, 3> sr;
    std::vector<std::string> warnings = m.warnings;
    for (int j = 0; j < 3; ++j) {
        sr[j] = psd(dm, ss, j, grid);
        for (const auto& w : sr[j].warnings)
            warnings.push_back(std::string("axis ") + "xyz"[j] + ": " + w);
    }

    CsvTable t;
    t.comments = {"two-sided motional PSDs", "S columns in m^2/Hz"};
    t.columns = {"omega_Hz", "S_x_m2_per_Hz", "S_y_m2_per_Hz", "S_z_m2_per_Hz"};
    for (std::size_t i = 0; i < grid.size(); ++i)
        t.add_row_values({grid[i] / kTwoPi, kTwoPi * sr[0].S[i],
                          kTwoPi * sr[1].S[i], kTwoPi * sr[2].S[i]});

    CsvTable poles;
    poles.comments = {"Lorentzian decomposition: S = sum 2 Re[w/(pole + i omega)]",
                      "pole in Hz, weight in m^2/Hz"};
    poles.columns = {"axis", "pole_re_Hz", "pole_im_Hz", "weight_re_m2_per_Hz",
                     "weight_im_m2_per_Hz", "fwhm_main_Hz", "peak_center_Hz"};
    for (int j = 0; j < 3; ++j)
        for (const LorentzianTerm& lt : sr[j].lorentzian_terms) {
            poles.rows.push_back(
                {std::string(1, "xyz"[j]), format_sig(lt.pole.real() / kTwoPi),
                 format_sig(lt.pole.imag() / kTwoPi),
                 format_sig(kTwoPi * lt.weight.real()),
                 format_sig(kTwoPi * lt.weight.imag()),
                 format_sig(sr[j].fwhm_main / kTwoPi),
                 format_sig(sr[j].peak_center / kTwoPi)});
        }

    if (o.out.empty()) {
        std::cout << csv_to_string(t) << "\n" << csv_to_string(poles);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    } else {
        const std::string pole_path = o.out + ".poles.csv";
        write_csv_atomic(pole_path, poles);
        deliver(o, t, warnings, {pole_path});
    }
    return 0;
}

int run_sweep_cmd(const CommonOpts& o, const std::string& param,
                  const std::string& from, const std::string& to, int points,
                  bool log, bool with_fwhm) {
    SweepSpec spec;
    spec.base = load_config(o);
    spec.parameter = param;
    spec.with_fwhm = with_fwhm;
    const double lo = parse_unit_value(from, param);
    const double hi = parse_unit_value(to, param);
    if (points < 2) throw ConfigError("sweep needs at least 2 points");
    if (log && (lo <= 0 || hi <= 0))
        throw ConfigError("log sweep needs positive endpoints");
    spec.values.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        spec.values[static_cast<std::size_t>(i)] =
            log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    deliver(o, sweep_csv(run_sweep(spec), "parameter sweep: " + param), {});
    return 0;
}

int run_figure(const std::string& name, const std::string& outdir) {
    std::vector<std::string> names;
    if (name == "all")
        names = figure_names();
    else
        names.push_back(name);
    for (const auto& n : names) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<std::string> files = figure_driver(n, outdir);
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::cerr << n << ": " << files.size() << " files in " << format_sig(dt)
                  << " s\n";
    }
    return 0;
}

int run_gscool(const CommonOpts& o, const std::string& axis_name, int points) {
    const int axis = axis_name == "x" ? 0 : axis_name == "y" ? 1 : 2;
    SystemConfig cfg = load_config(o);
    const double g_ref =
        std::abs(build_model(cfg).mc.g_prime[static_cast<std::size_t>(axis)]);
    SweepSpec spec;
    spec.base = cfg;
    spec.parameter = "cavity_halfwidth";
    spec.values.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        spec.values[static_cast<std::size_t>(i)] =
            0.05 * g_ref * std::pow(1000.0, static_cast<double>(i) / (points - 1));
    deliver(o, sweep_csv(ground_state_scan(spec, axis),
                         "ground-state linewidth scan, axis " + axis_name),
            {});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-scattering cavity cooling of a levitated nanoparticle"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts o;
    bool print_template = false;

    auto* derive = app.add_subcommand("derive", "derived parameter report");
    add_common(derive, o, false);
    derive->add_flag("--print-template", print_template,
                     "print a commented example configuration and exit");

    auto* disp = app.add_subcommand("displacements", "steady displacements");
    add_common(disp, o);

    auto* steady = app.add_subcommand("steady", "steady-state solution");
    add_common(steady, o);

    double t_end = 10e-3, T0 = 300.0;
    int n_out = 200;
    auto* evolve_cmd = app.add_subcommand("evolve", "time evolution");
    add_common(evolve_cmd, o);
    evolve_cmd->add_option("--t-end", t_end, "duration in s");
    evolve_cmd->add_option("--n-out", n_out, "number of output steps");
    evolve_cmd->add_option("--T0", T0, "initial COM temperature in K");

    int n_grid = 4096;
    auto* psd_cmd = app.add_subcommand("psd", "motional spectra");
    add_common(psd_cmd, o);
    psd_cmd->add_option("--n-grid", n_grid, "frequency grid points");

    std::string sw_param, sw_from, sw_to;
    int sw_points = 21;
    bool sw_log = false, sw_fwhm = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "one-parameter sweep");
    add_common(sweep_cmd, o);
    sweep_cmd->add_option("--param", sw_param, "config key to vary")->required();
    sweep_cmd->add_option("--from", sw_from, "start value (unit suffix ok)")->required();
    sweep_cmd->add_option("--to", sw_to, "end value")->required();
    sweep_cmd->add_option("--points", sw_points, "grid size");
    sweep_cmd->add_flag("--log", sw_log, "logarithmic grid");
    sweep_cmd->add_flag("--with-fwhm", sw_fwhm, "also compute PSD FWHMs (slower)");

    std::string fig_name, fig_out = ".";
    auto* figure_cmd = app.add_subcommand("figure", "preset figure datasets");
    figure_cmd->add_option("name", fig_name, "fig2..fig9 or 'all'")->required();
    figure_cmd->add_option("--out", fig_out, "output directory");

    std::string gs_axis = "x";
    int gs_points = 41;
    auto* gscool_cmd = app.add_subcommand("gscool", "ground-state linewidth scan");
    add_common(gscool_cmd, o);
    gscool_cmd->add_option("--axis", gs_axis, "x|y|z")
        ->check(CLI::IsMember({"x", "y", "z"}));
    gscool_cmd->add_option("--points", gs_points, "grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (derive->parsed()) {
            if (print_template) {
                std::cout << cscool::default_config_template();
                return 0;
            }
            if (o.config_path.empty())
                throw cscool::ConfigError("derive requires --config (or --print-template)");
            return run_derive(o);
        }
        if (disp->parsed()) return run_displacements(o);
        if (steady->parsed()) return run_steady(o);
        if (evolve_cmd->parsed()) return run_evolve(o, t_end, n_out, T0);
        if (psd_cmd->parsed()) return run_psd(o, n_grid);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(o, sw_param, sw_from, sw_to, sw_points, sw_log,
                                 sw_fwhm);
        if (figure_cmd->parsed()) return run_figure(fig_name, fig_out);
        if (gscool_cmd->parsed()) return run_gscool(o, gs_axis, gs_points);
    } catch (const cscool::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cscool::PhysicsError& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
