#pragma once
//
// SystemConfig: the raw lab-level inputs of the model, plus the flat
// `key = value` configuration-file parser.
//
// File format
// -----------
//   - one `key = value` pair per line; `#` starts a comment; blank lines ok.
//   - keys must match SystemConfig field names exactly; unknown keys error.
//   - values may carry a unit suffix.  Supported suffixes and their SI
//     conversions:
//        lengths   : nm, um, mm, m
//        powers    : mW, W
//        pressures : mbar, Pa
//        frequencies: Hz, kHz, MHz, GHz   (ordinary frequency -> rad/s, x 2*pi)
//        angles    : deg, rad
//     A bare number is taken as already-SI (rad/s for rates/frequencies).
//   - exactly one of detuning_target / detuning_bare must be present.
//   - trap-displacement noise: either sigma_x/y/z (adimensional) or
//     displacement_psd_x/y/z (two-sided PSD, m^2/Hz); not both.

#include <array>
#include <map>
#include <string>

namespace cscool {

enum class DetuningMode {
    Target, // detuning_target: delta' as measured with the particle in the cavity
    Bare    // detuning_bare: bare cavity-tweezer detuning (no particle corrections)
};

enum class NoiseInputMode {
    Sigma, // adimensional sigma_j
    Psd    // S_jj^(d) in m^2/Hz
};

struct SystemConfig {
    // tweezer beam
    double tweezer_power      = 0.0; // W
    double tweezer_wavelength = 0.0; // m
    double tweezer_waist      = 0.0; // m
    double asym_x             = 1.0; // A_x, waist asymmetry along x
    double asym_y             = 1.0; // A_y

    // cavity
    double cavity_length    = 0.0; // m
    double cavity_waist     = 0.0; // m
    double cavity_halfwidth = 0.0; // rad/s, kappa (field amplitude decay rate)

    // particle
    double particle_radius  = 0.0; // m
    double rel_permittivity = 0.0; // epsilon (relative)
    double mass_density     = 0.0; // kg/m^3

    // geometry
    double theta = 0.0; // rad, tweezer polarization vs cavity axis
    double phi   = 0.0; // rad, particle position along the cavity standing wave

    // detuning (exactly one mode)
    DetuningMode detuning_mode = DetuningMode::Target;
    double detuning            = 0.0; // rad/s

    // gas environment
    double gas_pressure      = 0.0;   // Pa
    double gas_temperature   = 300.0; // K
    double gas_molecule_mass = 4.81e-26; // kg (air)

    // trap-displacement noise; sigma and psd kept consistent with each other
    NoiseInputMode noise_mode        = NoiseInputMode::Sigma;
    std::array<double, 3> sigma      = {0.0, 0.0, 0.0};       // adimensional
    std::array<double, 3> displacement_psd = {0.0, 0.0, 0.0}; // m^2/Hz

    // numerics / model switches
    double pv_cutoff_factor = 0.1;   // K_c = factor / R
    bool include_upsilon    = false; // include the incoherent cavity-COM rate
                                     // Upsilon in the dynamics (off by default)

    // Throws ConfigError if any invariant is violated.
    void validate() const;
};

// Parse a configuration file / string of `key = value` lines.
SystemConfig parse_config_file(const std::string& path);
SystemConfig parse_config_text(const std::string& text,
                               const std::string& origin = "<string>");

// Parse one value with optional unit suffix into SI (see header comment).
// `dimension` selects which suffixes are meaningful for nicer error messages;
// it does not restrict bare numbers.
double parse_unit_value(const std::string& token, const std::string& key);

// The canonical example configuration (a typical levitated-SiO2 cavity
// setup); used by tests and as a template via `--print-template`.
std::string default_config_template();

} // namespace cscool
