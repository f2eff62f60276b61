#include "cscool/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "cscool/constants.hpp"
#include "cscool/errors.hpp"

namespace cscool {

namespace {

struct Suffix {
    const char* name;
    double factor;
};

// Suffix table.  Frequency suffixes convert ordinary frequency to angular
// (rad/s); a bare number is taken as already-SI.
const Suffix kSuffixes[] = {
    {"nm", 1e-9},    {"um", 1e-6},   {"mm", 1e-3},    {"m", 1.0},
    {"mW", 1e-3},    {"W", 1.0},     {"mbar", 100.0}, {"Pa", 1.0},
    {"GHz", kTwoPi * 1e9}, {"MHz", kTwoPi * 1e6}, {"kHz", kTwoPi * 1e3},
    {"Hz", kTwoPi},  {"deg", kPi / 180.0}, {"rad", 1.0}, {"K", 1.0},
    {"kg", 1.0},     {"s", 1.0},
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "': expected boolean, got '" + v + "'");
}

} // namespace

double parse_unit_value(const std::string& token, const std::string& key) {
    const std::string t = trim(token);
    if (t.empty()) throw ConfigError("key '" + key + "': empty value");
    const char* begin = t.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin)
        throw ConfigError("key '" + key + "': cannot parse number from '" + t + "'");
    std::string suffix = trim(std::string(end));
    if (suffix.empty()) return v;
    for (const auto& s : kSuffixes) {
        if (suffix == s.name) return v * s.factor;
    }
    throw ConfigError("key '" + key + "': unknown unit suffix '" + suffix + "'");
}

void SystemConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError(std::string(name) + " must be strictly positive");
    };
    positive(tweezer_power, "tweezer_power");
    positive(tweezer_wavelength, "tweezer_wavelength");
    positive(tweezer_waist, "tweezer_waist");
    positive(cavity_length, "cavity_length");
    positive(cavity_waist, "cavity_waist");
    positive(cavity_halfwidth, "cavity_halfwidth");
    positive(particle_radius, "particle_radius");
    positive(mass_density, "mass_density");
    positive(gas_temperature, "gas_temperature");
    positive(gas_molecule_mass, "gas_molecule_mass");
    positive(pv_cutoff_factor, "pv_cutoff_factor");
    if (gas_pressure < 0.0)
        throw ConfigError("gas_pressure must be nonnegative");
    if (!(asym_x > 0.2 && asym_x < 5.0) || !(asym_y > 0.2 && asym_y < 5.0))
        throw ConfigError("asym_x/asym_y must lie in (0.2, 5)");
    if (!(theta >= 0.0 && theta < kPi))
        throw ConfigError("theta must satisfy 0 <= theta < pi");
    if (!(phi >= 0.0 && phi <= kPi / 2.0))
        throw ConfigError("phi must satisfy 0 <= phi <= pi/2");
    if (!(rel_permittivity > 1.0))
        throw ConfigError("rel_permittivity must exceed 1 (dielectric particle)");
    if (tweezer_waist < tweezer_wavelength / 10.0)
        throw ConfigError("tweezer_waist below wavelength/10: paraxial model invalid");
    for (int j = 0; j < 3; ++j) {
        if (sigma[j] < 0.0 || displacement_psd[j] < 0.0)
            throw ConfigError("noise amplitudes must be nonnegative");
    }
}

SystemConfig parse_config_text(const std::string& text, const std::string& origin) {
    SystemConfig cfg;
    std::set<std::string> seen;
    bool have_target = false, have_bare = false;
    bool have_sigma = false, have_psd = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            throw ConfigError(origin + ": duplicate key '" + key + "'");

        auto num = [&] { return parse_unit_value(val, key); };
        if (key == "tweezer_power") cfg.tweezer_power = num();
        else if (key == "tweezer_wavelength") cfg.tweezer_wavelength = num();
        else if (key == "tweezer_waist") cfg.tweezer_waist = num();
        else if (key == "asym_x") cfg.asym_x = num();
        else if (key == "asym_y") cfg.asym_y = num();
        else if (key == "cavity_length") cfg.cavity_length = num();
        else if (key == "cavity_waist") cfg.cavity_waist = num();
        else if (key == "cavity_halfwidth") cfg.cavity_halfwidth = num();
        else if (key == "particle_radius") cfg.particle_radius = num();
        else if (key == "rel_permittivity") cfg.rel_permittivity = num();
        else if (key == "mass_density") cfg.mass_density = num();
        else if (key == "theta") cfg.theta = num();
        else if (key == "phi") cfg.phi = num();
        else if (key == "detuning_target") { cfg.detuning = num(); have_target = true; }
        else if (key == "detuning_bare") { cfg.detuning = num(); have_bare = true; }
        else if (key == "gas_pressure") cfg.gas_pressure = num();
        else if (key == "gas_temperature") cfg.gas_temperature = num();
        else if (key == "gas_molecule_mass") cfg.gas_molecule_mass = num();
        else if (key == "sigma_x") { cfg.sigma[0] = num(); have_sigma = true; }
        else if (key == "sigma_y") { cfg.sigma[1] = num(); have_sigma = true; }
        else if (key == "sigma_z") { cfg.sigma[2] = num(); have_sigma = true; }
        else if (key == "displacement_psd_x") { cfg.displacement_psd[0] = num(); have_psd = true; }
        else if (key == "displacement_psd_y") { cfg.displacement_psd[1] = num(); have_psd = true; }
        else if (key == "displacement_psd_z") { cfg.displacement_psd[2] = num(); have_psd = true; }
        else if (key == "pv_cutoff_factor") cfg.pv_cutoff_factor = num();
        else if (key == "include_upsilon") cfg.include_upsilon = parse_bool(val, key);
        else throw ConfigError(origin + ": unknown key '" + key + "'");
    }

    if (have_target == have_bare)
        throw ConfigError(origin + ": exactly one of detuning_target / "
                          "detuning_bare must be given");
    cfg.detuning_mode = have_target ? DetuningMode::Target : DetuningMode::Bare;
    if (have_sigma && have_psd)
        throw ConfigError(origin + ": give either sigma_* or displacement_psd_*, "
                          "not both");
    cfg.noise_mode = have_psd ? NoiseInputMode::Psd : NoiseInputMode::Sigma;
    cfg.validate();
    return cfg;
}

SystemConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string default_config_template() {
    return R"(# Levitated-nanoparticle coherent-scattering cooling: reference setup.
# Lengths/powers/pressures accept unit suffixes; frequency suffixes (Hz, kHz,
# MHz) denote ordinary frequency and are converted to rad/s internally.

# tweezer beam
tweezer_power      = 500 mW
tweezer_wavelength = 1550 nm
tweezer_waist      = 1.08 um
asym_x             = 1.03
asym_y             = 0.89

# cavity (cavity_halfwidth is the field decay rate kappa; the intensity
# linewidth is 2*kappa)
cavity_length      = 6.46 mm
cavity_waist       = 48 um
cavity_halfwidth   = 0.53 MHz

# particle (fused silica)
particle_radius    = 50 nm
rel_permittivity   = 2.07
mass_density       = 2200

# geometry
theta              = 10 deg
phi                = 45 deg

# detuning convention: delta' as measured with the particle in the cavity
detuning_target    = 400 kHz

# gas environment (air, room temperature)
gas_pressure       = 1e-5 mbar
gas_temperature    = 300 K
gas_molecule_mass  = 4.81e-26 kg

# trap-displacement noise (adimensional sigma_j; alternatively give
# displacement_psd_x/y/z in m^2/Hz)
sigma_x            = 0.67
sigma_y            = 0.26
sigma_z            = 18.6

# numerics / model switches
pv_cutoff_factor   = 0.1
include_upsilon    = false
)";
}

} // namespace cscool
