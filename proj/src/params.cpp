#include "cscool/params.hpp"

#include <cmath>

#include "cscool/constants.hpp"
#include "cscool/errors.hpp"

namespace cscool {

DerivedParams derive_params(const SystemConfig& cfg) {
    cfg.validate();
    DerivedParams p;
    p.cfg = cfg;

    const double R = cfg.particle_radius;
    p.volume = 4.0 / 3.0 * kPi * R * R * R;
    p.mass = cfg.mass_density * p.volume;
    p.eps_c = 3.0 * (cfg.rel_permittivity - 1.0) / (cfg.rel_permittivity + 2.0);
    p.alpha_pol = kEps0 * p.eps_c * p.volume;

    p.omega0 = kTwoPi * kClight / cfg.tweezer_wavelength;
    p.k0 = p.omega0 / kClight;
    p.rayleigh = kPi * cfg.tweezer_waist * cfg.tweezer_waist / cfg.tweezer_wavelength;

    // Peak field of the astigmatic Gaussian tweezer:
    // E0 = sqrt(4 P_t / (pi eps0 c W_t^2 A_x A_y)).
    const double Wt2 = cfg.tweezer_waist * cfg.tweezer_waist;
    p.field_amp = std::sqrt(4.0 * cfg.tweezer_power /
                            (kPi * kEps0 * kClight * Wt2 * cfg.asym_x * cfg.asym_y));

    // Cavity resonance nearest the tweezer line consistent with the
    // configured detuning (|omega_c - omega0| << omega0 always holds; the
    // sub-ppm distinction between the two detuning conventions is irrelevant
    // for the prefactors computed from omega_c).
    p.omega_c = p.omega0 + cfg.detuning;
    p.k_c = p.omega_c / kClight;
    p.mode_volume = kPi * cfg.cavity_waist * cfg.cavity_waist * cfg.cavity_length / 4.0;
    p.finesse = kPi * kClight / (2.0 * cfg.cavity_halfwidth * cfg.cavity_length);

    // Harmonic expansion of the optical potential:
    // (Omega_x, Omega_y, Omega_z) =
    //   sqrt(eps0 eps_c E0^2 / (2 rho W_t^2)) * (sqrt2/A_x, sqrt2/A_y, lambda0/(pi W_t)).
    const double om_scale = std::sqrt(kEps0 * p.eps_c * p.field_amp * p.field_amp /
                                      (2.0 * cfg.mass_density * Wt2));
    p.trap_freqs[0] = om_scale * std::sqrt(2.0) / cfg.asym_x;
    p.trap_freqs[1] = om_scale * std::sqrt(2.0) / cfg.asym_y;
    p.trap_freqs[2] = om_scale * cfg.tweezer_wavelength / (kPi * cfg.tweezer_waist);
    for (int j = 0; j < 3; ++j)
        p.zero_point[j] = std::sqrt(kHbar / (2.0 * p.mass * p.trap_freqs[j]));

    // Tweezer-to-cavity scattering coupling (the polarization projection onto
    // the cavity mode gives the cos(theta) factor; the orthogonal cavity
    // polarization does not couple).
    p.coupling_G = p.alpha_pol * p.field_amp * std::cos(cfg.theta) *
                   std::sqrt(p.omega_c / (2.0 * kHbar * kEps0 * p.mode_volume));

    // Dispersive couplings and the static cavity-frequency shift from the
    // particle sitting in the standing wave.
    const double disp_scale = p.omega_c * p.eps_c * p.volume / (2.0 * p.mode_volume);
    p.delta_c = disp_scale * std::cos(cfg.phi) * std::cos(cfg.phi);
    p.g_cx = disp_scale * p.k_c * p.zero_point[0] *
             std::sin(2.0 * cfg.phi) * std::sin(cfg.theta);
    p.g_cy = disp_scale * p.k_c * p.zero_point[1] *
             std::sin(2.0 * cfg.phi) * std::cos(cfg.theta);

    // Free-field drive strength and reservoir cutoff.
    p.eta = std::cos(cfg.theta) *
            std::sqrt(kEps0 * p.mode_volume * p.field_amp * p.field_amp /
                      (kHbar * p.omega_c));
    p.cutoff_Kc = cfg.pv_cutoff_factor / R;

    return p;
}

} // namespace cscool
