#pragma once
//
// DerivedParams: every static coefficient of the trapped-particle/cavity
// Hamiltonian, computed in closed form from the lab inputs.
//
// Conventions:
//  - All frequencies and rates are angular (rad/s).
//  - Axis order is always (x, y, z): x along the tweezer polarization,
//    y along the cavity axis (up to the rotation by theta), z along the
//    tweezer propagation direction.
//  - omega_c is pinned to omega0 + configured detuning; the exact
//    particle-induced corrections to the operational detuning are handled
//    downstream (renorm module) in detuning space, where they matter.

#include <array>

#include "cscool/config.hpp"

namespace cscool {

struct DerivedParams {
    // particle
    double volume = 0;  // m^3, V = 4 pi R^3 / 3
    double mass = 0;    // kg
    double eps_c = 0;   // 3(eps-1)/(eps+2), Clausius-Mossotti contrast
    double alpha_pol = 0; // F m^2, polarizability eps0 * eps_c * V

    // tweezer field
    double omega0 = 0;   // rad/s, tweezer frequency
    double k0 = 0;       // 1/m
    double rayleigh = 0; // m, z_R = pi W_t^2 / lambda0
    double field_amp = 0; // V/m, E0

    // cavity
    double omega_c = 0;    // rad/s
    double k_c = 0;        // 1/m
    double mode_volume = 0; // m^3, V_c = pi W_c^2 L_c / 4
    double finesse = 0;     // from L_c = pi c / (2 kappa F); reporting only

    // mechanics
    std::array<double, 3> trap_freqs = {0, 0, 0}; // rad/s, Omega_j
    std::array<double, 3> zero_point = {0, 0, 0}; // m, r_j0 = sqrt(hbar/2 m Omega_j)

    // couplings
    double coupling_G = 0; // rad/s, tweezer-to-cavity scattering coupling (G)
    double g_cx = 0;       // rad/s, dispersive cavity-displacement coupling, x
    double g_cy = 0;       // rad/s, y
    double delta_c = 0;    // rad/s, particle-induced cavity frequency shift
    double eta = 0;        // adimensional free-field drive strength
    double cutoff_Kc = 0;  // 1/m, reservoir momentum cutoff

    // carried along for convenience
    SystemConfig cfg;
};

// Compute all derived coefficients.  Throws ConfigError on non-physical
// inputs (validated again here so the function is safe standalone).
DerivedParams derive_params(const SystemConfig& cfg);

} // namespace cscool
