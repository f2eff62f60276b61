#pragma once
//
// Reservoir-induced renormalizations and the final master-equation
// coefficients: detuning shifts (Delta_A, Delta_B1), extra cavity linewidth
// kappa_B1, photon-recoil rates Gamma_j^(r), mechanical frequency shifts
// Delta_j -> Omega_j', the squeezing factors chi_j, the renormalized
// couplings g_j', and the incoherent cavity-COM rate Upsilon.
//
// Detuning conventions:
//   delta_tilde : bare standing-wave detuning entering the displacement solve
//   delta_0     : delta_tilde minus the displacement back-action 2 g_cj beta_j
//   delta'      : delta_0 + Delta_A + Delta_B1 (the operational detuning,
//                 what an experiment measures with the particle in place)
//   delta_bare  : cavity-tweezer detuning without any particle correction

#include <array>
#include <complex>

#include "cscool/displacements.hpp"
#include "cscool/params.hpp"
#include "cscool/pv.hpp"

namespace cscool {

struct ModelCoefficients {
    double delta_prime = 0; // rad/s, operational detuning delta'
    double delta_0 = 0;     // rad/s
    double delta_bare = 0;  // rad/s (reporting)
    double Delta_A = 0;     // rad/s, thermal-photon cavity shift
    double Delta_B1 = 0;    // rad/s, scattering-reservoir cavity shift
    double kappa_B1 = 0;    // rad/s, scattering contribution to the linewidth
    double kappa_prime = 0; // rad/s, kappa + kappa_B1

    std::array<double, 3> Gamma_recoil = {0, 0, 0}; // rad/s, photon recoil
    std::array<double, 3> Delta_j = {0, 0, 0};      // rad/s, frequency shifts
    std::array<double, 3> Omega_prime = {0, 0, 0};  // rad/s, Omega_j'
    std::array<double, 3> chi = {1, 1, 1};          // (Omega_j/Omega_j')^(1/2)

    std::array<std::complex<double>, 3> g = {};       // rad/s, bare couplings
    std::array<std::complex<double>, 3> g_prime = {}; // rad/s, g_j' = (g_j + gtilde_z d_jz) chi_j
    std::complex<double> g_tilde_z{0, 0};             // rad/s
    std::complex<double> Upsilon{0, 0};               // rad/s, Upsilon_z chi_z

    bool include_upsilon = false; // propagated model switch
    double gamma_gas = 0;         // rad/s, filled by the noise module user

    std::array<double, 3> zero_point = {0, 0, 0}; // m, bare r_j0 (for spectra)
};

// Assemble every coefficient for displacements solved at delta_tilde.
// Throws PhysicsError("ModelBreakdown") when 1 + 4 Delta_j/Omega_j <= 0.
ModelCoefficients renormalize(const DerivedParams& p, const PvConstants& pv,
                              const Displacements& d, double delta_tilde);

struct DetuningSolution {
    double delta_tilde = 0;
    Displacements disp;
    ModelCoefficients mc;
    int iterations = 0;
};

// Fixed-point inversion: find the delta_tilde whose renormalized delta'
// equals the target (the measurement convention).  Converges when the
// residual is below 2*pi*1 Hz; throws PhysicsError("NoConvergence") after 50
// iterations.
DetuningSolution invert_detuning(const DerivedParams& p, const PvConstants& pv,
                                 double target_delta_prime);

// Forward map for configs specifying the bare detuning:
// delta_tilde = delta_bare - Delta_A - Delta_c.
DetuningSolution solve_at_bare_detuning(const DerivedParams& p,
                                        const PvConstants& pv,
                                        double delta_bare);

} // namespace cscool
