#pragma once
//
// Environmental noise rates: gas damping gamma (kinetic theory), gas
// position-localization Gamma_j^(p), trap-displacement localization
// Gamma_j^(d), and the per-axis totals including photon recoil.

#include <array>

#include "cscool/params.hpp"
#include "cscool/renorm.hpp"

namespace cscool {

struct NoiseRates {
    double gamma = 0;                           // rad/s, gas friction
    std::array<double, 3> Gamma_p = {0, 0, 0};  // rad/s, gas localization
    std::array<double, 3> Gamma_d = {0, 0, 0};  // rad/s, trap-displacement noise
    std::array<double, 3> Gamma_total = {0, 0, 0}; // recoil + gas + displacement
    std::array<double, 3> sigma = {0, 0, 0};    // adimensional noise amplitudes
    std::array<double, 3> psd = {0, 0, 0};      // m^2/Hz equivalents
};

// gamma = 0.619 (6 pi R^2 / m) P sqrt(2 m0 / (pi k_B T)).
double gas_damping(double pressure_Pa, double T, double m0, double R, double mass);

// All localization rates.  Uses the renormalized Omega_j' in the
// displacement-noise conversion (sub-0.1% difference from bare Omega_j).
NoiseRates heating_rates(const DerivedParams& p, const ModelCoefficients& mc);

} // namespace cscool
