#pragma once
//
// Motional power spectral density via the quantum regression theorem.
//
// The two-time correlation C(tau) = <q_j(t+tau) q_j(t)>_ss obeys the
// first-moment drift in tau, so its one-sided transform is a resolvent of M0
// and the PSD a finite sum of Lorentzians located at the drift eigenvalues:
//   S+(omega) = -(r_j'^2 / 2 pi) e_q^T (M0 + i omega)^-1 w0,
//   S(omega)  = 2 Re S+(omega),
// with w0_m = <v_m q_j>_ss assembled from the steady second moments.
// Internal S is per rad/s (m^2 s/rad); multiply by 2 pi for m^2/Hz.

#include <complex>
#include <string>
#include <vector>

#include "cscool/dynamics.hpp"

namespace cscool {

struct LorentzianTerm {
    cxd pole{0, 0};   // rad/s, drift eigenvalue lambda_l (Re < 0 when stable)
    cxd weight{0, 0}; // m^2 s/rad; term contributes 2 Re[w/(pole + i omega)]
};

struct SpectrumResult {
    int axis = 0;                    // 0:x 1:y 2:z
    std::vector<double> omega_grid;  // rad/s
    std::vector<double> S;           // m^2 s/rad, two-sided S_jj(omega)
    std::vector<LorentzianTerm> lorentzian_terms;
    double fwhm_main = 0;    // rad/s, 2|Re lambda| of the dominant pole
    double fwhm_grid = 0;    // rad/s, half-max crossing cross-check
    double peak_center = 0;  // rad/s
    std::vector<std::string> warnings; // OverlappingPeaks, ...
};

// Default grid: n points spanning [0, 2 max(Omega_j', delta')].
std::vector<double> default_omega_grid(const ModelCoefficients& mc, int n = 4096);

// PSD of axis j from the steady state.  Falls back to per-point resolvent
// solves (empty lorentzian_terms) if the eigenbasis is ill-conditioned.
SpectrumResult psd(const DriftModel& dm, const MomentState& ss, int axis,
                   const std::vector<double>& omega_grid);

// FWHM of the main motional peak: the dominant Lorentzian (largest
// |weight/Re lambda|) among poles within 30% of Omega_j'.
double fwhm_main_peak(const SpectrumResult& sr);

// Evaluate the Lorentzian sum at one frequency.
double eval_spectrum(const std::vector<LorentzianTerm>& terms, double omega);

} // namespace cscool
