#include "cscool/renorm.hpp"

#include <cmath>

#include "cscool/constants.hpp"
#include "cscool/errors.hpp"

namespace cscool {

ModelCoefficients renormalize(const DerivedParams& p, const PvConstants& pv,
                              const Displacements& d, double delta_tilde) {
    ModelCoefficients mc;
    const auto& cfg = p.cfg;
    const double cos_ph = std::cos(cfg.phi), sin_ph = std::sin(cfg.phi);
    const double cos_th = std::cos(cfg.theta), sin_th = std::sin(cfg.theta);
    const double kappa = cfg.cavity_halfwidth;

    mc.delta_0 = delta_tilde - 2.0 * p.g_cx * d.beta[0] - 2.0 * p.g_cy * d.beta[1];

    // Thermal-photon shift, leading asymptotic form of the exponential
    // integral at optical frequencies (hbar omega0 >> k_B T always).
    mc.Delta_A = (2.0 * kappa / kPi) * (kBoltz * cfg.gas_temperature) /
                 (kHbar * p.omega0);

    // Scattering-reservoir shift and linewidth.  The reservoir occupation is
    // negligible at optical frequencies (set to zero inside the integral);
    // the frequency integral has the same exact antiderivative as the
    // momentum-space cubic PV integral.
    const double ecVcos = p.eps_c * p.volume * cos_ph / kTwoPi;
    const double omega_pole = p.omega0 + mc.delta_0;
    const double c3 = kClight * kClight * kClight;
    mc.Delta_B1 = -ecVcos * ecVcos * p.omega_c / (3.0 * p.mode_volume * c3) *
                  pv_cubic_integral(omega_pole, kClight * p.cutoff_Kc);
    mc.kappa_B1 = ecVcos * ecVcos * kPi * p.omega_c / (3.0 * p.mode_volume) *
                  std::pow(omega_pole / kClight, 3);

    mc.delta_prime = mc.delta_0 + mc.Delta_A + mc.Delta_B1;
    mc.kappa_prime = kappa + mc.kappa_B1;
    mc.delta_bare = mc.delta_prime + p.delta_c +
                    2.0 * p.g_cx * d.beta[0] + 2.0 * p.g_cy * d.beta[1] -
                    mc.Delta_B1;

    // Photon recoil (bare) and trap-frequency shifts share the prefactor
    // (eps_c V E0 / 2 pi)^2; the anisotropy vector (x, 2y, 7z) reflects the
    // dipole radiation pattern of the scattered tweezer light.
    const double ecVE = p.eps_c * p.volume * p.field_amp / kTwoPi;
    const double x02 = p.zero_point[0] * p.zero_point[0];
    const double y02 = p.zero_point[1] * p.zero_point[1];
    const double z02 = p.zero_point[2] * p.zero_point[2];
    const double k05 = std::pow(p.k0, 5);
    const double pref_r = kPi * kEps0 / (30.0 * kHbar) * ecVE * ecVE * k05;
    const std::array<double, 3> recoil_bare = {pref_r * x02, pref_r * 2.0 * y02,
                                               pref_r * 7.0 * z02};

    const double pref_D = kEps0 / (30.0 * kHbar * std::pow(kClight, 5)) * ecVE * ecVE;
    const double K3 = pv_cubic_integral(p.omega0, kClight * p.cutoff_Kc);
    const double K5 = pv_quintic_integral(p.omega0, kClight * p.cutoff_Kc);
    // Integrands carry 1/(omega0 - omega) = -1/(omega - omega0).
    mc.Delta_j[0] = pref_D * (-K5) * x02;
    mc.Delta_j[1] = pref_D * (-K5) * 2.0 * y02;
    mc.Delta_j[2] = pref_D * (-(2.0 * K5 + 5.0 * p.omega0 * p.omega0 * K3)) * z02;

    for (int j = 0; j < 3; ++j) {
        const double arg = 1.0 + 4.0 * mc.Delta_j[j] / p.trap_freqs[j];
        if (!(arg > 0.0))
            throw PhysicsError("ModelBreakdown",
                               "frequency renormalization 1 + 4 Delta_j/Omega_j "
                               "non-positive on axis " + std::to_string(j));
        mc.Omega_prime[j] = p.trap_freqs[j] * std::sqrt(arg);
        mc.chi[j] = std::sqrt(p.trap_freqs[j] / mc.Omega_prime[j]);
    }

    // Bare optomechanical couplings: direct scattering plus the dispersive
    // coupling dressed by the mean cavity field.
    const std::complex<double> I(0.0, 1.0);
    mc.g[0] = -(0.5 * p.coupling_G * p.k_c * p.zero_point[0] * sin_ph * sin_th +
                d.alpha_c * p.g_cx);
    mc.g[1] = -(0.5 * p.coupling_G * p.k_c * p.zero_point[1] * sin_ph * cos_th +
                d.alpha_c * p.g_cy);
    mc.g[2] = I * 0.5 * p.coupling_G * p.k0 * p.zero_point[2] * cos_ph;

    // Reservoir-mediated extra z coupling and the incoherent cavity-COM rate.
    // The momentum integral carries 1/(k0 - k), i.e. minus the cubic PV value.
    mc.g_tilde_z = -I * p.omega_c * pv.C0 * cos_ph * cos_th /
                   (kPi * std::pow(p.k0, 3)) * pv.pv_cubic;
    const std::complex<double> Upsilon_z = I * p.omega_c * pv.C0 * cos_ph * cos_th;
    mc.Upsilon = Upsilon_z * mc.chi[2];

    for (int j = 0; j < 3; ++j) {
        std::complex<double> gj = mc.g[j];
        if (j == 2) gj += mc.g_tilde_z;
        mc.g_prime[j] = gj * mc.chi[j];
        mc.Gamma_recoil[j] = recoil_bare[j] * mc.chi[j] * mc.chi[j];
    }

    mc.include_upsilon = cfg.include_upsilon;
    mc.zero_point = p.zero_point;
    return mc;
}

DetuningSolution invert_detuning(const DerivedParams& p, const PvConstants& pv,
                                 double target_delta_prime) {
    const double cos_ph = std::cos(p.cfg.phi);
    double delta_tilde = target_delta_prime + pv.varpi * cos_ph * cos_ph;
    DetuningSolution sol;
    const double tol = kTwoPi * 1.0; // 1 Hz
    for (int it = 1; it <= 50; ++it) {
        sol.disp = solve_displacements(p, pv, delta_tilde);
        sol.mc = renormalize(p, pv, sol.disp, delta_tilde);
        const double err = target_delta_prime - sol.mc.delta_prime;
        sol.delta_tilde = delta_tilde;
        sol.iterations = it;
        if (std::abs(err) < tol) return sol;
        delta_tilde += err;
    }
    throw PhysicsError("NoConvergence",
                       "detuning inversion did not reach 2*pi*1 Hz in 50 "
                       "iterations (last residual " +
                       std::to_string(target_delta_prime - sol.mc.delta_prime) +
                       " rad/s)");
}

DetuningSolution solve_at_bare_detuning(const DerivedParams& p,
                                        const PvConstants& pv,
                                        double delta_bare) {
    DetuningSolution sol;
    const double Delta_A = (2.0 * p.cfg.cavity_halfwidth / kPi) *
                           (kBoltz * p.cfg.gas_temperature) / (kHbar * p.omega0);
    sol.delta_tilde = delta_bare - Delta_A - p.delta_c;
    sol.disp = solve_displacements(p, pv, sol.delta_tilde);
    sol.mc = renormalize(p, pv, sol.disp, sol.delta_tilde);
    sol.iterations = 1;
    return sol;
}

} // namespace cscool
