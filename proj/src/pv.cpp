#include "cscool/pv.hpp"

#include <cmath>

#include "cscool/constants.hpp"
#include "cscool/errors.hpp"

namespace cscool {

double pv_cubic_integral(double k0, double Kc) {
    if (!(k0 > 0.0) || !(Kc > 0.0) || Kc == k0)
        throw ConfigError("pv_cubic_integral: need k0 > 0, Kc > 0, Kc != k0");
    const double k02 = k0 * k0, k03 = k02 * k0;
    return Kc * Kc * Kc / 3.0 + k0 * Kc * Kc / 2.0 + k02 * Kc +
           k03 * std::log(std::abs(Kc - k0) / k0);
}

double pv_quintic_integral(double k0, double Kc) {
    if (!(k0 > 0.0) || !(Kc > 0.0) || Kc == k0)
        throw ConfigError("pv_quintic_integral: need k0 > 0, Kc > 0, Kc != k0");
    const double k02 = k0 * k0, k03 = k02 * k0, k04 = k03 * k0, k05 = k04 * k0;
    const double K2 = Kc * Kc, K3 = K2 * Kc, K4 = K3 * Kc, K5 = K4 * Kc;
    return K5 / 5.0 + k0 * K4 / 4.0 + k02 * K3 / 3.0 + k03 * K2 / 2.0 +
           k04 * Kc + k05 * std::log(std::abs(Kc - k0) / k0);
}

PvConstants pv_constants(const DerivedParams& p) {
    PvConstants pv;
    pv.pole_inside = p.k0 < p.cutoff_Kc;
    pv.pv_cubic = pv_cubic_integral(p.k0, p.cutoff_Kc);
    pv.pv_quintic = pv_quintic_integral(p.k0, p.cutoff_Kc);

    // varpi = eps_c^2 V^2 / (12 pi^2) * (omega_c / V_c) * PV3
    const double ecV = p.eps_c * p.volume;
    pv.varpi = ecV * ecV / (12.0 * kPi * kPi) * (p.omega_c / p.mode_volume) *
               pv.pv_cubic;

    // varpi2 = (eps_c V E0 / pi)^2 * eps0 / (30 hbar k0^2) * PV5
    const double ecVE = ecV * p.field_amp / kPi;
    pv.varpi2 = ecVE * ecVE * kEps0 / (30.0 * kHbar * p.k0 * p.k0) * pv.pv_quintic;

    // C0 = eps_c^2/(12 pi) * (k0 z0) * (V k0^3)
    //      * sqrt( (V/V_c) * eps0 V E0^2 / (2 hbar omega_c) )
    const double z0 = p.zero_point[2];
    pv.C0 = p.eps_c * p.eps_c / (12.0 * kPi) * (p.k0 * z0) *
            (p.volume * p.k0 * p.k0 * p.k0) *
            std::sqrt((p.volume / p.mode_volume) * kEps0 * p.volume *
                      p.field_amp * p.field_amp / (2.0 * kHbar * p.omega_c));
    return pv;
}

} // namespace cscool
