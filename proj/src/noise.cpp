#include "cscool/noise.hpp"

#include <cmath>

#include "cscool/constants.hpp"

namespace cscool {

double gas_damping(double pressure_Pa, double T, double m0, double R, double mass) {
    return 0.619 * (6.0 * kPi * R * R / mass) * pressure_Pa *
           std::sqrt(2.0 * m0 / (kPi * kBoltz * T));
}

NoiseRates heating_rates(const DerivedParams& p, const ModelCoefficients& mc) {
    NoiseRates nr;
    const auto& cfg = p.cfg;
    nr.gamma = gas_damping(cfg.gas_pressure, cfg.gas_temperature,
                           cfg.gas_molecule_mass, cfg.particle_radius, p.mass);

    for (int j = 0; j < 3; ++j) {
        const double r02 = p.zero_point[j] * p.zero_point[j];
        const double Om = mc.Omega_prime[j];

        // sigma_j^2 = S_jj^(d)(Omega_j) * Omega_j / r_j0^2 (PSD in m^2/Hz,
        // i.e. m^2 s); the two representations are kept in lockstep.
        if (cfg.noise_mode == NoiseInputMode::Psd) {
            nr.psd[j] = cfg.displacement_psd[j];
            nr.sigma[j] = std::sqrt(nr.psd[j] * Om / r02);
        } else {
            nr.sigma[j] = cfg.sigma[j];
            nr.psd[j] = nr.sigma[j] * nr.sigma[j] * r02 / Om;
        }
        nr.Gamma_d[j] = kPi / 4.0 * Om * nr.sigma[j] * nr.sigma[j];

        // Gas collisions localize the particle at a rate set by the thermal
        // de Broglie scale: Gamma^(p) = m k_B T r_j0^2 gamma / hbar^2.
        nr.Gamma_p[j] = p.mass * kBoltz * cfg.gas_temperature * r02 * nr.gamma /
                        (kHbar * kHbar);

        nr.Gamma_total[j] = mc.Gamma_recoil[j] + nr.Gamma_p[j] + nr.Gamma_d[j];
    }
    return nr;
}

} // namespace cscool
