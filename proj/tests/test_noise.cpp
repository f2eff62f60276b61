#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cscool/config.hpp"
#include "cscool/constants.hpp"
#include "cscool/model.hpp"
#include "cscool/noise.hpp"

using namespace cscool;

namespace {
Model model_at(double pressure_Pa) {
    SystemConfig c = parse_config_text(default_config_template());
    c.gas_pressure = pressure_Pa;
    return build_model(c);
}
} // namespace

TEST_CASE("gas damping: 2pi x 1.1 kHz per mbar (5%)") {
    const Model m = model_at(100.0); // 1 mbar
    CHECK(m.nr.gamma / kTwoPi == doctest::Approx(1.1e3).epsilon(0.05));
    // frozen full-precision oracle
    CHECK(m.nr.gamma / kTwoPi == doctest::Approx(1095.0).epsilon(2e-3));
    // strictly linear in pressure
    const Model m2 = model_at(200.0);
    CHECK(m2.nr.gamma / m.nr.gamma == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("gas localization rates: reference per-mbar coefficients (5%)") {
    const Model m = model_at(100.0); // 1 mbar
    CHECK(m.nr.Gamma_p[0] / kTwoPi == doctest::Approx(28.6e9).epsilon(0.05));
    CHECK(m.nr.Gamma_p[1] / kTwoPi == doctest::Approx(24.5e9).epsilon(0.05));
    CHECK(m.nr.Gamma_p[2] / kTwoPi == doctest::Approx(85.7e9).epsilon(0.05));
}

TEST_CASE("Gamma^(p)/gamma is pressure independent and equals the thermal scale") {
    const Model a = model_at(1e-3);
    const Model b = model_at(10.0);
    for (int j = 0; j < 3; ++j) {
        const double ra = a.nr.Gamma_p[j] / a.nr.gamma;
        const double rb = b.nr.Gamma_p[j] / b.nr.gamma;
        CHECK(ra == doctest::Approx(rb).epsilon(1e-12));
        const double r0 = a.prm.zero_point[j];
        CHECK(ra == doctest::Approx(a.prm.mass * kBoltz * a.cfg.gas_temperature *
                                    r0 * r0 / (kHbar * kHbar))
                        .epsilon(1e-12));
    }
}

TEST_CASE("trap-displacement heating: (94, 110, 31) kHz per sigma^2 (5%)") {
    const Model m = model_at(1e-3);
    const std::array<double, 3> coeff = {94e3, 110e3, 31e3};
    for (int j = 0; j < 3; ++j) {
        const double s2 = m.nr.sigma[j] * m.nr.sigma[j];
        CHECK(m.nr.Gamma_d[j] / kTwoPi / s2 ==
              doctest::Approx(coeff[j]).epsilon(0.05));
        // closed form: (pi/4) Omega_j'
        CHECK(m.nr.Gamma_d[j] ==
              doctest::Approx(kPi / 4.0 * m.mc.Omega_prime[j] * s2).epsilon(1e-12));
    }
}

TEST_CASE("sigma <-> PSD conversion round-trips and hits the fitted amplitudes") {
    SystemConfig c = parse_config_text(default_config_template());
    const Model m = build_model(c);
    // sigma = (0.67, 0.26, 18.6) corresponds to sqrt(S) ~ (6, 2, 500) fm/rtHz
    const std::array<double, 3> rt = {6e-15, 2e-15, 500e-15};
    for (int j = 0; j < 3; ++j)
        CHECK(std::sqrt(m.nr.psd[j]) == doctest::Approx(rt[j]).epsilon(0.25));

    // feed the PSDs back in and recover sigma
    SystemConfig c2 = c;
    c2.noise_mode = NoiseInputMode::Psd;
    c2.sigma = {0, 0, 0};
    c2.displacement_psd = m.nr.psd;
    const Model m2 = build_model(c2);
    for (int j = 0; j < 3; ++j)
        CHECK(m2.nr.sigma[j] == doctest::Approx(m.nr.sigma[j]).epsilon(1e-10));
}

TEST_CASE("total heating sums the three channels") {
    const Model m = model_at(1e-3);
    for (int j = 0; j < 3; ++j)
        CHECK(m.nr.Gamma_total[j] ==
              doctest::Approx(m.mc.Gamma_recoil[j] + m.nr.Gamma_p[j] +
                              m.nr.Gamma_d[j])
                  .epsilon(1e-12));
}
