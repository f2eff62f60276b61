#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cscool/config.hpp"
#include "cscool/constants.hpp"
#include "cscool/params.hpp"

using namespace cscool;

namespace {
SystemConfig base() { return parse_config_text(default_config_template()); }
}

TEST_CASE("mechanical frequencies hit the reference round numbers (5%)") {
    const DerivedParams p = derive_params(base());
    CHECK(p.trap_freqs[0] / kTwoPi == doctest::Approx(0.12e6).epsilon(0.05));
    CHECK(p.trap_freqs[1] / kTwoPi == doctest::Approx(0.14e6).epsilon(0.05));
    CHECK(p.trap_freqs[2] / kTwoPi == doctest::Approx(0.04e6).epsilon(0.05));
}

TEST_CASE("frozen full-precision frequency oracles") {
    // Independently derived from Omega = sqrt(eps0 eps_c E0^2 / (2 rho W^2))
    // with the per-axis geometric factors; frozen at 6 digits.
    const DerivedParams p = derive_params(base());
    CHECK(p.trap_freqs[0] / kTwoPi == doctest::Approx(120724.5).epsilon(1e-5));
    CHECK(p.trap_freqs[1] / kTwoPi == doctest::Approx(139714.9).epsilon(1e-5));
    CHECK(p.trap_freqs[2] / kTwoPi == doctest::Approx(40167.6).epsilon(1e-5));
}

TEST_CASE("independent closed-form reconstruction of the derived chain") {
    const SystemConfig c = base();
    const DerivedParams p = derive_params(c);

    const double V = 4.0 * kPi * std::pow(c.particle_radius, 3) / 3.0;
    CHECK(p.volume == doctest::Approx(V).epsilon(1e-12));
    CHECK(p.mass == doctest::Approx(c.mass_density * V).epsilon(1e-12));

    const double eps_c =
        3.0 * (c.rel_permittivity - 1.0) / (c.rel_permittivity + 2.0);
    CHECK(p.eps_c == doctest::Approx(eps_c).epsilon(1e-12));
    CHECK(p.alpha_pol == doctest::Approx(kEps0 * eps_c * V).epsilon(1e-12));

    const double omega0 = kTwoPi * kClight / c.tweezer_wavelength;
    CHECK(p.omega0 == doctest::Approx(omega0).epsilon(1e-12));
    CHECK(p.k0 == doctest::Approx(omega0 / kClight).epsilon(1e-12));

    const double E0 = std::sqrt(4.0 * c.tweezer_power /
                                (kPi * kEps0 * kClight * c.tweezer_waist *
                                 c.tweezer_waist * c.asym_x * c.asym_y));
    CHECK(p.field_amp == doctest::Approx(E0).epsilon(1e-12));

    const double Vc = kPi * c.cavity_waist * c.cavity_waist * c.cavity_length / 4.0;
    CHECK(p.mode_volume == doctest::Approx(Vc).epsilon(1e-12));

    // axis scalings: Omega_x / Omega_y = A_y / A_x, Omega_z / Omega_x =
    // A_x lambda0 / (sqrt(2) pi W_t)
    CHECK(p.trap_freqs[0] / p.trap_freqs[1] ==
          doctest::Approx(c.asym_y / c.asym_x).epsilon(1e-12));
    CHECK(p.trap_freqs[2] / p.trap_freqs[0] ==
          doctest::Approx(c.asym_x * c.tweezer_wavelength /
                          (std::sqrt(2.0) * kPi * c.tweezer_waist))
              .epsilon(1e-12));

    for (int j = 0; j < 3; ++j)
        CHECK(p.zero_point[j] ==
              doctest::Approx(std::sqrt(kHbar / (2.0 * p.mass * p.trap_freqs[j])))
                  .epsilon(1e-12));

    CHECK(p.finesse ==
          doctest::Approx(kPi * kClight /
                          (2.0 * c.cavity_halfwidth * c.cavity_length))
              .epsilon(1e-12));
    CHECK(p.cutoff_Kc ==
          doctest::Approx(c.pv_cutoff_factor / c.particle_radius).epsilon(1e-12));
}

TEST_CASE("cavity frequency sits one detuning above the tweezer") {
    const SystemConfig c = base();
    const DerivedParams p = derive_params(c);
    // difference of ~1e15-scale numbers: allow for the float cancellation
    CHECK(p.omega_c - p.omega0 == doctest::Approx(c.detuning).epsilon(1e-6));
    CHECK(std::abs(p.omega_c - p.omega0) / p.omega0 < 1e-6);
    CHECK(p.k_c == doctest::Approx(p.omega_c / kClight).epsilon(1e-12));
}

TEST_CASE("displacement-coupling constants follow the cavity-shift scale") {
    const SystemConfig c = base();
    const DerivedParams p = derive_params(c);
    // Delta_c = (omega_c eps_c V / 2 V_c) cos^2(phi); spot value ~ 2pi*3.4 kHz
    // at the anti-node.
    const double disp_scale = p.omega_c * p.eps_c * p.volume / (2.0 * p.mode_volume);
    CHECK(p.delta_c ==
          doctest::Approx(disp_scale * std::cos(c.phi) * std::cos(c.phi))
              .epsilon(1e-12));
    CHECK(disp_scale / kTwoPi == doctest::Approx(3.4e3).epsilon(0.15));

    // g_cx / g_cy = (x0/y0) tan(theta): transverse zero points project onto
    // the cavity axis with the polarization-angle weights
    CHECK(p.g_cx / p.g_cy ==
          doctest::Approx(std::tan(c.theta) * p.zero_point[0] / p.zero_point[1])
              .epsilon(1e-9));
}

TEST_CASE("trap frequencies scale as sqrt of tweezer power") {
    SystemConfig c = base();
    const DerivedParams p1 = derive_params(c);
    c.tweezer_power *= 4.0;
    const DerivedParams p2 = derive_params(c);
    for (int j = 0; j < 3; ++j)
        CHECK(p2.trap_freqs[j] / p1.trap_freqs[j] ==
              doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p2.field_amp / p1.field_amp == doctest::Approx(2.0).epsilon(1e-12));
}
