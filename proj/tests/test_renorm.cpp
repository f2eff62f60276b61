#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cscool/config.hpp"
#include "cscool/constants.hpp"
#include "cscool/errors.hpp"
#include "cscool/model.hpp"
#include "cscool/renorm.hpp"

using namespace cscool;

namespace {
SystemConfig base() { return parse_config_text(default_config_template()); }

Model model_with(double phi, double theta) {
    SystemConfig c = base();
    c.phi = phi;
    c.theta = theta;
    return build_model(c);
}
} // namespace

TEST_CASE("thermal-photon cavity shift Delta_A = (2 kappa / pi)(kB T / hbar w0)") {
    const Model m = build_model(base());
    const double expect = 2.0 * m.cfg.cavity_halfwidth / kPi * kBoltz *
                          m.cfg.gas_temperature / (kHbar * m.prm.omega0);
    CHECK(m.mc.Delta_A == doctest::Approx(expect).epsilon(1e-12));
    CHECK(m.mc.Delta_A / kTwoPi == doctest::Approx(10.9e3).epsilon(0.02));
}

TEST_CASE("scattering linewidth kappa_B1 = 2pi x 5 cos^2(phi) Hz (10%)") {
    for (double phi : {0.0, kPi / 6, kPi / 4, kPi / 3}) {
        const Model m = model_with(phi, 10.0 * kPi / 180.0);
        CHECK(m.mc.kappa_B1 / kTwoPi ==
              doctest::Approx(5.0 * std::cos(phi) * std::cos(phi)).epsilon(0.10));
        CHECK(m.mc.kappa_prime ==
              doctest::Approx(m.cfg.cavity_halfwidth + m.mc.kappa_B1)
                  .epsilon(1e-12));
    }
    // exact cos^2 ratio between two positions
    const Model a = model_with(0.0, 0.1);
    const Model b = model_with(kPi / 3.0, 0.1);
    CHECK(b.mc.kappa_B1 / a.mc.kappa_B1 == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("photon recoil rates match the reference values (5%)") {
    const Model m = build_model(base());
    CHECK(m.mc.Gamma_recoil[0] / kTwoPi == doctest::Approx(0.09e3).epsilon(0.05));
    CHECK(m.mc.Gamma_recoil[1] / kTwoPi == doctest::Approx(0.15e3).epsilon(0.05));
    CHECK(m.mc.Gamma_recoil[2] / kTwoPi == doctest::Approx(1.89e3).epsilon(0.05));
    // fixed axis ratios from the (x0^2, 2 y0^2, 7 z0^2) weights
    const auto& r0 = m.prm.zero_point;
    const double chi2x = m.mc.chi[0] * m.mc.chi[0];
    const double chi2y = m.mc.chi[1] * m.mc.chi[1];
    const double chi2z = m.mc.chi[2] * m.mc.chi[2];
    CHECK(m.mc.Gamma_recoil[1] / m.mc.Gamma_recoil[0] ==
          doctest::Approx(2.0 * r0[1] * r0[1] * chi2y / (r0[0] * r0[0] * chi2x))
              .epsilon(1e-9));
    CHECK(m.mc.Gamma_recoil[2] / m.mc.Gamma_recoil[0] ==
          doctest::Approx(7.0 * r0[2] * r0[2] * chi2z / (r0[0] * r0[0] * chi2x))
              .epsilon(1e-9));
}

TEST_CASE("incoherent coupling magnitude |Upsilon| = 2pi x 82 cos(phi)cos(theta) Hz") {
    for (double phi : {0.0, kPi / 4}) {
        for (double theta : {0.0, 10.0 * kPi / 180.0, kPi / 4}) {
            const Model m = model_with(phi, theta);
            const double expect = 82.0 * std::abs(std::cos(phi) * std::cos(theta));
            CHECK(std::abs(m.mc.Upsilon) / kTwoPi ==
                  doctest::Approx(expect).epsilon(0.10));
        }
    }
}

TEST_CASE("frequency renormalization is self-consistent") {
    const Model m = build_model(base());
    for (int j = 0; j < 3; ++j) {
        const double Om = m.prm.trap_freqs[j];
        CHECK(m.mc.Omega_prime[j] ==
              doctest::Approx(Om * std::sqrt(1.0 + 4.0 * m.mc.Delta_j[j] / Om))
                  .epsilon(1e-12));
        CHECK(m.mc.chi[j] ==
              doctest::Approx(std::sqrt(Om / m.mc.Omega_prime[j])).epsilon(1e-12));
        CHECK(m.mc.g_prime[j] == (j == 2 ? m.mc.g[j] + m.mc.g_tilde_z : m.mc.g[j]) *
                                     m.mc.chi[j]);
    }
    // shifts are small but nonzero at the defaults
    CHECK(std::abs(m.mc.Delta_j[2]) > 0.0);
    CHECK(std::abs(m.mc.Delta_j[2]) / m.prm.trap_freqs[2] < 1e-2);
}

TEST_CASE("detuning inversion hits the target and converges fast") {
    for (double target_kHz : {100.0, 400.0, 2000.0}) {
        for (double phi : {0.0, kPi / 4, kPi / 2}) {
            SystemConfig c = base();
            c.phi = phi;
            c.detuning = kTwoPi * target_kHz * 1e3;
            const Model m = build_model(c);
            INFO("target ", target_kHz, " kHz, phi ", phi);
            CHECK(std::abs(m.mc.delta_prime - c.detuning) <= kTwoPi * 1.0);
            CHECK(m.detuning_iterations <= 5);
        }
    }
}

TEST_CASE("bare-detuning mode round-trips against target mode") {
    SystemConfig c = base();
    const Model m1 = build_model(c);
    SystemConfig c2 = c;
    c2.detuning_mode = DetuningMode::Bare;
    c2.detuning = m1.mc.delta_bare;
    const Model m2 = build_model(c2);
    CHECK(m2.mc.delta_prime == doctest::Approx(m1.mc.delta_prime).epsilon(1e-9));
    CHECK(m2.mc.delta_bare == doctest::Approx(m1.mc.delta_bare).epsilon(1e-12));
    // the operational and bare detunings differ by ~ 2pi x kHz scale shifts
    CHECK(std::abs(m1.mc.delta_bare - m1.mc.delta_prime) > kTwoPi * 100.0);
}

TEST_CASE("detuning-shift budget: |delta' - delta_bare| peaks near 2pi x 3.4 kHz") {
    double worst = 0.0;
    for (double phi : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
        const Model m = model_with(phi, 10.0 * kPi / 180.0);
        worst = std::max(worst, std::abs(m.mc.delta_prime - m.mc.delta_bare));
    }
    // Delta_A ~ 10.9 kHz and Delta_c ~ 3.4 kHz partially cancel against the
    // displacement terms; the net max lands at the Delta_c scale.
    CHECK(worst / kTwoPi > 1e3);
    CHECK(worst / kTwoPi < 15e3);
}

TEST_CASE("power-law exponents of the reservoir corrections") {
    auto exponent = [](double a, double b, double factor) {
        return std::log(b / a) / std::log(factor);
    };
    SystemConfig c = base();
    const Model m1 = build_model(c);
    c.tweezer_power *= 4.0;
    const Model m2 = build_model(c);

    // Gamma^(r) ~ E0^2 r0^2 ~ P^(1/2); |Upsilon| ~ P^(1/4);
    // kappa_B1, Delta_A independent of P.
    CHECK(exponent(m1.mc.Gamma_recoil[0], m2.mc.Gamma_recoil[0], 4.0) ==
          doctest::Approx(0.5).epsilon(0.04));
    CHECK(exponent(std::abs(m1.mc.Upsilon), std::abs(m2.mc.Upsilon), 4.0) ==
          doctest::Approx(0.25).epsilon(0.08));
    CHECK(m2.mc.kappa_B1 == doctest::Approx(m1.mc.kappa_B1).epsilon(1e-6));
    CHECK(m2.mc.Delta_A == doctest::Approx(m1.mc.Delta_A).epsilon(1e-12));
}

TEST_CASE("couplings vanish with the scattered field") {
    // tweezer polarized along the cavity axis: nothing scatters
    const Model par = model_with(kPi / 4.0, kPi / 2.0);
    for (int j = 0; j < 3; ++j)
        CHECK(std::abs(par.mc.g_prime[j]) < kTwoPi * 1e-6);

    // at the node, the axial coupling dies, the transverse ones survive
    const Model node = model_with(kPi / 2.0, kPi / 4.0);
    CHECK(std::abs(node.mc.g_prime[2]) < kTwoPi * 1.0);
    CHECK(std::abs(node.mc.g_prime[0]) > kTwoPi * 1e3);
    CHECK(std::abs(node.mc.g_prime[1]) > kTwoPi * 1e3);

    // at the anti-node with theta = 0, only the axial coupling survives
    const Model anti = model_with(0.0, 0.0);
    CHECK(std::abs(anti.mc.g_prime[2]) > kTwoPi * 1e3);
    CHECK(std::abs(anti.mc.g_prime[0]) < kTwoPi * 1.0);
    CHECK(std::abs(anti.mc.g_prime[1]) < kTwoPi * 1.0);
}
