#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cscool/config.hpp"
#include "cscool/constants.hpp"
#include "cscool/displacements.hpp"
#include "cscool/model.hpp"

using namespace cscool;

namespace {
Model model_with(double phi, double theta) {
    SystemConfig c = parse_config_text(default_config_template());
    c.phi = phi;
    c.theta = theta;
    return build_model(c);
}
} // namespace

TEST_CASE("polynomial roots: known factorizations") {
    // (x-1)(x-2)(x+3) = x^3 - 7x + 6
    auto r = real_poly_roots({6.0, -7.0, 0.0, 1.0});
    REQUIRE(r.size() == 3);
    std::sort(r.begin(), r.end());
    CHECK(r[0] == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r[2] == doctest::Approx(2.0).epsilon(1e-10));

    // wildly scaled coefficients: 1e12 (x - 1e-6)(x + 1e-6)
    auto s = real_poly_roots({-1.0, 0.0, 1e12});
    REQUIRE(s.size() == 2);
    std::sort(s.begin(), s.end());
    CHECK(s[0] == doctest::Approx(-1e-6).epsilon(1e-8));
    CHECK(s[1] == doctest::Approx(1e-6).epsilon(1e-8));

    // x^2 + 1: no real roots
    CHECK(real_poly_roots({1.0, 0.0, 1.0}).empty());

    // negligible leading coefficient is trimmed: ~linear equation
    auto t = real_poly_roots({-2.0, 1.0, 1e-300});
    REQUIRE(t.size() == 1);
    CHECK(t[0] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("primitive-equation residuals below 1e-9 across the angle grid") {
    for (int ip = 0; ip <= 6; ++ip) {
        for (int it = 0; it <= 4; ++it) {
            const double phi = ip * (kPi / 2.0) / 6.0;
            const double theta = it * (80.0 * kPi / 180.0) / 4.0;
            const Model m = model_with(phi, theta);
            for (int j = 0; j < 3; ++j) {
                INFO("phi=", phi, " theta=", theta, " axis=", j);
                CHECK(std::abs(m.disp.residuals[j]) < 1e-9);
            }
        }
    }
}

TEST_CASE("displacements vanish at the cavity node and at parallel polarization") {
    const Model node = model_with(kPi / 2.0, 10.0 * kPi / 180.0);
    CHECK(std::abs(node.disp.alpha_c) < 1e-9);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(node.disp.beta[j]) < 1e-9);

    const Model par = model_with(kPi / 4.0, kPi / 2.0);
    CHECK(std::abs(par.disp.alpha_c) < 1e-9);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(par.disp.beta[j]) < 1e-9);
}

TEST_CASE("default parameters give one unambiguous physical root") {
    const Model m = model_with(kPi / 4.0, 10.0 * kPi / 180.0);
    CHECK(m.disp.quintic_real_roots.size() == 1);
    CHECK(m.disp.root_selected == 0);
    CHECK_FALSE(m.disp.ambiguous_root);
    CHECK(m.disp.photon_number ==
          doctest::Approx(std::norm(m.disp.alpha_c)).epsilon(1e-12));
    for (int j = 0; j < 3; ++j)
        CHECK(m.disp.equilibrium_shift[j] ==
              doctest::Approx(2.0 * m.disp.beta[j] * m.prm.zero_point[j])
                  .epsilon(1e-12));
}

TEST_CASE("solution branch is continuous in phi (homotopy picks no stray root)") {
    // step-to-step jumps stay a small fraction of the overall branch scale
    // (a stray root would jump by order of the scale itself)
    const double scale =
        std::abs(model_with(0.0, 10.0 * kPi / 180.0).disp.beta[2]);
    REQUIRE(scale > 100.0);
    double prev_bz = 0.0;
    bool first = true;
    for (int i = 0; i <= 40; ++i) {
        const double phi = i * (kPi / 2.0) / 40.0;
        const Model m = model_with(phi, 10.0 * kPi / 180.0);
        if (!first)
            CHECK(std::abs(m.disp.beta[2] - prev_bz) < 0.10 * scale);
        prev_bz = m.disp.beta[2];
        first = false;
    }
    // the branch ends at zero displacement at the node
    CHECK(std::abs(prev_bz) < 1e-9);
}

TEST_CASE("axial shift magnitude stays well inside the optical trap") {
    const Model m = model_with(kPi / 4.0, 10.0 * kPi / 180.0);
    // tens of nanometers, far below the waist
    CHECK(std::abs(m.disp.equilibrium_shift[2]) > 1e-9);
    CHECK(std::abs(m.disp.equilibrium_shift[2]) < 0.2e-6);
    // transverse shifts are much smaller than the axial one
    CHECK(std::abs(m.disp.equilibrium_shift[0]) <
          std::abs(m.disp.equilibrium_shift[2]));
    CHECK(std::abs(m.disp.equilibrium_shift[1]) <
          std::abs(m.disp.equilibrium_shift[2]));
}

TEST_CASE("photon occupation scales with cos^2 phi drive at fixed detuning") {
    const Model anti = model_with(0.0, 10.0 * kPi / 180.0);
    const Model mid = model_with(kPi / 4.0, 10.0 * kPi / 180.0);
    CHECK(anti.disp.photon_number > mid.disp.photon_number);
    // order of magnitude 1e6 at the defaults
    CHECK(anti.disp.photon_number > 3e5);
    CHECK(anti.disp.photon_number < 3e7);
}
