#pragma once
//
// Principal-value integrals of the traced-out free-field mode sums, and the
// closed-form constants built from them.
//
// Both integrals have exact antiderivatives by polynomial long division,
//     k^3/(k-k0) = k^2 + k0 k + k0^2 + k0^3/(k-k0)
//     k^5/(k-k0) = k^4 + k0 k^3 + k0^2 k^2 + k0^3 k + k0^4 + k0^5/(k-k0)
// and the principal value of the pole term over [0, Kc] is
//     PV int_0^Kc dk/(k-k0) = log(|Kc-k0| / k0).
// When Kc < k0 the pole lies outside the domain and the same expression is
// the ordinary integral; production code never uses numerical quadrature
// (quadrature exists only as a test oracle).

#include "cscool/params.hpp"

namespace cscool {

struct PvConstants {
    double varpi = 0;      // rad/s, cavity-line shift constant
    double varpi2 = 0;     // rad/s (per (k0 r)^2), trap-softening constant
    double C0 = 0;         // adimensional, incoherent cavity-COM constant
    double pv_cubic = 0;   // 1/m^3, PV int_0^Kc k^3/(k-k0) dk
    double pv_quintic = 0; // 1/m^5, PV int_0^Kc k^5/(k-k0) dk
    bool pole_inside = false; // true when k0 < Kc (pole inside the domain)
};

// PV int_0^Kc k^3/(k-k0) dk by the exact antiderivative.
double pv_cubic_integral(double k0, double Kc);

// PV int_0^Kc k^5/(k-k0) dk by the exact antiderivative.
double pv_quintic_integral(double k0, double Kc);

// Assemble the closed-form constants from the derived parameters.
PvConstants pv_constants(const DerivedParams& p);

} // namespace cscool
