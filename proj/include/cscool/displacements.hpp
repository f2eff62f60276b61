#pragma once
//
// Steady classical displacements of the cavity field (alpha_c) and of the
// COM equilibrium (beta_x, beta_y, beta_z) in the displaced frame.
//
// The coupled equilibrium conditions reduce, after eliminating beta_x by the
// exact ratio relation and beta_z by its closed form, to a single real
// polynomial equation in beta_y.  The polynomial is solved exactly by
// companion-matrix eigenvalues and each real root is polished by Newton
// iteration on the un-rescaled scalar equation; the physical root is selected
// by a 10-step homotopy in tweezer power from the trivial zero solution.

#include <array>
#include <complex>
#include <vector>

#include "cscool/params.hpp"
#include "cscool/pv.hpp"

namespace cscool {

struct Displacements {
    std::complex<double> alpha_c{0.0, 0.0}; // cavity amplitude (adimensional)
    std::array<double, 3> beta = {0, 0, 0}; // COM offsets in zero-point units
    double photon_number = 0;               // |alpha_c|^2
    std::array<double, 3> equilibrium_shift = {0, 0, 0}; // m, 2 beta_j r_j0

    // All real roots of the reduced polynomial (beta_y candidates) that pass
    // the self-consistency residual check, the index of the selected one,
    // and the per-equation relative residuals of the original system.
    std::vector<double> quintic_real_roots;
    int root_selected = -1;
    std::array<double, 3> residuals = {0, 0, 0};
    bool ambiguous_root = false;
};

// Solve the displacement system at fixed bare detuning delta_tilde (rad/s).
// Throws PhysicsError("NoRealRoot") when no self-consistent real solution
// exists.  At theta = pi/2 or at the cavity node phi = pi/2 the solution is
// exactly zero (no photons are scattered into the cavity mode).
Displacements solve_displacements(const DerivedParams& p, const PvConstants& pv,
                                  double delta_tilde);

// All real roots of the real-coefficient polynomial sum_i c[i] x^i (ascending
// coefficients), found as eigenvalues of the balanced companion matrix.  A
// root counts as real when |Im| < 1e-8 * max(1, |Re|).  Exposed for testing.
std::vector<double> real_poly_roots(const std::vector<double>& coeffs);

} // namespace cscool
