#pragma once
//
// The closed 44-variable moment system of the master equation: 8 first
// moments and 36 second moments of the cavity mode c and the three COM modes
// b_x, b_y, b_z.
//
// First-moment ordering (index into MomentState::first):
//   0 <c>   1 <c^+>   2 <b_x>  3 <b_x^+>  4 <b_y>  5 <b_y^+>  6 <b_z>  7 <b_z^+>
//
// Second-moment canonical ordering (index into MomentState::second):
//   0        <c^+ c>
//   1        <c c>
//   2        <c^+ c^+>
//   3..11    <b_k^+ b_l>   row-major, index 3 + 3k + l
//   12..17   <b_k b_l>     unordered pairs (xx, xy, xz, yy, yz, zz)
//   18..23   <b_k^+ b_l^+> same pair order
//   24..26   <b_k c^+>
//   27..29   <b_k^+ c>
//   30..32   <b_k c>
//   33..35   <b_k^+ c^+>
// The basis is closed under Hermitian conjugation (map conj_index below);
// conjugate-partner entries are stored explicitly so the drift closes as a
// plain linear-affine system dS/dt = A2 S + d2.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cscool/noise.hpp"
#include "cscool/renorm.hpp"

namespace cscool {

using cxd = std::complex<double>;
using Vec8 = Eigen::Matrix<cxd, 8, 1>;
using Vec36 = Eigen::Matrix<cxd, 36, 1>;
using Mat8 = Eigen::Matrix<cxd, 8, 8>;
using Mat36 = Eigen::Matrix<cxd, 36, 36>;

// --- second-moment index helpers -------------------------------------------
namespace midx {
inline constexpr int ncc = 0;   // <c^+ c>
inline constexpr int cc = 1;    // <c c>
inline constexpr int cctt = 2;  // <c^+ c^+>
inline constexpr int nbb(int k, int l) { return 3 + 3 * k + l; } // <b_k^+ b_l>
inline constexpr int pair_index(int k, int l) {
    // unordered pairs (0,0) (0,1) (0,2) (1,1) (1,2) (2,2)
    if (k > l) { const int t = k; k = l; l = t; }
    return k == 0 ? l : (k == 1 ? 2 + l : 5);
}
inline constexpr int bb(int k, int l) { return 12 + pair_index(k, l); }   // <b_k b_l>
inline constexpr int bbtt(int k, int l) { return 18 + pair_index(k, l); } // <b_k^+ b_l^+>
inline constexpr int bct(int k) { return 24 + k; }  // <b_k c^+>
inline constexpr int btc(int k) { return 27 + k; }  // <b_k^+ c>
inline constexpr int bc(int k) { return 30 + k; }   // <b_k c>
inline constexpr int btct(int k) { return 33 + k; } // <b_k^+ c^+>

// Index of the Hermitian-conjugate moment.
int conj_index(int i);
// Human-readable moment name (CSV headers, diagnostics).
const char* name(int i);
} // namespace midx

struct MomentState {
    Vec8 first = Vec8::Zero();
    Vec36 second = Vec36::Zero();
    double time = 0.0;

    // Largest relative violation of the conjugation closure
    // S[i] == conj(S[conj_index(i)]).
    double hermiticity_violation() const;

    // 8x8 quadrature covariance (X_c, P_c, X_x, P_x, ...), X = a + a^+,
    // P = i(a^+ - a), of the fluctuations around the first moments, plus the
    // minimum eigenvalue of the Heisenberg-uncertainty matrix
    // sigma + (i/2) Omega_symp (>= 0 for physical states; the returned norm
    // lets callers scale the -1e-8 floor to the state's magnitude).
    Eigen::Matrix<double, 8, 8> covariance() const;
    void physicality(double* min_eig, double* norm) const;
};

struct DriftModel {
    Mat8 M0 = Mat8::Zero();
    Mat36 A2 = Mat36::Zero();
    Vec36 d2 = Vec36::Zero();
    ModelCoefficients mc; // retained for spectra/temperature consumers
    NoiseRates nr;
};

struct StabilityReport {
    double max_re_M0 = 0;
    double max_re_A2 = 0;
    bool stable = false; // both maxima < -1e-12 rad/s
    double margin = 0;   // -max(max_re_M0, max_re_A2)
};

// Assemble the drift matrices from the final coefficients.  The incoherent
// cavity-COM rate Upsilon enters only when mc.include_upsilon is set.
DriftModel build_drift(const ModelCoefficients& mc, const NoiseRates& nr);

// Thermal COM state at temperature T (cavity in vacuum, no cross moments).
MomentState thermal_state(double T, const ModelCoefficients& mc);

// Exact propagation of the linear-affine system over n_out uniform steps;
// returns the trajectory including the initial state (n_out + 1 entries).
// Throws PhysicsError("DynamicallyUnstable") on numeric blow-up.
std::vector<MomentState> evolve(const DriftModel& dm, const MomentState& s0,
                                double t_end, int n_out);

// Steady state by direct linear solve A2 S = -d2 (first moments zero).
// Throws PhysicsError("Unstable") when the drift is not strictly stable.
MomentState steady_state(const DriftModel& dm);

StabilityReport stability(const DriftModel& dm);

struct Temperatures {
    std::array<double, 3> T = {0, 0, 0};   // K, hbar Omega_j' <n_j> / k_B
    std::array<double, 3> occ = {0, 0, 0}; // <b_j^+ b_j>
};
Temperatures temperatures(const MomentState& s, const ModelCoefficients& mc);

// Matrix propagator helper: exp(A t) via eigendecomposition, falling back to
// scaled-and-squared Pade when the eigenvector basis is ill-conditioned
// (condition > 1e12).  Exposed for the spectra module and tests.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& A, double t);

} // namespace cscool
