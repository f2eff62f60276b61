#include "cscool/displacements.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cscool/constants.hpp"
#include "cscool/errors.hpp"

namespace cscool {

namespace {

using Poly = std::vector<double>; // ascending coefficients

Poly pmul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly padd(Poly a, const Poly& b, double s = 1.0) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
    return a;
}

Poly pscale(Poly a, double s) {
    for (double& c : a) c *= s;
    return a;
}

// All scalar coefficients of the reduced displacement system at one tweezer
// power, plus evaluation helpers.
struct DispSystem {
    double kappa, G, Gy, g_cx, g_cy;
    double Wx, Wy, Wz;       // trap stiffness minus the reservoir softening
    double Q0, Q1, P0, P1;   // Q(t) = Q0 + Q1 t, P(t) = P0 + P1 t, t = beta_y
    double B, C;             // beta_z coupling constants
    double rho;              // beta_x / beta_y ratio
    double sin_th, cos_th, sin_ph, cos_ph;
    double kcx0, kcy0, k0z0;

    DispSystem(const DerivedParams& p, const PvConstants& pv, double delta_tilde) {
        const auto& cfg = p.cfg;
        kappa = cfg.cavity_halfwidth;
        G = p.coupling_G;
        g_cx = p.g_cx;
        g_cy = p.g_cy;
        sin_th = std::sin(cfg.theta);
        cos_th = std::cos(cfg.theta);
        sin_ph = std::sin(cfg.phi);
        cos_ph = std::cos(cfg.phi);
        kcx0 = p.k_c * p.zero_point[0];
        kcy0 = p.k_c * p.zero_point[1];
        k0z0 = p.k0 * p.zero_point[2];
        const double k0x0 = p.k0 * p.zero_point[0];
        const double k0y0 = p.k0 * p.zero_point[1];

        // Reservoir-softened trap stiffness.  The x axis carries a single
        // varpi2 unit while y and z carry two (anisotropy of the scattered
        // dipole pattern).
        Wx = p.trap_freqs[0] - pv.varpi2 * k0x0 * k0x0;
        Wy = p.trap_freqs[1] - 2.0 * pv.varpi2 * k0y0 * k0y0;
        Wz = p.trap_freqs[2] - 2.0 * pv.varpi2 * k0z0 * k0z0;
        if (!(Wx > 0.0) || !(Wy > 0.0) || !(Wz > 0.0))
            throw PhysicsError("ModelBreakdown",
                               "reservoir softening exceeds trap stiffness");

        Q0 = delta_tilde - pv.varpi * cos_ph * cos_ph;
        Q1 = 0.0; // filled below once rho is known
        P0 = 0.5 * G * cos_ph + pv.varpi * p.eta * cos_ph / std::sqrt(2.0);
        B = k0z0 * cos_ph * (std::sqrt(2.0) * pv.varpi * p.eta - G);
        C = k0z0 * cos_ph * (2.0 * p.eta * pv.varpi - G);

        rho = (cos_th != 0.0)
                  ? (p.zero_point[0] * sin_th * Wy) / (p.zero_point[1] * cos_th * Wx)
                  : 0.0;
        Q1 = -2.0 * (g_cx * rho + g_cy);
        P1 = G * sin_ph * (kcx0 * rho * sin_th + kcy0 * cos_th);
        Gy = G * sin_ph * cos_th * kcy0;
    }

    double Q(double t) const { return Q0 + Q1 * t; }
    double P(double t) const { return P0 + P1 * t; }

    double beta_z_of(double t) const {
        const double q = Q(t), pp = P(t);
        const double Dz = Wz * (q * q + kappa * kappa) - C * B * q;
        return C * kappa * pp / Dz;
    }

    // The un-rescaled scalar equilibrium equation along y (zero at a
    // solution), together with its magnitude scale for relative residuals.
    double h(double t, double* scale = nullptr) const {
        const double q = Q(t), pp = P(t), bz = beta_z_of(t);
        const double t1 = Wy * t * (q * q + kappa * kappa);
        const double t2 = Gy * (pp * q - kappa * B * bz);
        const double t3 = g_cy * (pp * pp + B * B * bz * bz);
        if (scale)
            *scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3),
                               Wy * (Q0 * Q0 + kappa * kappa) * 1e-300 + 1e-300});
        return t1 - t2 - t3;
    }

    // Full candidate solution from a beta_y root.
    void candidate(double t, std::array<double, 3>& beta,
                   std::complex<double>& alpha) const {
        beta[1] = t;
        beta[0] = rho * t;
        beta[2] = beta_z_of(t);
        const std::complex<double> num(P(t), B * beta[2]);
        alpha = num / std::complex<double>(Q(t), -kappa);
    }

    // Relative residuals of the three primitive equilibrium equations.
    std::array<double, 3> residuals(const std::array<double, 3>& beta,
                                    const std::complex<double>& alpha) const {
        const double re = alpha.real(), im = alpha.imag();
        const double n2 = std::norm(alpha);
        auto rel = [](double r, double a, double b, double c) {
            const double s = std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300});
            return std::abs(r) / s;
        };
        const double Gx = G * sin_ph * sin_th * kcx0;
        const double ax = Wx * beta[0], bx = Gx * re, cx = g_cx * n2;
        const double ay = Wy * beta[1], by = Gy * re, cy = g_cy * n2;
        const double az = Wz * beta[2], bz2 = C * im;
        return {rel(ax - bx - cx, ax, bx, cx), rel(ay - by - cy, ay, by, cy),
                rel(az - bz2, az, bz2, 0.0)};
    }

    // Polynomial whose real roots contain all equilibria: the scalar equation
    // h(t) = 0 multiplied through by Dz(t)^2.
    Poly polynomial() const {
        const Poly Qp = {Q0, Q1};
        const Poly Pp = {P0, P1};
        const Poly Q2k = padd(pmul(Qp, Qp), Poly{kappa * kappa});
        const Poly Dz = padd(pscale(Q2k, Wz), Qp, -C * B);
        const Poly Nz = pscale(Pp, C * kappa);
        const Poly Dz2 = pmul(Dz, Dz);
        // Wy * t * (Q^2+k^2) * Dz^2
        Poly F = pmul(Poly{0.0, Wy}, pmul(Q2k, Dz2));
        // - Gy * (P*Q*Dz^2 - kappa*B*Nz*Dz)
        F = padd(F, pmul(pmul(Pp, Qp), Dz2), -Gy);
        F = padd(F, pmul(Nz, Dz), Gy * kappa * B);
        // - g_cy * (P^2*Dz^2 + B^2*Nz^2)
        F = padd(F, pmul(pmul(Pp, Pp), Dz2), -g_cy);
        F = padd(F, pmul(Nz, Nz), -g_cy * B * B);
        return F;
    }
};

// Polished real roots of the scalar equation, deduplicated, filtered by
// residual self-consistency and by a physical trust window (equilibrium
// shifts beyond the beam waist invalidate the harmonic expansion).
std::vector<double> consistent_roots(const DispSystem& sys, const DerivedParams& p) {
    std::vector<double> roots = real_poly_roots(sys.polynomial());
    std::vector<double> out;
    for (double t : roots) {
        // Newton polish on the un-rescaled scalar equation.
        for (int it = 0; it < 40; ++it) {
            const double step = std::max(std::abs(t), 1.0) * 1e-7;
            const double h0 = sys.h(t);
            const double dh = (sys.h(t + step) - sys.h(t - step)) / (2.0 * step);
            if (dh == 0.0) break;
            const double dt = h0 / dh;
            t -= dt;
            if (std::abs(dt) < 1e-14 * std::max(std::abs(t), 1.0)) break;
        }
        double scale = 0.0;
        const double hval = sys.h(t, &scale);
        if (std::abs(hval) > 1e-9 * scale) continue;
        std::array<double, 3> beta;
        std::complex<double> alpha;
        sys.candidate(t, beta, alpha);
        bool in_window = true;
        for (int j = 0; j < 3; ++j)
            if (std::abs(2.0 * beta[j] * p.zero_point[j]) > p.cfg.tweezer_waist)
                in_window = false;
        if (!in_window) continue;
        bool dup = false;
        for (double u : out)
            if (std::abs(u - t) < 1e-6 * std::max(1.0, std::abs(t))) dup = true;
        if (!dup) out.push_back(t);
    }
    std::sort(out.begin(), out.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    return out;
}

} // namespace

std::vector<double> real_poly_roots(const std::vector<double>& coeffs) {
    // Trim negligible leading coefficients.
    double cmax = 0.0;
    for (double c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0) return {};
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) < 1e-13 * cmax) --deg;
    if (deg == 0) return {};
    if (deg == 1) return {-coeffs[0] / coeffs[1]};

    // Variable scaling t = T s to balance the coefficient magnitudes.
    double T = 1.0;
    if (coeffs[0] != 0.0)
        T = std::pow(std::abs(coeffs[0] / coeffs[deg]), 1.0 / deg);
    if (!(T > 0.0) || !std::isfinite(T)) T = 1.0;
    std::vector<double> c(deg + 1);
    double tp = 1.0;
    for (int i = 0; i <= deg; ++i, tp *= T) c[i] = coeffs[i] * tp;

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);

    std::vector<double> roots;
    for (int i = 0; i < deg; ++i) {
        const std::complex<double> z = es.eigenvalues()[i];
        if (std::abs(z.imag()) < 1e-8 * std::max(1.0, std::abs(z.real())))
            roots.push_back(z.real() * T);
    }
    return roots;
}

Displacements solve_displacements(const DerivedParams& p, const PvConstants& pv,
                                  double delta_tilde) {
    Displacements d;

    // theta = pi/2: no light is scattered into the cavity direction, and at
    // the node phi = pi/2 the drive vanishes; both still flow through the
    // generic path below, but the theta = pi/2 reduction-ratio path is
    // degenerate, so short-circuit to the exact zero solution.
    if (std::abs(std::cos(p.cfg.theta)) < 1e-15) {
        d.quintic_real_roots = {0.0};
        d.root_selected = 0;
        return d;
    }

    // Homotopy in tweezer power from the trivial zero solution: track the
    // root continuously connected to beta = 0.
    constexpr int kSteps = 10;
    double t_sel = 0.0;
    bool ambiguous = false;
    std::vector<double> final_roots;
    for (int s = 1; s <= kSteps; ++s) {
        const double f = static_cast<double>(s) / kSteps;
        SystemConfig cfg_s = p.cfg;
        cfg_s.tweezer_power = p.cfg.tweezer_power * f;
        const DerivedParams p_s = (s == kSteps) ? p : derive_params(cfg_s);
        const PvConstants pv_s = (s == kSteps) ? pv : pv_constants(p_s);
        const DispSystem sys(p_s, pv_s, delta_tilde);
        std::vector<double> roots = consistent_roots(sys, p_s);
        if (roots.empty())
            throw PhysicsError("NoRealRoot",
                               "no self-consistent real equilibrium at power "
                               "fraction " + std::to_string(f));
        // Leading-order scaling of the displacement with power is linear;
        // predict from the previous step and take the nearest root.
        const double t_pred = (s == 1) ? 0.0 : t_sel * f / (f - 1.0 / kSteps);
        double best = roots[0], second_gap = 1e300,
               best_gap = std::abs(roots[0] - t_pred);
        for (size_t i = 1; i < roots.size(); ++i) {
            const double gap = std::abs(roots[i] - t_pred);
            if (gap < best_gap) {
                second_gap = best_gap;
                best_gap = gap;
                best = roots[i];
            } else {
                second_gap = std::min(second_gap, gap);
            }
        }
        // Ambiguous tracking: another root nearly as close to the prediction.
        if (roots.size() > 1 && second_gap < 4.0 * best_gap + 1e-300) {
            ambiguous = true;
            best = *std::min_element(roots.begin(), roots.end(),
                                     [](double a, double b) {
                                         return std::abs(a) < std::abs(b);
                                     });
        }
        t_sel = best;
        if (s == kSteps) final_roots = roots;
    }

    const DispSystem sys(p, pv, delta_tilde);
    d.quintic_real_roots = final_roots;
    d.ambiguous_root = ambiguous || final_roots.size() > 1;
    d.root_selected = 0;
    for (size_t i = 0; i < final_roots.size(); ++i)
        if (final_roots[i] == t_sel) d.root_selected = static_cast<int>(i);

    std::complex<double> alpha;
    sys.candidate(t_sel, d.beta, alpha);
    d.alpha_c = alpha;
    d.photon_number = std::norm(alpha);
    for (int j = 0; j < 3; ++j)
        d.equilibrium_shift[j] = 2.0 * d.beta[j] * p.zero_point[j];
    d.residuals = sys.residuals(d.beta, alpha);
    return d;
}

} // namespace cscool
