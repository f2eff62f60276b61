#include "cscool/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "cscool/constants.hpp"
#include "cscool/errors.hpp"

namespace cscool {

namespace midx {

int conj_index(int i) {
    if (i == ncc) return ncc;
    if (i == cc) return cctt;
    if (i == cctt) return cc;
    if (i >= 3 && i <= 11) { // <b_k^+ b_l> -> <b_l^+ b_k>
        const int k = (i - 3) / 3, l = (i - 3) % 3;
        return nbb(l, k);
    }
    if (i >= 12 && i <= 17) return i + 6; // <b b> -> <b^+ b^+>
    if (i >= 18 && i <= 23) return i - 6;
    if (i >= 24 && i <= 26) return btc(i - 24); // <b c^+> -> <b^+ c>
    if (i >= 27 && i <= 29) return bct(i - 27);
    if (i >= 30 && i <= 32) return btct(i - 30); // <b c> -> <b^+ c^+>
    return bc(i - 33);
}

const char* name(int i) {
    static const char* names[36] = {
        "cd_c", "c_c", "cd_cd",
        "bxd_bx", "bxd_by", "bxd_bz", "byd_bx", "byd_by", "byd_bz",
        "bzd_bx", "bzd_by", "bzd_bz",
        "bx_bx", "bx_by", "bx_bz", "by_by", "by_bz", "bz_bz",
        "bxd_bxd", "bxd_byd", "bxd_bzd", "byd_byd", "byd_bzd", "bzd_bzd",
        "bx_cd", "by_cd", "bz_cd", "bxd_c", "byd_c", "bzd_c",
        "bx_c", "by_c", "bz_c", "bxd_cd", "byd_cd", "bzd_cd"};
    return names[i];
}

} // namespace midx

using namespace midx;

DriftModel build_drift(const ModelCoefficients& mc, const NoiseRates& nr) {
    DriftModel dm;
    dm.mc = mc;
    dm.nr = nr;

    const cxd I(0.0, 1.0);
    const double delta = mc.delta_prime;
    const double kap = mc.kappa_prime;
    const double gam = nr.gamma;
    const auto& W = mc.Omega_prime;
    const auto& g = mc.g_prime;
    const cxd U = mc.include_upsilon ? mc.Upsilon : cxd(0.0, 0.0);
    const cxd Uc = std::conj(U);
    auto gc = [&](int j) { return std::conj(g[j]); };
    constexpr int z = 2;

    // ---- first moments -----------------------------------------------------
    Mat8& M = dm.M0;
    M(0, 0) = -I * delta - kap;
    M(1, 1) = I * delta - kap;
    for (int j = 0; j < 3; ++j) {
        M(0, 2 + 2 * j) += -I * g[j];
        M(0, 3 + 2 * j) += -I * g[j];
        M(1, 2 + 2 * j) += I * gc(j);
        M(1, 3 + 2 * j) += I * gc(j);
        M(2 + 2 * j, 2 + 2 * j) += -I * W[j] - gam / 2.0;
        M(2 + 2 * j, 3 + 2 * j) += gam / 2.0;
        M(3 + 2 * j, 3 + 2 * j) += I * W[j] - gam / 2.0;
        M(3 + 2 * j, 2 + 2 * j) += gam / 2.0;
        M(2 + 2 * j, 1) += -I * g[j];
        M(2 + 2 * j, 0) += -I * gc(j);
        M(3 + 2 * j, 0) += I * gc(j);
        M(3 + 2 * j, 1) += I * g[j];
    }
    // Incoherent cavity-COM terms (z axis only).
    M(0, 2 + 2 * z) += -U;
    M(0, 3 + 2 * z) += -U;
    M(1, 2 + 2 * z) += -Uc;
    M(1, 3 + 2 * z) += -Uc;
    M(2 + 2 * z, 1) += U;
    M(2 + 2 * z, 0) += -Uc;
    M(3 + 2 * z, 0) += Uc;
    M(3 + 2 * z, 1) += -U;

    // ---- second moments ----------------------------------------------------
    // Hand-coded generator rows; the conjugate-partner rows are produced from
    // them by the exact conjugation closure at the end.
    Mat36& A = dm.A2;
    Vec36& d = dm.d2;

    // d<c^+ c>/dt
    A(ncc, ncc) += -2.0 * kap;
    for (int j = 0; j < 3; ++j) {
        A(ncc, btc(j)) += I * gc(j);
        A(ncc, bc(j)) += I * gc(j);
        A(ncc, bct(j)) += -I * g[j];
        A(ncc, btct(j)) += -I * g[j];
    }
    A(ncc, btct(z)) += -U;
    A(ncc, bct(z)) += -U;
    A(ncc, btc(z)) += -Uc;
    A(ncc, bc(z)) += -Uc;

    // d<c c>/dt
    A(cc, cc) += -2.0 * I * delta - 2.0 * kap;
    for (int j = 0; j < 3; ++j) {
        A(cc, btc(j)) += -2.0 * I * g[j];
        A(cc, bc(j)) += -2.0 * I * g[j];
    }
    A(cc, btc(z)) += -2.0 * U;
    A(cc, bc(z)) += -2.0 * U;

    // d<b_k^+ b_l>/dt
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            const int r = nbb(k, l);
            A(r, r) += -I * (W[l] - W[k]) - gam;
            A(r, bbtt(k, l)) += gam / 2.0;
            A(r, bb(k, l)) += gam / 2.0;
            if (k == l) d(r) += 2.0 * nr.Gamma_total[k] - gam / 2.0;
            A(r, btct(k)) += -I * g[l];
            A(r, btc(k)) += -I * gc(l);
            A(r, bct(l)) += I * g[k];
            A(r, bc(l)) += I * gc(k);
            if (l == z) A(r, btct(k)) += U;
            if (k == z) A(r, bct(l)) += -U;
            if (k == z) A(r, bc(l)) += Uc;
            if (l == z) A(r, btc(k)) += -Uc;
        }

    // d<b_k b_l>/dt (unordered pairs)
    for (int k = 0; k < 3; ++k)
        for (int l = k; l < 3; ++l) {
            const int r = bb(k, l);
            A(r, r) += -I * (W[k] + W[l]) - gam;
            A(r, nbb(l, k)) += gam / 2.0;
            A(r, nbb(k, l)) += gam / 2.0;
            if (k == l) d(r) += -2.0 * nr.Gamma_total[k] + gam / 2.0;
            A(r, bct(k)) += -I * g[l];
            A(r, bc(k)) += -I * gc(l);
            A(r, bct(l)) += -I * g[k];
            A(r, bc(l)) += -I * gc(k);
            if (k == z) A(r, bct(l)) += U;
            if (l == z) A(r, bct(k)) += U;
            if (k == z) A(r, bc(l)) += -Uc;
            if (l == z) A(r, bc(k)) += -Uc;
        }

    // d<b_k c^+>/dt
    for (int k = 0; k < 3; ++k) {
        const int r = bct(k);
        A(r, r) += -I * (W[k] - delta) - kap - gam / 2.0;
        A(r, btct(k)) += gam / 2.0;
        A(r, cctt) += -I * g[k];
        A(r, ncc) += -I * gc(k);
        for (int j = 0; j < 3; ++j) {
            A(r, nbb(j, k)) += I * gc(j);
            A(r, bb(j, k)) += I * gc(j);
        }
        if (k == z) A(r, cctt) += U;
        if (k == z) A(r, ncc) += -Uc;
        A(r, nbb(z, k)) += -Uc;
        A(r, bb(z, k)) += -Uc;
    }

    // d<b_k c>/dt  (the <c c^+> = <c^+ c> + 1 commutator feeds d2)
    for (int k = 0; k < 3; ++k) {
        const int r = bc(k);
        A(r, r) += -I * (W[k] + delta) - kap - gam / 2.0;
        A(r, btc(k)) += gam / 2.0;
        A(r, cc) += -I * gc(k);
        A(r, ncc) += -I * g[k];
        d(r) += -I * g[k];
        for (int j = 0; j < 3; ++j) {
            A(r, nbb(j, k)) += -I * g[j];
            A(r, bb(j, k)) += -I * g[j];
        }
        A(r, nbb(z, k)) += -U;
        A(r, bb(z, k)) += -U;
        if (k == z) A(r, ncc) += U;
        if (k == z) A(r, cc) += -Uc;
    }

    // Conjugate-partner rows: d<O^+>/dt = conj(d<O>/dt) with every moment
    // mapped through the conjugation closure of the basis.
    auto conjugate_row = [&](int src) {
        const int dst = conj_index(src);
        for (int c = 0; c < 36; ++c)
            A(dst, conj_index(c)) = std::conj(A(src, c));
        d(dst) = std::conj(d(src));
    };
    conjugate_row(cc);
    for (int k = 0; k < 3; ++k)
        for (int l = k; l < 3; ++l) conjugate_row(bb(k, l));
    for (int k = 0; k < 3; ++k) {
        conjugate_row(bct(k));
        conjugate_row(bc(k));
    }
    return dm;
}

MomentState thermal_state(double T, const ModelCoefficients& mc) {
    MomentState s;
    for (int j = 0; j < 3; ++j) {
        double n = 0.0;
        if (T > 0.0)
            n = 1.0 / std::expm1(kHbar * mc.Omega_prime[j] / (kBoltz * T));
        s.second(nbb(j, j)) = n;
    }
    return s;
}

double MomentState::hermiticity_violation() const {
    double scale = 1.0;
    for (int i = 0; i < 36; ++i) scale = std::max(scale, std::abs(second(i)));
    double worst = 0.0;
    for (int i = 0; i < 36; ++i)
        worst = std::max(worst,
                         std::abs(second(i) - std::conj(second(conj_index(i)))));
    for (int i = 0; i < 8; i += 2)
        worst = std::max(worst, std::abs(first(i) - std::conj(first(i + 1))));
    return worst / scale;
}

Eigen::Matrix<double, 8, 8> MomentState::covariance() const {
    // Elementary two-operator expectations <o_p o_q> in the order written,
    // o = (c, c^+, b_x, b_x^+, b_y, b_y^+, b_z, b_z^+).
    Eigen::Matrix<cxd, 8, 8> Wm;
    auto bmode = [&](int p) { return p / 2 - 1; }; // mode index for p >= 2
    for (int p = 0; p < 8; ++p)
        for (int q = 0; q < 8; ++q) {
            const bool pd = p % 2, qd = q % 2; // daggered?
            cxd v;
            if (p < 2 && q < 2) {
                if (!pd && !qd) v = second(cc);
                else if (pd && qd) v = second(cctt);
                else if (pd && !qd) v = second(ncc);
                else v = second(ncc) + 1.0;
            } else if (p >= 2 && q >= 2) {
                const int k = bmode(p), l = bmode(q);
                if (!pd && !qd) v = second(bb(k, l));
                else if (pd && qd) v = second(bbtt(k, l));
                else if (pd && !qd) v = second(nbb(k, l));
                else v = second(nbb(l, k)) + (k == l ? 1.0 : 0.0);
                // <b_k b_l^+> = <b_l^+ b_k> + delta_kl
            } else {
                // cavity-mechanics cross terms commute; pick the stored form
                const int bp = p >= 2 ? p : q;
                const int cp = p >= 2 ? q : p;
                const int k = bmode(bp);
                const bool bd = bp % 2, cd = cp % 2;
                if (!bd && cd) v = second(bct(k));
                else if (bd && !cd) v = second(btc(k));
                else if (!bd && !cd) v = second(bc(k));
                else v = second(btct(k));
            }
            // Subtract the first-moment product (fluctuation covariance).
            Wm(p, q) = v - first(p) * first(q);
        }

    // Quadratures: X_m = a_m + a_m^+, P_m = i(a_m^+ - a_m).
    Eigen::Matrix<cxd, 8, 8> Tq = Eigen::Matrix<cxd, 8, 8>::Zero();
    const cxd I(0.0, 1.0);
    for (int m = 0; m < 4; ++m) {
        Tq(2 * m, 2 * m) = 1.0;      // X <- a
        Tq(2 * m, 2 * m + 1) = 1.0;  // X <- a^+
        Tq(2 * m + 1, 2 * m) = -I;   // P <- a
        Tq(2 * m + 1, 2 * m + 1) = I;
    }
    const Eigen::Matrix<cxd, 8, 8> Mu = Tq * Wm * Tq.transpose();
    return 0.5 * (Mu + Mu.transpose()).real();
}

void MomentState::physicality(double* min_eig, double* norm) const {
    const Eigen::Matrix<double, 8, 8> sig = covariance();
    // sigma + (i/2) Omega_symp with [X, P] = 2i per mode.
    Eigen::Matrix<cxd, 8, 8> Mu = sig.cast<cxd>();
    const cxd I(0.0, 1.0);
    for (int m = 0; m < 4; ++m) {
        Mu(2 * m, 2 * m + 1) += I;
        Mu(2 * m + 1, 2 * m) += -I;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cxd, 8, 8>> es(Mu);
    if (min_eig) *min_eig = es.eigenvalues().minCoeff();
    if (norm) *norm = std::max(std::abs(es.eigenvalues().minCoeff()),
                               std::abs(es.eigenvalues().maxCoeff()));
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& A, double t) {
    const Eigen::MatrixXcd At = A * t;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(At);
    if (es.info() == Eigen::Success) {
        const Eigen::MatrixXcd& V = es.eigenvectors();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        if (smin > 0.0 && smax / smin < 1e12) {
            Eigen::VectorXcd ev = es.eigenvalues().array().exp();
            return V * ev.asDiagonal() * V.inverse();
        }
    }
    return At.exp(); // scaled-and-squared Pade fallback
}

std::vector<MomentState> evolve(const DriftModel& dm, const MomentState& s0,
                                double t_end, int n_out) {
    if (!(t_end > 0.0) || n_out < 1)
        throw ConfigError("evolve: need t_end > 0 and n_out >= 1");
    const double dt = t_end / n_out;

    const Eigen::MatrixXcd E1 = matrix_exp(dm.M0.cast<cxd>(), dt);
    // Affine second-moment system via the augmented generator.
    Eigen::MatrixXcd Aug = Eigen::MatrixXcd::Zero(37, 37);
    Aug.topLeftCorner(36, 36) = dm.A2;
    Aug.topRightCorner(36, 1) = dm.d2;
    const Eigen::MatrixXcd E2 = matrix_exp(Aug, dt);

    std::vector<MomentState> traj;
    traj.reserve(n_out + 1);
    traj.push_back(s0);
    Eigen::VectorXcd y = s0.first;
    Eigen::VectorXcd saug(37);
    saug.head(36) = s0.second;
    saug(36) = 1.0;
    for (int i = 1; i <= n_out; ++i) {
        y = E1 * y;
        saug = E2 * saug;
        MomentState s;
        s.first = y;
        s.second = saug.head(36);
        s.time = s0.time + i * dt;
        if (!y.allFinite() || !saug.allFinite()) {
            Eigen::ComplexEigenSolver<Mat36> es(dm.A2);
            const double maxre = es.eigenvalues().real().maxCoeff();
            throw PhysicsError("DynamicallyUnstable",
                               "moment trajectory diverged (max Re lambda = " +
                               std::to_string(maxre) + " rad/s)");
        }
        traj.push_back(s);
    }
    return traj;
}

StabilityReport stability(const DriftModel& dm) {
    StabilityReport rep;
    Eigen::ComplexEigenSolver<Mat8> e1(dm.M0, false);
    Eigen::ComplexEigenSolver<Mat36> e2(dm.A2, false);
    rep.max_re_M0 = e1.eigenvalues().real().maxCoeff();
    rep.max_re_A2 = e2.eigenvalues().real().maxCoeff();
    const double worst = std::max(rep.max_re_M0, rep.max_re_A2);
    rep.stable = worst < -1e-12;
    rep.margin = -worst;
    return rep;
}

MomentState steady_state(const DriftModel& dm) {
    const StabilityReport rep = stability(dm);
    if (!rep.stable)
        throw PhysicsError("Unstable",
                           "no steady state: max Re lambda = " +
                           std::to_string(std::max(rep.max_re_M0, rep.max_re_A2)) +
                           " rad/s");
    MomentState s;
    s.second = dm.A2.partialPivLu().solve(-dm.d2);
    return s;
}

Temperatures temperatures(const MomentState& s, const ModelCoefficients& mc) {
    Temperatures t;
    for (int j = 0; j < 3; ++j) {
        t.occ[j] = s.second(nbb(j, j)).real();
        t.T[j] = kHbar * mc.Omega_prime[j] * t.occ[j] / kBoltz;
    }
    return t;
}

} // namespace cscool
