#include "cscool/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "cscool/constants.hpp"

namespace cscool {

namespace {

// w0_m = <v_m q_j>_ss with q_j = b_j + b_j^+, v the first-moment vector
// (c, c^+, b_x, b_x^+, ...).  Everything comes from the steady second
// moments; the lone commutator contributes the +delta_kj in <b_k q_j>.
Vec8 initial_correlation(const MomentState& ss, int j) {
    using namespace midx;
    const Vec36& S = ss.second;
    Vec8 w0;
    w0(0) = S(bc(j)) + S(btc(j));   // <c q_j>
    w0(1) = S(bct(j)) + S(btct(j)); // <c^+ q_j>
    for (int k = 0; k < 3; ++k) {
        // <b_k q_j> = <b_k b_j> + <b_j^+ b_k> + delta_kj
        w0(2 + 2 * k) = S(bb(k, j)) + S(nbb(j, k)) + (k == j ? 1.0 : 0.0);
        // <b_k^+ q_j> = <b_k^+ b_j> + <b_k^+ b_j^+>
        w0(3 + 2 * k) = S(nbb(k, j)) + S(bbtt(k, j));
    }
    return w0;
}

// Half-max crossings of the evaluated spectrum around the tallest grid point;
// refined by bisection on the Lorentzian sum so the grid spacing does not
// limit the estimate.
double fwhm_from_curve(const SpectrumResult& sr) {
    const auto& w = sr.omega_grid;
    const auto& S = sr.S;
    if (w.size() < 3) return 0;
    const std::size_t ipk =
        static_cast<std::size_t>(std::max_element(S.begin(), S.end()) - S.begin());
    const double half = S[ipk] / 2.0;

    auto crossing = [&](std::size_t a, std::size_t b) {
        // linear interpolation between grid neighbours straddling the half max
        const double t = (half - S[a]) / (S[b] - S[a]);
        return w[a] + t * (w[b] - w[a]);
    };
    double lo = w.front(), hi = w.back();
    bool found_lo = false, found_hi = false;
    for (std::size_t i = ipk; i > 0; --i) {
        if (S[i - 1] < half && S[i] >= half) {
            lo = crossing(i - 1, i);
            found_lo = true;
            break;
        }
    }
    for (std::size_t i = ipk; i + 1 < S.size(); ++i) {
        if (S[i] >= half && S[i + 1] < half) {
            hi = crossing(i, i + 1);
            found_hi = true;
            break;
        }
    }
    if (!found_lo || !found_hi) return 0; // peak truncated by the grid
    return hi - lo;
}

} // namespace

std::vector<double> default_omega_grid(const ModelCoefficients& mc, int n) {
    double top = std::abs(mc.delta_prime);
    for (double Om : mc.Omega_prime) top = std::max(top, Om);
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = 2.0 * top * i / (n - 1);
    return grid;
}

double eval_spectrum(const std::vector<LorentzianTerm>& terms, double omega) {
    double s = 0;
    for (const auto& t : terms)
        s += 2.0 * std::real(t.weight / (t.pole + cxd(0, omega)));
    return s;
}

double fwhm_main_peak(const SpectrumResult& sr) { return sr.fwhm_main; }

SpectrumResult psd(const DriftModel& dm, const MomentState& ss, int axis,
                   const std::vector<double>& omega_grid) {
    SpectrumResult sr;
    sr.axis = axis;
    sr.omega_grid = omega_grid;
    sr.S.assign(omega_grid.size(), 0.0);

    const double r = dm.mc.zero_point[static_cast<std::size_t>(axis)] *
                     dm.mc.chi[static_cast<std::size_t>(axis)];
    const double pref = -r * r / kTwoPi;

    const Vec8 w0 = initial_correlation(ss, axis);
    Vec8 eq = Vec8::Zero(); // selects the q_j rows of the propagated vector
    eq(2 + 2 * axis) = 1.0;
    eq(3 + 2 * axis) = 1.0;

    Eigen::ComplexEigenSolver<Mat8> es(dm.M0);
    const Mat8& V = es.eigenvectors();
    Eigen::JacobiSVD<Mat8> svd(V);
    const double cond = svd.singularValues()(0) /
                        std::max(svd.singularValues()(7), 1e-300);

    if (cond < 1e12) {
        // S+(omega) = sum_l w_l / (lambda_l + i omega) with
        // w_l = -(r^2/2pi) (eq^T V)_l (V^-1 w0)_l.
        const Vec8 left = V.transpose() * eq;
        const Vec8 c0 = V.partialPivLu().solve(w0);
        for (int l = 0; l < 8; ++l) {
            LorentzianTerm t;
            t.pole = es.eigenvalues()(l);
            t.weight = pref * left(l) * c0(l);
            sr.lorentzian_terms.push_back(t);
        }
        for (std::size_t i = 0; i < omega_grid.size(); ++i)
            sr.S[i] = eval_spectrum(sr.lorentzian_terms, omega_grid[i]);

        // Dominant motional Lorentzian: largest area-to-width figure
        // |w_l / Re lambda_l| among poles near -Im lambda ~ Omega_j'.
        const double Om = dm.mc.Omega_prime[static_cast<std::size_t>(axis)];
        double best = -1;
        const LorentzianTerm* main = nullptr;
        for (const auto& t : sr.lorentzian_terms) {
            const double center = -t.pole.imag();
            if (std::abs(center - Om) > 0.3 * Om) continue;
            const double fig = std::abs(t.weight) /
                               std::max(std::abs(t.pole.real()), 1e-300);
            if (fig > best) {
                best = fig;
                main = &t;
            }
        }
        if (main) {
            sr.fwhm_main = 2.0 * std::abs(main->pole.real());
            sr.peak_center = -main->pole.imag();
            // flag other comparable poles inside one linewidth of the main one
            for (const auto& t : sr.lorentzian_terms) {
                if (&t == main) continue;
                if (std::abs(-t.pole.imag() - sr.peak_center) < sr.fwhm_main &&
                    std::abs(t.weight) > 0.1 * std::abs(main->weight)) {
                    sr.warnings.push_back("OverlappingPeaks");
                    break;
                }
            }
        }
    } else {
        // Defective or nearly defective eigenbasis: per-point resolvent solves
        // (M0 + i omega) x = w0.  No pole decomposition is reported.
        for (std::size_t i = 0; i < omega_grid.size(); ++i) {
            Mat8 A = dm.M0;
            A.diagonal().array() += cxd(0, omega_grid[i]);
            const Vec8 x = A.partialPivLu().solve(w0);
            sr.S[i] = 2.0 * std::real(pref * (eq.transpose() * x)(0));
        }
        sr.warnings.push_back("DegenerateEigenbasis");
    }

    sr.fwhm_grid = fwhm_from_curve(sr);
    if (sr.fwhm_main == 0) sr.fwhm_main = sr.fwhm_grid;
    else if (sr.fwhm_grid > 0 &&
             std::abs(sr.fwhm_grid - sr.fwhm_main) > 0.05 * sr.fwhm_main)
        sr.warnings.push_back("FwhmGridMismatch");
    return sr;
}

} // namespace cscool
