#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "depthdiv/cross_law.hpp"
#include "depthdiv/depth.hpp"
#include "depthdiv/distribution.hpp"
#include "depthdiv/quadrature.hpp"

namespace depthdiv {

struct InducedDivergenceResult {
    double forward;      // D~(P||Q)
    double backward;     // D~(Q||P)
    double symmetrized;  // exact mean of the two
};

namespace detail {

// Replace infinite support ends by probes where both densities have decayed
// to numerical zero. Two consecutive negligible doublings are required so a
// single low-density dip cannot truncate early.
template <typename P, typename Q>
Interval finite_window(P&& p, Q&& q, Interval support) {
    auto negligible = [&](double x) { return p(x) + q(x) < 1e-20; };
    double lo = support.lo, hi = support.hi;
    if (!std::isfinite(lo)) {
        const double anchor = std::isfinite(hi) ? hi : 0.0;
        double step = 1.0;
        while (step < 1e18 && !(negligible(anchor - step) && negligible(anchor - 2.0 * step))) step *= 2.0;
        lo = anchor - 2.0 * step;
    }
    if (!std::isfinite(hi)) {
        const double anchor = std::isfinite(support.lo) ? support.lo : 0.0;
        double step = 1.0;
        while (step < 1e18 && !(negligible(anchor + step) && negligible(anchor + 2.0 * step))) step *= 2.0;
        hi = anchor + 2.0 * step;
    }
    return {lo, hi};
}

template <typename F>
std::vector<double> split_points(F&& diff, double lo, double hi, const QuadratureConfig& cfg) {
    std::vector<double> cuts;
    cuts.push_back(lo);
    for (double r : bracket_sign_changes(diff, lo, hi, cfg.sign_change_bracket_grid)) {
        if (r > cuts.back() && r < hi) cuts.push_back(r);
    }
    cuts.push_back(hi);
    return cuts;
}

}  // namespace detail

// TVD(P,Q) = 1/2 int |p - q| by quadrature. The |.| kink ruins high-order
// rules, so the integral is split at the sign changes of p - q (bracketed on
// a uniform grid, bisected to ~1e-12); between roots |p - q| is smooth and
// adaptive Simpson applies.
template <typename P, typename Q>
double tvd_between_densities(P&& p, Q&& q, Interval support, const QuadratureConfig& cfg = {}) {
    const Interval win = detail::finite_window(p, q, support);
    auto diff = [&](double x) { return p(x) - q(x); };
    const auto cuts = detail::split_points(diff, win.lo, win.hi, cfg);
    const double seg_tol = cfg.abs_tol / static_cast<double>(cuts.size());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        acc += integrate_adaptive([&](double x) { return std::fabs(p(x) - q(x)); }, cuts[i], cuts[i + 1],
                                  seg_tol, cfg.max_subdivisions);
    }
    return 0.5 * acc;
}

inline double tvd_between_densities(const Distribution& p, const Distribution& q,
                                    const QuadratureConfig& cfg = {}) {
    const Interval sp = p.support(), sq = q.support();
    const Interval support{std::min(sp.lo, sq.lo), std::max(sp.hi, sq.hi)};
    return tvd_between_densities([&](double x) { return p.pdf(x); }, [&](double x) { return q.pdf(x); },
                                 support, cfg);
}

// Generic f-divergence int phi(p/q) q for a convex generator with phi(1)=0.
// Returns +infinity when a support mismatch makes the integral diverge.
template <typename Phi, typename P, typename Q>
double f_divergence_between_densities(Phi&& phi, P&& p, Q&& q, Interval support,
                                      const QuadratureConfig& cfg = {}) {
    const Interval win = detail::finite_window(p, q, support);
    bool diverged = false;
    auto integrand = [&](double x) -> double {
        const double qx = q(x);
        const double px = p(x);
        if (qx < 1e-300) {
            if (px < 1e-300) return 0.0;
            diverged = true;
            return 0.0;
        }
        return phi(px / qx) * qx;
    };
    // probe for support mismatch before spending the budget
    for (int i = 0; i <= 256; ++i) {
        integrand(win.lo + (win.hi - win.lo) * i / 256.0);
        if (diverged) return kInf;
    }
    const double v = integrate_adaptive(integrand, win.lo, win.hi, cfg);
    return diverged ? kInf : v;
}

// TVD between two Gaussians via the closed-form density crossings: the
// quadratic in x from equating log-densities has at most two real roots, and
// the integral reduces to signed cdf differences on the segments between
// them. Independent of any quadrature.
inline double gaussian_tvd_exact(double mu1, double sigma1, double mu2, double sigma2) {
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) throw std::invalid_argument("gaussian_tvd_exact: sigma <= 0");
    if (mu1 == mu2 && sigma1 == sigma2) return 0.0;
    const double a = 0.5 / (sigma2 * sigma2) - 0.5 / (sigma1 * sigma1);
    const double b = mu1 / (sigma1 * sigma1) - mu2 / (sigma2 * sigma2);
    const double c = 0.5 * mu2 * mu2 / (sigma2 * sigma2) - 0.5 * mu1 * mu1 / (sigma1 * sigma1) +
                     std::log(sigma2 / sigma1);
    std::vector<double> roots;
    if (a == 0.0) {
        if (b != 0.0) roots.push_back(-c / b);
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc > 0.0) {
            const double s = std::sqrt(disc);
            roots.push_back((-b - s) / (2.0 * a));
            roots.push_back((-b + s) / (2.0 * a));
            std::sort(roots.begin(), roots.end());
        }
    }
    auto cdf1 = [&](double x) { return detail::gaussian_cdf_std((x - mu1) / sigma1); };
    auto cdf2 = [&](double x) { return detail::gaussian_cdf_std((x - mu2) / sigma2); };
    double acc = 0.0;
    double f1_prev = 0.0, f2_prev = 0.0;
    for (std::size_t i = 0; i <= roots.size(); ++i) {
        const double f1 = i < roots.size() ? cdf1(roots[i]) : 1.0;
        const double f2 = i < roots.size() ? cdf2(roots[i]) : 1.0;
        acc += std::fabs((f1 - f1_prev) - (f2 - f2_prev));
        f1_prev = f1;
        f2_prev = f2;
    }
    return 0.5 * acc;
}

namespace detail {

// 1/2 (atom mass + sum over sign segments |dF - dG|). Fc and G are the
// continuous-part cdfs of the two laws in the integration variable; diff is
// the density difference used only to locate the sign changes. Exact up to
// root placement, so endpoint singularities cost nothing.
template <typename DiffFn, typename CdfF, typename CdfG>
double tvd_by_cdf_segments(DiffFn&& diff, CdfF&& Fc, CdfG&& G, double lo, double hi,
                           const QuadratureConfig& cfg, double atom_total) {
    const auto cuts = split_points(diff, lo, hi, cfg);
    double acc = 0.0;
    double f_prev = Fc(lo), g_prev = G(lo);
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double f = Fc(cuts[i]), g = G(cuts[i]);
        acc += std::fabs((f - f_prev) - (g - g_prev));
        f_prev = f;
        g_prev = g;
    }
    return 0.5 * (acc + atom_total);
}

inline double induced_tvd_one_sided(const CrossDepthLaw& law, const QuadratureConfig& cfg) {
    const double atom_lo = law.atom_at_lo();
    const double atom_hi = law.atom_at_hi();
    switch (law.kind()) {
        case DepthKind::halfspace: {
            auto Fc = [&](double z) {
                if (z <= 0.0) return 0.0;
                if (z >= 0.5) return 1.0 - atom_lo;
                return law.cdf(z) - atom_lo;
            };
            return tvd_by_cdf_segments([&](double z) { return law.pdf(z) - 2.0; }, Fc,
                                       [](double z) { return 2.0 * z; }, 0.0, 0.5, cfg, atom_lo);
        }
        case DepthKind::quantile: {
            auto Fc = [&](double z) {
                if (z <= 0.0) return 0.0;
                if (z >= 1.0) return 1.0 - atom_lo - atom_hi;
                return law.cdf(z) - atom_lo;
            };
            return tvd_by_cdf_segments([&](double z) { return law.pdf(z) - 1.0; }, Fc,
                                       [](double z) { return z; }, 0.0, 1.0, cfg, atom_lo + atom_hi);
        }
        case DepthKind::simplicial: {
            // substituted variable y = sqrt(1-2z): the reference R becomes
            // U(0,1) and the 1/sqrt(1-2z) prefactor cancels exactly, so both
            // densities are bounded. z = 0 (the possible atom) maps to y = 1.
            auto Hc = [&](double y) {
                if (y <= 0.0) return 0.0;
                if (y >= 1.0) return 1.0 - atom_lo;
                return 1.0 - law.cdf(0.5 * (1.0 - y * y));
            };
            auto diff = [&](double y) {
                const double r = 0.5 * std::min(y, 1.0);
                return 0.5 * (law.density_ratio(0.5 - r) + law.density_ratio(0.5 + r)) - 1.0;
            };
            return tvd_by_cdf_segments(diff, Hc, [](double y) { return y; }, 0.0, 1.0, cfg, atom_lo);
        }
        default:
            throw std::invalid_argument("induced_tvd: kind must be halfspace, simplicial or quantile");
    }
}

}  // namespace detail

// Depth-induced TVD: the TVD between the cross-distribution depth law and
// the self-transform reference (U(0,1/2) for halfspace, the law R for
// simplicial, U(0,1) for the quantile transform).
//   forward  = TVD(law of depth(X; Q), reference)   with X ~ P
//   backward = TVD(law of depth(Y; P), reference)   with Y ~ Q
inline InducedDivergenceResult induced_tvd(DepthKind kind, const Distribution& p, const Distribution& q,
                                           const QuadratureConfig& cfg = {}) {
    const double forward = detail::induced_tvd_one_sided(CrossDepthLaw(kind, p, q), cfg);
    const double backward = detail::induced_tvd_one_sided(CrossDepthLaw(kind, q, p), cfg);
    return {forward, backward, 0.5 * (forward + backward)};
}

// The two sufficient conditions under which the halfspace-induced TVD equals
// the true TVD: on a uniform grid of [0,1/2], the product of the density
// differences at the z- and (1-z)-quantiles never goes negative. Numerically
// zero products (>= -1e-12) count as satisfied.
inline std::pair<bool, bool> check_equality_conditions(const Distribution& p, const Distribution& q,
                                                       std::size_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("check_equality_conditions: grid_size must be >= 2");
    constexpr double kEps = 1e-12;
    auto clampu = [](double u) { return std::clamp(u, 1e-12, 1.0 - 1e-12); };
    bool cond1 = true, cond2 = true;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double z = clampu(0.5 * static_cast<double>(i) / static_cast<double>(grid_size - 1));
        {
            const double y1 = q.quantile(z), y2 = q.quantile(clampu(1.0 - z));
            const double prod = (p.pdf(y1) - q.pdf(y1)) * (p.pdf(y2) - q.pdf(y2));
            if (prod < -kEps) cond1 = false;
        }
        {
            const double x1 = p.quantile(z), x2 = p.quantile(clampu(1.0 - z));
            const double prod = (q.pdf(x1) - p.pdf(x1)) * (q.pdf(x2) - p.pdf(x2));
            if (prod < -kEps) cond2 = false;
        }
        if (!cond1 && !cond2) break;
    }
    return {cond1, cond2};
}

// Plug-in V-statistic for the squared MMD (diagonal terms included, matching
// the expectation form).
inline double mmd_squared_direct(const SortedSample& sx, const SortedSample& sy, const KernelSpec& kernel) {
    const auto& xs = sx.values();
    const auto& ys = sy.values();
    double kxx = 0.0, kyy = 0.0, kxy = 0.0;
    for (double a : xs)
        for (double b : xs) kxx += kernel(a, b);
    for (double a : ys)
        for (double b : ys) kyy += kernel(a, b);
    for (double a : xs)
        for (double b : ys) kxy += kernel(a, b);
    const double nx = static_cast<double>(xs.size()), ny = static_cast<double>(ys.size());
    return kxx / (nx * nx) + kyy / (ny * ny) - 2.0 * kxy / (nx * ny);
}

// Same quantity assembled from kernel-depth evaluations: the squared MMD is
// the sum of two differences of kernel depth means.
inline double mmd_squared_via_depth(const SortedSample& sx, const SortedSample& sy,
                                    const KernelSpec& kernel) {
    auto mean_depth = [&](const SortedSample& pts, const SortedSample& ref) {
        double acc = 0.0;
        for (double x : pts.values()) acc += kd_empirical(x, ref, kernel);
        return acc / static_cast<double>(pts.size());
    };
    return mean_depth(sx, sx) + mean_depth(sy, sy) - mean_depth(sx, sy) - mean_depth(sy, sx);
}

}  // namespace depthdiv
