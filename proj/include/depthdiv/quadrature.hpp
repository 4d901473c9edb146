#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace depthdiv {

struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureConfig {
    double abs_tol = 1e-8;
    int max_subdivisions = 2000;
    int sign_change_bracket_grid = 4096;
};

namespace detail {

struct SimpsonState {
    int budget;
};

inline double simpson_estimate(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                            double tol, SimpsonState& st, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_estimate(a, m, fa, flm, fm);
    const double right = simpson_estimate(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    // depth floor keeps a few refinements even when the first estimate
    // happens to agree (e.g. symmetric integrands)
    if ((std::fabs(delta) <= 15.0 * tol && depth >= 4) || depth >= 48) {
        return left + right + delta / 15.0;
    }
    if (--st.budget < 0) throw quadrature_error("adaptive quadrature: subdivision budget exhausted");
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, st, depth + 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, st, depth + 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction; throws quadrature_error when
// the subdivision budget runs out before abs_tol is met.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_subdivisions = 2000) {
    if (!(b > a)) return 0.0;
    detail::SimpsonState st{max_subdivisions};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = detail::simpson_estimate(a, b, fa, fm, fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, st, 0);
}

template <typename F>
double integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg) {
    return integrate_adaptive(std::forward<F>(f), a, b, cfg.abs_tol, cfg.max_subdivisions);
}

// Roots of f on [a,b]: bracket sign changes on a uniform grid, then bisect
// each bracket down to ~1e-12 of the interval scale. Grid points where f is
// exactly zero are reported as-is.
template <typename F>
std::vector<double> bracket_sign_changes(F&& f, double a, double b, int grid_n) {
    std::vector<double> roots;
    if (!(b > a) || grid_n < 2) return roots;
    const double tol = 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
    double x_prev = a;
    double f_prev = f(a);
    for (int i = 1; i <= grid_n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / grid_n;
        const double fx = f(x);
        if (f_prev == 0.0) {
            roots.push_back(x_prev);
        } else if (fx != 0.0 && std::signbit(fx) != std::signbit(f_prev)) {
            double lo = x_prev, hi = x, flo = f_prev;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = f(mid);
                if (fmid == 0.0) { lo = hi = mid; break; }
                if (std::signbit(fmid) == std::signbit(flo)) {
                    lo = mid; flo = fmid;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    if (f_prev == 0.0 && x_prev < b) roots.push_back(x_prev);
    return roots;
}

}  // namespace depthdiv
