#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "depthdiv/distribution.hpp"

namespace depthdiv {

// max (1/2)(sum_i c_i a_i + offset) over a in [-1,1]^N with the chain
// constraints |a_{i+1} - a_i| <= l (Z_{i+1} - Z_i). Always feasible (a = 0)
// and bounded by the box. Duplicate nodes give zero-gap constraints, i.e.
// exact equalities.
struct ChainLp {
    std::vector<double> nodes;    // Z_1..Z_N, nondecreasing
    std::vector<double> weights;  // c_1..c_N
    double constant_offset = 0.0;
    double lipschitz = 1.0;

    void validate() const {
        if (nodes.empty()) throw std::invalid_argument("ChainLp: no nodes");
        if (nodes.size() != weights.size()) throw std::invalid_argument("ChainLp: weight/node size mismatch");
        if (!(lipschitz > 0.0)) throw std::invalid_argument("ChainLp: lipschitz must be > 0");
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            if (nodes[i - 1] > nodes[i]) throw std::invalid_argument("ChainLp: nodes not nondecreasing");
        }
    }

    // Plain-text dump for cross-checking against external solvers:
    // one "Z_i c_i" line per node after a header carrying l and the offset.
    std::string debug_text() const {
        std::ostringstream os;
        os.precision(17);
        os << "chain_lp n=" << nodes.size() << " l=" << lipschitz << " offset=" << constant_offset << "\n";
        for (std::size_t i = 0; i < nodes.size(); ++i) os << nodes[i] << " " << weights[i] << "\n";
        return os.str();
    }
};

struct LpSolution {
    std::vector<double> values;  // optimal a_i, all in [-1,1]
    double objective;            // (1/2)(sum c_i a_i + offset)
};

namespace detail {

// Piecewise-linear concave value function on [x.front(), x.back()],
// represented by its breakpoints. The chain LP's Bellman recursion only
// needs three operations, each of which preserves concavity exactly:
// sliding-window max (relax), domain clamp, and adding a linear term.
struct PwlConcave {
    std::vector<double> xs;
    std::vector<double> ys;

    static PwlConcave linear(double slope, double lo, double hi) {
        return PwlConcave{{lo, hi}, {slope * lo, slope * hi}};
    }

    // [first, last] index range attaining the maximum value.
    std::pair<std::size_t, std::size_t> argmax_range() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < ys.size(); ++i)
            if (ys[i] > ys[best]) best = i;
        std::size_t first = best, last = best;
        while (first > 0 && ys[first - 1] == ys[best]) --first;
        while (last + 1 < ys.size() && ys[last + 1] == ys[best]) ++last;
        return {first, last};
    }

    double max_value() const {
        double m = ys[0];
        for (double y : ys) m = std::max(m, y);
        return m;
    }

    double eval(double x) const {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - xs.begin());
        const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + t * (ys[i] - ys[i - 1]);
    }

    // W(a) = max_{|a'-a| <= g} V(a'): shift the rising branch left and the
    // falling branch right by g, flat at the peak in between.
    PwlConcave relax(double g) const {
        if (g <= 0.0) return *this;
        const auto [i1, i2] = argmax_range();
        PwlConcave out;
        out.xs.reserve(xs.size() + 2);
        out.ys.reserve(ys.size() + 2);
        for (std::size_t i = 0; i < i1; ++i) {
            out.xs.push_back(xs[i] - g);
            out.ys.push_back(ys[i]);
        }
        out.xs.push_back(xs[i1] - g);
        out.ys.push_back(ys[i1]);
        out.xs.push_back(xs[i2] + g);
        out.ys.push_back(ys[i1]);
        for (std::size_t i = i2 + 1; i < xs.size(); ++i) {
            out.xs.push_back(xs[i] + g);
            out.ys.push_back(ys[i]);
        }
        return out;
    }

    PwlConcave clamp(double lo, double hi) const {
        PwlConcave out;
        out.xs.push_back(lo);
        out.ys.push_back(eval(lo));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] > lo && xs[i] < hi) {
                out.xs.push_back(xs[i]);
                out.ys.push_back(ys[i]);
            }
        }
        out.xs.push_back(hi);
        out.ys.push_back(eval(hi));
        return out;
    }

    void add_linear(double slope) {
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] += slope * xs[i];
    }
};

}  // namespace detail

// Exact solve by dynamic programming on concave piecewise-linear value
// functions: B_i(a) = c_i a + max over the Lipschitz window of B_{i+1}.
// Globally optimal and deterministic; ties resolve to the smallest node
// value stage by stage during extraction.
inline LpSolution solve_chain_lp(const ChainLp& lp) {
    lp.validate();
    const std::size_t n = lp.nodes.size();
    std::vector<std::pair<double, double>> peak(n);  // argmax interval of each B_i

    detail::PwlConcave value = detail::PwlConcave::linear(lp.weights[n - 1], -1.0, 1.0);
    {
        const auto [i1, i2] = value.argmax_range();
        peak[n - 1] = {value.xs[i1], value.xs[i2]};
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        const double gap = lp.lipschitz * (lp.nodes[i + 1] - lp.nodes[i]);
        value = value.relax(gap).clamp(-1.0, 1.0);
        value.add_linear(lp.weights[i]);
        const auto [i1, i2] = value.argmax_range();
        peak[i] = {value.xs[i1], value.xs[i2]};
    }

    LpSolution sol;
    sol.values.resize(n);
    sol.values[0] = peak[0].first;
    for (std::size_t i = 1; i < n; ++i) {
        const double gap = lp.lipschitz * (lp.nodes[i] - lp.nodes[i - 1]);
        const double w_lo = std::max(-1.0, sol.values[i - 1] - gap);
        const double w_hi = std::min(1.0, sol.values[i - 1] + gap);
        const auto [m1, m2] = peak[i];
        if (w_hi < m1)
            sol.values[i] = w_hi;  // B_i still rising: best is the window's right end
        else if (w_lo > m2)
            sol.values[i] = w_lo;
        else
            sol.values[i] = std::max(w_lo, m1);
    }
    sol.objective = 0.5 * (value.max_value() + lp.constant_offset);
    return sol;
}

// LP of the two-sample Lipschitz-variational TVD: node values at the merged
// sorted points, per-sample weights +-1/N, adjacent-gap constraints.
inline ChainLp make_two_sample_lp(const SortedSample& sx, const SortedSample& sy, double l) {
    if (!(l > 0.0)) throw std::invalid_argument("lvtvd_two_sample: l must be > 0");
    const double wx = 1.0 / static_cast<double>(sx.size());
    const double wy = -1.0 / static_cast<double>(sy.size());
    ChainLp lp;
    lp.lipschitz = l;
    lp.nodes.reserve(sx.size() + sy.size());
    lp.weights.reserve(sx.size() + sy.size());
    std::size_t i = 0, j = 0;
    while (i < sx.size() || j < sy.size()) {
        if (j >= sy.size() || (i < sx.size() && sx[i] <= sy[j])) {
            lp.nodes.push_back(sx[i++]);
            lp.weights.push_back(wx);
        } else {
            lp.nodes.push_back(sy[j++]);
            lp.weights.push_back(wy);
        }
    }
    return lp;
}

// LP of the one-sided estimator against an exactly known U(a,b): the
// piecewise-linear interpolant integral (constant extension outside
// [Z_1, Z_N]) is the trapezoid form, so it folds into per-node weights.
inline ChainLp make_one_sided_uniform_lp(const SortedSample& sz, double a, double b, double l) {
    if (!(b > a)) throw std::domain_error("lvtvd_one_sided_uniform: requires b > a");
    if (!(l > 0.0)) throw std::invalid_argument("lvtvd_one_sided_uniform: l must be > 0");
    if (sz.min() < a || sz.max() > b)
        throw std::domain_error("lvtvd_one_sided_uniform: sample values outside [a,b]");
    const std::size_t n = sz.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double inv_w = 1.0 / (b - a);
    ChainLp lp;
    lp.lipschitz = l;
    lp.nodes = sz.values();
    lp.weights.assign(n, inv_n);
    lp.weights.front() -= (sz[0] - a) * inv_w;
    lp.weights.back() -= (b - sz[n - 1]) * inv_w;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double half_gap = 0.5 * (sz[i + 1] - sz[i]) * inv_w;
        lp.weights[i] -= half_gap;
        lp.weights[i + 1] -= half_gap;
    }
    return lp;
}

// maximize (1/2)[(1/Nx) sum f(X_i) - (1/Ny) sum f(Y_j)] over f with
// |f| <= 1 and Lipschitz constant at most l, solved at the sample points.
inline LpSolution lvtvd_two_sample(const SortedSample& sx, const SortedSample& sy, double l) {
    return solve_chain_lp(make_two_sample_lp(sx, sy, l));
}

// maximize (1/2)[(1/N) sum f(Z_i) - mean of the interpolant over [a,b]]
// under the same function class.
inline LpSolution lvtvd_one_sided_uniform(const SortedSample& sz, double a, double b, double l) {
    return solve_chain_lp(make_one_sided_uniform_lp(sz, a, b, l));
}

// The duplicated uniform grid {hi * 2k/M : k = 1..M/2}, every value twice --
// exactly the multiset the halfspace self-transform produces for an even
// sample size when hi = 1/2.
inline SortedSample refined_uniform_sample(std::size_t m, double hi) {
    if (m < 2 || m % 2 != 0) throw std::domain_error("refined_uniform_sample: M must be even and >= 2");
    if (!(hi > 0.0)) throw std::invalid_argument("refined_uniform_sample: hi must be > 0");
    std::vector<double> values;
    values.reserve(m);
    for (std::size_t k = 1; k <= m / 2; ++k) {
        const double v = hi * (2.0 * static_cast<double>(k) / static_cast<double>(m));
        values.push_back(v);
        values.push_back(v);
    }
    return SortedSample::from_sorted(std::move(values));
}

}  // namespace depthdiv
