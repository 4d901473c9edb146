#pragma once

// Shared test utilities: goodness-of-fit statistics and brute-force oracles
// kept independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "depthdiv/chain_lp.hpp"
#include "depthdiv/rng.hpp"

namespace testsupport {

// One-sample Kolmogorov-Smirnov statistic against a reference cdf.
template <typename Cdf>
double ks_statistic(std::vector<double> sorted_values, Cdf&& cdf) {
    std::sort(sorted_values.begin(), sorted_values.end());
    const double n = static_cast<double>(sorted_values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        const double f = cdf(sorted_values[i]);
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n));
    }
    return d;
}

// Brute-force chain-LP oracle: enumerate every vertex of
//   { a : |a_{i+1}-a_i| <= l (Z_{i+1}-Z_i), -1 <= a_i <= 1 }.
// A vertex is determined by an edge-state assignment (each adjacent pair
// tight at +gap, tight at -gap, or slack) together with one box-anchored node
// per run of tight edges; propagate from the anchor and keep feasible points.
// Exponential, so only for small N.
inline double chain_lp_vertex_oracle(const depthdiv::ChainLp& lp) {
    const std::size_t n = lp.nodes.size();
    std::vector<double> gaps(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i + 1 < n; ++i) gaps[i] = lp.lipschitz * (lp.nodes[i + 1] - lp.nodes[i]);

    double best = -std::numeric_limits<double>::infinity();
    auto consider = [&](const std::vector<double>& a) {
        for (double v : a)
            if (v < -1.0 - 1e-9 || v > 1.0 + 1e-9) return;
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (std::fabs(a[i + 1] - a[i]) > gaps[i] + 1e-9) return;
        double obj = lp.constant_offset;
        for (std::size_t i = 0; i < n; ++i) obj += lp.weights[i] * a[i];
        best = std::max(best, 0.5 * obj);
    };

    std::size_t total_edge_assignments = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) total_edge_assignments *= 3;

    std::vector<int> state(n > 0 ? n - 1 : 0);  // 0 slack, 1 tight +gap, 2 tight -gap
    for (std::size_t code = 0; code < total_edge_assignments; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            state[i] = static_cast<int>(c % 3);
            c /= 3;
        }
        // runs of consecutive tight edges form components
        std::vector<std::pair<std::size_t, std::size_t>> comps;
        std::size_t start = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (state[i] == 0) {
                comps.emplace_back(start, i);
                start = i + 1;
            }
        }
        comps.emplace_back(start, n - 1);

        // choose an anchored node and a sign per component
        std::vector<std::size_t> pick(comps.size(), 0);
        while (true) {
            std::vector<double> a(n, 0.0);
            for (std::size_t ci = 0; ci < comps.size(); ++ci) {
                const auto [lo, hi] = comps[ci];
                const std::size_t anchor = lo + pick[ci] / 2;
                a[anchor] = (pick[ci] % 2 == 0) ? -1.0 : 1.0;
                for (std::size_t i = anchor; i < hi; ++i)
                    a[i + 1] = a[i] + (state[i] == 1 ? gaps[i] : -gaps[i]);
                for (std::size_t i = anchor; i > lo; --i)
                    a[i - 1] = a[i] - (state[i - 1] == 1 ? gaps[i - 1] : -gaps[i - 1]);
            }
            consider(a);
            // advance the mixed-radix counter over (anchor, sign) choices
            std::size_t ci = 0;
            for (; ci < comps.size(); ++ci) {
                const std::size_t radix = 2 * (comps[ci].second - comps[ci].first + 1);
                if (++pick[ci] < radix) break;
                pick[ci] = 0;
            }
            if (ci == comps.size()) break;
        }
    }
    return best;
}

}  // namespace testsupport
