#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "depthdiv/distribution.hpp"

namespace depthdiv {

enum class DepthKind { halfspace, simplicial, quantile, kernel };

inline const char* depth_kind_name(DepthKind k) {
    switch (k) {
        case DepthKind::halfspace: return "hd";
        case DepthKind::simplicial: return "sd";
        case DepthKind::quantile: return "qt";
        case DepthKind::kernel: return "kd";
    }
    return "?";
}

inline DepthKind depth_kind_from_name(const std::string& s) {
    if (s == "hd") return DepthKind::halfspace;
    if (s == "sd") return DepthKind::simplicial;
    if (s == "qt") return DepthKind::quantile;
    if (s == "kd") return DepthKind::kernel;
    throw std::invalid_argument("unknown depth kind: " + s);
}

// Gaussian kernel k(x,y) = exp(-(x-y)^2 / (2 h^2)); k(x,x) = 1, 0 < k <= 1.
struct KernelSpec {
    double bandwidth;

    explicit KernelSpec(double h) : bandwidth(h) {
        if (!(h > 0.0)) throw std::invalid_argument("KernelSpec: bandwidth must be > 0");
    }

    double operator()(double x, double y) const {
        const double d = (x - y) / bandwidth;
        return std::exp(-0.5 * d * d);
    }
};

// --- depth against an analytic reference law -------------------------------

inline double hd_analytic(double x, const Distribution& ref) {
    const double f = ref.cdf(x);
    return std::min(f, 1.0 - f);
}

inline double sd_analytic(double x, const Distribution& ref) {
    const double f = ref.cdf(x);
    return 2.0 * f * (1.0 - f);
}

inline double qt_analytic(double x, const Distribution& ref) { return ref.cdf(x); }

// --- depth against an empirical reference sample ---------------------------

// min(#{X_i <= x}, #{X_i >= x}) / N, capped at 1/2. Ties count on both sides.
inline double hd_empirical(double x, const SortedSample& ref) {
    const double n = static_cast<double>(ref.size());
    const double m = static_cast<double>(std::min(ref.count_le(x), ref.count_ge(x))) / n;
    return std::min(m, 0.5);
}

// 2 (#{X_i <= x}/N) (#{X_i > x}/N); note the strict inequality on the right.
inline double sd_empirical(double x, const SortedSample& ref) {
    const double n = static_cast<double>(ref.size());
    return 2.0 * (static_cast<double>(ref.count_le(x)) / n) * (static_cast<double>(ref.count_gt(x)) / n);
}

inline double qt_empirical(double x, const SortedSample& ref) {
    return static_cast<double>(ref.count_le(x)) / static_cast<double>(ref.size());
}

inline double kd_empirical(double x, const SortedSample& ref, const KernelSpec& kernel) {
    double acc = 0.0;
    for (double xi : ref.values()) acc += kernel(x, xi);
    return acc / static_cast<double>(ref.size());
}

// --- batch transforms -------------------------------------------------------

// Transformed observations together with the interval the depth lives on.
struct DepthSample {
    std::vector<double> values;  // sorted nondecreasing
    Interval support;
    DepthKind kind;
    std::string reference;

    SortedSample to_sample() const { return SortedSample::from_sorted(values); }
};

namespace detail {

inline Interval depth_support(DepthKind kind) {
    switch (kind) {
        case DepthKind::halfspace:
        case DepthKind::simplicial: return {0.0, 0.5};
        case DepthKind::quantile:
        case DepthKind::kernel: return {0.0, 1.0};
    }
    return {0.0, 1.0};
}

template <typename Eval>
DepthSample transform_with(const SortedSample& points, DepthKind kind, std::string ref_desc, Eval eval) {
    std::vector<double> out;
    out.reserve(points.size());
    for (double x : points.values()) out.push_back(eval(x));
    std::sort(out.begin(), out.end());
    return DepthSample{std::move(out), depth_support(kind), kind, std::move(ref_desc)};
}

}  // namespace detail

inline DepthSample transform_sample(const SortedSample& points, const Distribution& ref, DepthKind kind) {
    switch (kind) {
        case DepthKind::halfspace:
            return detail::transform_with(points, kind, ref.describe(),
                                          [&](double x) { return hd_analytic(x, ref); });
        case DepthKind::simplicial:
            return detail::transform_with(points, kind, ref.describe(),
                                          [&](double x) { return sd_analytic(x, ref); });
        case DepthKind::quantile:
            return detail::transform_with(points, kind, ref.describe(),
                                          [&](double x) { return qt_analytic(x, ref); });
        case DepthKind::kernel:
            throw std::invalid_argument("transform_sample: kernel depth needs an empirical reference");
    }
    throw std::invalid_argument("transform_sample: bad kind");
}

inline DepthSample transform_sample(const SortedSample& points, const SortedSample& ref, DepthKind kind,
                                    std::optional<KernelSpec> kernel = std::nullopt) {
    const std::string desc = "empirical(n=" + std::to_string(ref.size()) + ")";
    switch (kind) {
        case DepthKind::halfspace:
            return detail::transform_with(points, kind, desc, [&](double x) { return hd_empirical(x, ref); });
        case DepthKind::simplicial:
            return detail::transform_with(points, kind, desc, [&](double x) { return sd_empirical(x, ref); });
        case DepthKind::quantile:
            return detail::transform_with(points, kind, desc, [&](double x) { return qt_empirical(x, ref); });
        case DepthKind::kernel: {
            if (!kernel) throw std::invalid_argument("transform_sample: kernel depth needs a KernelSpec");
            return detail::transform_with(points, kind, desc,
                                          [&](double x) { return kd_empirical(x, ref, *kernel); });
        }
    }
    throw std::invalid_argument("transform_sample: bad kind");
}

}  // namespace depthdiv
