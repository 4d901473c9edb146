#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "depthdiv/rng.hpp"

namespace depthdiv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed real interval; endpoints may be infinite.
struct Interval {
    double lo;
    double hi;

    bool contains(double x) const { return x >= lo && x <= hi; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    double width() const { return hi - lo; }
};

// Nondecreasing finite real vector, N >= 1. Carrier for empirical
// distributions; all counting queries are binary searches.
class SortedSample {
public:
    static SortedSample from_values(std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return SortedSample(std::move(v));
    }

    static SortedSample from_sorted(std::vector<double> v) {
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i - 1] > v[i]) throw std::invalid_argument("SortedSample: values not nondecreasing");
        }
        return SortedSample(std::move(v));
    }

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double min() const { return values_.front(); }
    double max() const { return values_.back(); }

    std::size_t count_le(double x) const {
        return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), x) - values_.begin());
    }
    std::size_t count_lt(double x) const {
        return static_cast<std::size_t>(std::lower_bound(values_.begin(), values_.end(), x) - values_.begin());
    }
    std::size_t count_ge(double x) const { return values_.size() - count_lt(x); }
    std::size_t count_gt(double x) const { return values_.size() - count_le(x); }

private:
    explicit SortedSample(std::vector<double> v) : values_(std::move(v)) {
        if (values_.empty()) throw std::invalid_argument("SortedSample: empty sample");
        for (double x : values_) {
            if (!std::isfinite(x)) throw std::invalid_argument("SortedSample: non-finite value");
        }
    }

    std::vector<double> values_;
};

namespace detail {

inline double gaussian_pdf_std(double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

inline double gaussian_cdf_std(double t) {
    return 0.5 * std::erfc(-t / std::numbers::sqrt2);
}

// Bisection on the CDF refined by one Newton step. Slower than a rational
// approximation but gives the same result on every platform.
inline double gaussian_quantile_std(double u) {
    if (u <= 0.0) return -kInf;
    if (u >= 1.0) return kInf;
    double lo = -41.0, hi = 41.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (gaussian_cdf_std(mid) < u) lo = mid; else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    const double d = gaussian_pdf_std(x);
    if (d > 0.0) x -= (gaussian_cdf_std(x) - u) / d;
    return x;
}

}  // namespace detail

struct GaussianParams {
    double mu;
    double sigma;  // > 0
};

struct UniformParams {
    double lo;
    double hi;  // > lo
};

// The fixed law R on [0, 1/2]: cdf 1 - sqrt(1-2z), so 2Z ~ Beta(1, 1/2).
struct SdReferenceParams {};

struct CustomParams {
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    std::function<double(double)> quantile;  // may be empty; falls back to bisection on cdf
    Interval support;
    std::string label;
};

// A univariate continuous law with evaluable pdf, cdf and inverse cdf.
// All evaluation is pure; instances are immutable after construction.
class Distribution {
public:
    using Descriptor = std::variant<GaussianParams, UniformParams, SdReferenceParams, CustomParams>;

    static Distribution gaussian(double mu, double sigma) {
        if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be > 0");
        return Distribution(GaussianParams{mu, sigma});
    }

    static Distribution uniform_interval(double lo, double hi) {
        if (!(hi > lo)) throw std::invalid_argument("uniform_interval: hi must be > lo");
        return Distribution(UniformParams{lo, hi});
    }

    static Distribution sd_reference() { return Distribution(SdReferenceParams{}); }

    static Distribution custom(std::function<double(double)> pdf,
                               std::function<double(double)> cdf,
                               std::function<double(double)> quantile,
                               Interval support, std::string label = "custom") {
        return Distribution(CustomParams{std::move(pdf), std::move(cdf), std::move(quantile), support,
                                          std::move(label)});
    }

    double pdf(double x) const {
        return std::visit(
            [x](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GaussianParams>) {
                    return detail::gaussian_pdf_std((x - p.mu) / p.sigma) / p.sigma;
                } else if constexpr (std::is_same_v<T, UniformParams>) {
                    return (x >= p.lo && x <= p.hi) ? 1.0 / (p.hi - p.lo) : 0.0;
                } else if constexpr (std::is_same_v<T, SdReferenceParams>) {
                    if (x < 0.0 || x > 0.5) return 0.0;
                    return 1.0 / std::sqrt(1.0 - 2.0 * x);  // integrable singularity at 1/2
                } else {
                    if (!p.support.contains(x)) return 0.0;
                    return p.pdf(x);
                }
            },
            desc_);
    }

    double cdf(double x) const {
        return std::visit(
            [x](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GaussianParams>) {
                    return detail::gaussian_cdf_std((x - p.mu) / p.sigma);
                } else if constexpr (std::is_same_v<T, UniformParams>) {
                    if (x <= p.lo) return 0.0;
                    if (x >= p.hi) return 1.0;
                    return (x - p.lo) / (p.hi - p.lo);
                } else if constexpr (std::is_same_v<T, SdReferenceParams>) {
                    if (x <= 0.0) return 0.0;
                    if (x >= 0.5) return 1.0;
                    return 1.0 - std::sqrt(1.0 - 2.0 * x);
                } else {
                    if (x <= p.support.lo) return 0.0;
                    if (x >= p.support.hi) return 1.0;
                    return std::clamp(p.cdf(x), 0.0, 1.0);
                }
            },
            desc_);
    }

    // Inverse cdf. u = 0 or 1 on an unbounded side returns the +-infinity
    // sentinel; callers clamp where a finite value is needed.
    double quantile(double u) const {
        if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile: u outside [0,1]");
        return std::visit(
            [u, this](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GaussianParams>) {
                    return p.mu + p.sigma * detail::gaussian_quantile_std(u);
                } else if constexpr (std::is_same_v<T, UniformParams>) {
                    return p.lo + u * (p.hi - p.lo);
                } else if constexpr (std::is_same_v<T, SdReferenceParams>) {
                    const double r = 1.0 - u;
                    return (1.0 - r * r) / 2.0;
                } else {
                    if (p.quantile) return p.quantile(u);
                    return quantile_by_bisection(u);
                }
            },
            desc_);
    }

    Interval support() const {
        return std::visit(
            [](const auto& p) -> Interval {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GaussianParams>) {
                    return {-kInf, kInf};
                } else if constexpr (std::is_same_v<T, UniformParams>) {
                    return {p.lo, p.hi};
                } else if constexpr (std::is_same_v<T, SdReferenceParams>) {
                    return {0.0, 0.5};
                } else {
                    return p.support;
                }
            },
            desc_);
    }

    std::string describe() const {
        return std::visit(
            [](const auto& p) -> std::string {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GaussianParams>) {
                    return "gaussian(mu=" + std::to_string(p.mu) + ", sigma=" + std::to_string(p.sigma) + ")";
                } else if constexpr (std::is_same_v<T, UniformParams>) {
                    return "uniform(" + std::to_string(p.lo) + ", " + std::to_string(p.hi) + ")";
                } else if constexpr (std::is_same_v<T, SdReferenceParams>) {
                    return "sd_reference";
                } else {
                    return p.label;
                }
            },
            desc_);
    }

    const Descriptor& descriptor() const { return desc_; }

private:
    explicit Distribution(Descriptor d) : desc_(std::move(d)) {}

    double quantile_by_bisection(double u) const {
        Interval s = support();
        double lo = s.lo, hi = s.hi;
        // expand infinite ends until the cdf brackets u
        if (!std::isfinite(lo)) {
            lo = std::isfinite(hi) ? hi - 1.0 : -1.0;
            while (cdf(lo) > u && lo > -1e300) lo = lo * 2.0 - 1.0;
        }
        if (!std::isfinite(hi)) {
            hi = std::isfinite(s.lo) ? s.lo + 1.0 : 1.0;
            while (cdf(hi) < u && hi < 1e300) hi = hi * 2.0 + 1.0;
        }
        const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
        while (hi - lo > 1e-14 * scale) {
            const double mid = 0.5 * (lo + hi);
            if (cdf(mid) < u) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    Descriptor desc_;
};

// n i.i.d. inverse-CDF draws, returned sorted. Identical (dist, n, seed)
// reproduce the identical vector.
inline SortedSample sample(const Distribution& dist, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    Xoshiro256PlusPlus rng(seed);
    std::vector<double> draws(n);
    for (auto& x : draws) x = dist.quantile(rng.uniform_open01());
    return SortedSample::from_values(std::move(draws));
}

// Law of a*X + b for X ~ dist, a != 0. Closed-form families map to
// themselves; anything else is wrapped as a custom law.
inline Distribution affine_transform(const Distribution& dist, double a, double b) {
    if (a == 0.0) throw std::invalid_argument("affine_transform: a must be nonzero");
    if (const auto* g = std::get_if<GaussianParams>(&dist.descriptor())) {
        return Distribution::gaussian(a * g->mu + b, std::fabs(a) * g->sigma);
    }
    if (const auto* u = std::get_if<UniformParams>(&dist.descriptor())) {
        const double x0 = a * u->lo + b, x1 = a * u->hi + b;
        return Distribution::uniform_interval(std::min(x0, x1), std::max(x0, x1));
    }
    Distribution base = dist;
    const Interval s = base.support();
    const double y0 = a * s.lo + b, y1 = a * s.hi + b;
    const Interval ts{std::min(y0, y1), std::max(y0, y1)};
    const double inv_abs_a = 1.0 / std::fabs(a);
    auto pdf = [base, a, b, inv_abs_a](double x) { return base.pdf((x - b) / a) * inv_abs_a; };
    auto cdf = [base, a, b](double x) {
        const double t = base.cdf((x - b) / a);
        return a > 0.0 ? t : 1.0 - t;
    };
    auto quantile = [base, a, b](double u) {
        return a > 0.0 ? a * base.quantile(u) + b : a * base.quantile(1.0 - u) + b;
    };
    return Distribution::custom(pdf, cdf, quantile, ts, "affine(" + base.describe() + ")");
}

}  // namespace depthdiv
