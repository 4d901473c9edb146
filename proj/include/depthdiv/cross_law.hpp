#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "depthdiv/depth.hpp"
#include "depthdiv/distribution.hpp"

namespace depthdiv {

// Raised when a density-ratio evaluation would divide by an underflowed
// reference density; keeps quadrature error-aware instead of returning inf.
struct singularity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Law of a depth value when the evaluated point and the reference come from
// different distributions: kind(X; inner) with X ~ outer. Evaluable cdf/pdf
// in closed form from the parents' cdf, pdf and inverse cdf.
class CrossDepthLaw {
public:
    CrossDepthLaw(DepthKind kind, Distribution outer, Distribution inner)
        : kind_(kind), outer_(std::move(outer)), inner_(std::move(inner)) {
        if (kind_ == DepthKind::kernel)
            throw std::invalid_argument("CrossDepthLaw: no closed-form law for kernel depth");
    }

    static CrossDepthLaw halfspace(Distribution outer, Distribution inner) {
        return CrossDepthLaw(DepthKind::halfspace, std::move(outer), std::move(inner));
    }
    static CrossDepthLaw simplicial(Distribution outer, Distribution inner) {
        return CrossDepthLaw(DepthKind::simplicial, std::move(outer), std::move(inner));
    }
    static CrossDepthLaw quantile(Distribution outer, Distribution inner) {
        return CrossDepthLaw(DepthKind::quantile, std::move(outer), std::move(inner));
    }

    DepthKind kind() const { return kind_; }
    const Distribution& outer() const { return outer_; }
    const Distribution& inner() const { return inner_; }
    Interval support() const { return detail::depth_support(kind_); }

    // Exact limits at the support endpoints; in between, quantile arguments
    // are clamped to [eps_q, 1-eps_q] before inversion so unbounded parents
    // never produce NaNs.
    double cdf(double z) const {
        const Interval s = support();
        if (z <= s.lo) return 0.0;
        if (z >= s.hi) return 1.0;
        switch (kind_) {
            case DepthKind::halfspace:
                return 1.0 + outer_.cdf(inner_quantile(z)) - outer_.cdf(inner_quantile(1.0 - z));
            case DepthKind::simplicial: {
                const double r = std::sqrt(std::max(0.0, 0.25 - 0.5 * z));
                return 1.0 - outer_.cdf(inner_quantile(0.5 + r)) + outer_.cdf(inner_quantile(0.5 - r));
            }
            case DepthKind::quantile:
                return outer_.cdf(inner_quantile(z));
            default: break;
        }
        throw std::logic_error("CrossDepthLaw::cdf: bad kind");
    }

    double pdf(double z) const {
        const Interval s = support();
        if (z < s.lo || z > s.hi) return 0.0;
        switch (kind_) {
            case DepthKind::halfspace:
                return density_ratio(z) + density_ratio(1.0 - z);
            case DepthKind::simplicial: {
                const double one_minus_2z = 1.0 - 2.0 * z;
                if (one_minus_2z <= 0.0)
                    throw singularity_error("sd cross pdf: singular at z = 1/2");
                const double r = 0.5 * std::sqrt(one_minus_2z);
                return (density_ratio(0.5 - r) + density_ratio(0.5 + r)) / (2.0 * std::sqrt(one_minus_2z));
            }
            case DepthKind::quantile:
                return density_ratio(z);
            default: break;
        }
        throw std::logic_error("CrossDepthLaw::pdf: bad kind");
    }

    // f_outer / f_inner evaluated at the inner u-quantile.
    double density_ratio(double u) const {
        const double x = inner_quantile(u);
        const double denom = inner_.pdf(x);
        if (!(denom >= 1e-300))
            throw singularity_error("cross law pdf: inner density underflow at quantile " + std::to_string(u));
        return outer_.pdf(x) / denom;
    }

    // Probability that the depth value sits exactly at the lower support
    // endpoint: outer mass outside the inner support (zero for halfspace and
    // simplicial kinds whenever the supports agree). For the quantile kind
    // only the left tail lands at 0; the right tail is the atom at 1.
    double atom_at_lo() const {
        const Interval si = inner_.support();
        const double left = outer_.cdf(si.lo);
        const double right = 1.0 - outer_.cdf(si.hi);
        return kind_ == DepthKind::quantile ? left : left + right;
    }

    double atom_at_hi() const {
        if (kind_ != DepthKind::quantile) return 0.0;
        return 1.0 - outer_.cdf(inner_.support().hi);
    }

private:
    static constexpr double kEpsQ = 1e-12;

    double inner_quantile(double u) const {
        return inner_.quantile(std::clamp(u, kEpsQ, 1.0 - kEpsQ));
    }

    DepthKind kind_;
    Distribution outer_;
    Distribution inner_;
};

}  // namespace depthdiv
