#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "depthdiv/cross_law.hpp"
#include "depthdiv/depth.hpp"
#include "depthdiv/quadrature.hpp"

using namespace depthdiv;

namespace {
const Distribution kStd = Distribution::gaussian(0, 1);
const Distribution kWide = Distribution::gaussian(0, 1.5);
}

TEST_CASE("cross laws reduce to the self-transform laws when outer == inner") {
    const auto hd = CrossDepthLaw::halfspace(kStd, kStd);
    const auto sd = CrossDepthLaw::simplicial(kStd, kStd);
    const auto qt = CrossDepthLaw::quantile(kStd, kStd);
    for (int i = 1; i < 40; ++i) {
        const double z = 0.5 * i / 40.0;
        CHECK(hd.cdf(z) == Catch::Approx(2.0 * z).margin(1e-11));
        CHECK(sd.cdf(z) == Catch::Approx(1.0 - std::sqrt(1.0 - 2.0 * z)).margin(1e-11));
        CHECK(hd.pdf(z) == Catch::Approx(2.0).margin(1e-9));
        CHECK(qt.cdf(2.0 * z) == Catch::Approx(2.0 * z).margin(1e-11));
    }
}

TEST_CASE("cross law endpoints") {
    const auto hd = CrossDepthLaw::halfspace(kWide, kStd);
    CHECK(hd.cdf(0.0) == 0.0);
    CHECK(hd.cdf(0.5) == 1.0);
    const auto sd = CrossDepthLaw::simplicial(kWide, kStd);
    CHECK(sd.cdf(0.0) == 0.0);
    CHECK(sd.cdf(0.5) == 1.0);
    const auto qt = CrossDepthLaw::quantile(kWide, kStd);
    CHECK(qt.cdf(0.0) == 0.0);
    CHECK(qt.cdf(1.0) == 1.0);
    CHECK(qt.cdf(0.5) == Catch::Approx(0.5).margin(1e-10));  // both centered at 0
}

TEST_CASE("cross law values against frozen closed-form anchors") {
    // outer N(0, 1.5^2), inner N(0,1), evaluated at z = 1/4
    const auto hd = CrossDepthLaw::halfspace(kWide, kStd);
    CHECK(hd.cdf(0.25) == Catch::Approx(0.65295573776092772).margin(1e-10));
    CHECK(hd.pdf(0.25) == Catch::Approx(1.5129377659765672).margin(1e-9));
    const auto sd = CrossDepthLaw::simplicial(kWide, kStd);
    CHECK(sd.cdf(0.25) == Catch::Approx(0.48317993197581925).margin(1e-10));
}

TEST_CASE("cross law cdfs against the Monte Carlo oracle") {
    // transform seeded draws of the outer law by the analytic depth against
    // the inner law, then compare empirical and closed-form cdfs
    const auto ys = sample(kWide, 1000000, 31);
    const auto hd = CrossDepthLaw::halfspace(kWide, kStd);
    const auto sd = CrossDepthLaw::simplicial(kWide, kStd);
    std::size_t hd_le = 0, sd_le = 0;
    for (double y : ys.values()) {
        if (hd_analytic(y, kStd) <= 0.25) ++hd_le;
        if (sd_analytic(y, kStd) <= 0.25) ++sd_le;
    }
    const double n = static_cast<double>(ys.size());
    CHECK(static_cast<double>(hd_le) / n == Catch::Approx(hd.cdf(0.25)).margin(3e-3));
    CHECK(static_cast<double>(sd_le) / n == Catch::Approx(sd.cdf(0.25)).margin(3e-3));
}

TEST_CASE("pdf matches the central difference of the cdf") {
    const Distribution outers[] = {kWide, Distribution::gaussian(0.4, 0.9)};
    for (const auto& outer : outers) {
        const auto hd = CrossDepthLaw::halfspace(outer, kStd);
        const auto sd = CrossDepthLaw::simplicial(outer, kStd);
        const auto qt = CrossDepthLaw::quantile(outer, kStd);
        const double h = 1e-6;
        for (int i = 1; i < 20; ++i) {
            const double z = 0.5 * i / 20.0 - 0.0125;
            const double dhd = (hd.cdf(z + h) - hd.cdf(z - h)) / (2.0 * h);
            CHECK(hd.pdf(z) == Catch::Approx(dhd).margin(1e-6 * std::max(1.0, dhd)));
            const double dsd = (sd.cdf(z + h) - sd.cdf(z - h)) / (2.0 * h);
            CHECK(sd.pdf(z) == Catch::Approx(dsd).margin(1e-6 * std::max(1.0, dsd)));
            const double zq = 2.0 * z;
            const double dqt = (qt.cdf(zq + h) - qt.cdf(zq - h)) / (2.0 * h);
            CHECK(qt.pdf(zq) == Catch::Approx(dqt).margin(1e-6 * std::max(1.0, dqt)));
        }
    }
}

TEST_CASE("halfspace cdf decomposes through the quantile-transform cdf") {
    const auto hd = CrossDepthLaw::halfspace(kWide, kStd);
    const auto qt = CrossDepthLaw::quantile(kWide, kStd);
    for (int i = 1; i < 50; ++i) {
        const double z = 0.5 * i / 50.0;
        CHECK(hd.cdf(z) == Catch::Approx(1.0 + qt.cdf(z) - qt.cdf(1.0 - z)).margin(1e-10));
    }
}

TEST_CASE("simplicial cdf is the halfspace cdf after the change of variable") {
    // SD = 2 HD (1 - HD) maps {HD <= w} onto {SD <= 2w(1-w)}
    const auto hd = CrossDepthLaw::halfspace(kWide, kStd);
    const auto sd = CrossDepthLaw::simplicial(kWide, kStd);
    for (int i = 1; i < 50; ++i) {
        const double w = 0.5 * i / 50.0;
        CHECK(sd.cdf(2.0 * w * (1.0 - w)) == Catch::Approx(hd.cdf(w)).margin(1e-10));
    }
}

TEST_CASE("cross laws are invariant under joint affine maps of the parents") {
    const double as[] = {2.0, -1.0, -0.5};
    const double bs[] = {0.0, 3.0};
    for (double a : as) {
        for (double b : bs) {
            const auto outer_t = affine_transform(kWide, a, b);
            const auto inner_t = affine_transform(kStd, a, b);
            for (DepthKind kind : {DepthKind::halfspace, DepthKind::simplicial, DepthKind::quantile}) {
                const CrossDepthLaw orig(kind, kWide, kStd);
                const CrossDepthLaw mapped(kind, outer_t, inner_t);
                const double hi = kind == DepthKind::quantile ? 1.0 : 0.5;
                for (int i = 1; i < 25; ++i) {
                    const double z = hi * i / 25.0;
                    CHECK(mapped.cdf(z) == Catch::Approx(orig.cdf(z)).margin(1e-10));
                }
            }
        }
    }
}

TEST_CASE("bounded-direction pdfs integrate to one") {
    // outer lighter-tailed than inner keeps the density ratio bounded
    const auto hd = CrossDepthLaw::halfspace(kStd, kWide);
    const double hd_mass = integrate_adaptive([&](double z) { return hd.pdf(z); }, 0.0, 0.5, 1e-9, 40000);
    CHECK(hd_mass == Catch::Approx(1.0).margin(1e-7));

    const auto qt = CrossDepthLaw::quantile(kStd, kWide);
    const double qt_mass = integrate_adaptive([&](double z) { return qt.pdf(z); }, 0.0, 1.0, 1e-9, 40000);
    CHECK(qt_mass == Catch::Approx(1.0).margin(1e-7));

    // simplicial in the substituted variable y = sqrt(1-2z)
    const auto sd = CrossDepthLaw::simplicial(kStd, kWide);
    const double sd_mass = integrate_adaptive(
        [&](double y) {
            const double r = 0.5 * y;
            return 0.5 * (sd.density_ratio(0.5 - r) + sd.density_ratio(0.5 + r));
        },
        0.0, 1.0, 1e-9, 40000);
    CHECK(sd_mass == Catch::Approx(1.0).margin(1e-7));
}

TEST_CASE("pdf error paths") {
    const auto sd = CrossDepthLaw::simplicial(kWide, kStd);
    CHECK_THROWS_AS(sd.pdf(0.5), singularity_error);

    // an inner law whose quantile lands in a zero-density region triggers
    // the underflow guard (stub law, only the error path matters)
    const auto inner = Distribution::custom(
        [](double x) { return x < 0.1 ? 0.0 : 1.0 / 0.9; },
        [](double x) { return std::clamp(x, 0.0, 1.0); },
        [](double u) { return u; }, Interval{0.0, 1.0}, "gapped");
    const auto hd = CrossDepthLaw::halfspace(kStd, inner);
    CHECK_THROWS_AS(hd.pdf(0.05), singularity_error);
}
