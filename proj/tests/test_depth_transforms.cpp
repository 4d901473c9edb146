#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "depthdiv/chain_lp.hpp"
#include "depthdiv/depth.hpp"
#include "depthdiv/quadrature.hpp"
#include "support.hpp"

using namespace depthdiv;

namespace {
const double kPhi1 = 0.84134474606854295;  // standard normal cdf at 1
}

TEST_CASE("analytic depth values against the erf oracle") {
    const auto g = Distribution::gaussian(0, 1);
    CHECK(hd_analytic(0.0, g) == Catch::Approx(0.5).margin(1e-14));
    CHECK(hd_analytic(-1e9, g) == Catch::Approx(0.0).margin(1e-300));
    CHECK(hd_analytic(1.0, g) == Catch::Approx(1.0 - kPhi1).epsilon(1e-12));

    CHECK(sd_analytic(0.0, g) == Catch::Approx(0.5).margin(1e-14));
    CHECK(sd_analytic(1e9, g) == Catch::Approx(0.0).margin(1e-300));
    CHECK(sd_analytic(1.0, g) == Catch::Approx(2.0 * kPhi1 * (1.0 - kPhi1)).epsilon(1e-12));

    CHECK(qt_analytic(0.0, g) == Catch::Approx(0.5).margin(1e-14));
    CHECK(qt_analytic(-1e9, g) == Catch::Approx(0.0).margin(1e-300));
    CHECK(qt_analytic(1.0, g) == Catch::Approx(kPhi1).epsilon(1e-12));
}

TEST_CASE("empirical depth hand counts") {
    const auto ref = SortedSample::from_sorted({1, 2, 3, 4});
    CHECK(hd_empirical(0.0, ref) == 0.0);
    CHECK(hd_empirical(2.5, ref) == 0.5);
    CHECK(hd_empirical(2.0, ref) == 0.5);  // min(#{<=2}=2, #{>=2}=3)/4, ties on both sides

    CHECK(sd_empirical(0.0, ref) == 0.0);
    CHECK(sd_empirical(2.5, ref) == 0.5);
    CHECK(sd_empirical(2.0, ref) == 0.5);  // 2 (2/4)(2/4), strict > on the right factor

    CHECK(qt_empirical(4.0, ref) == 1.0);
    CHECK(qt_empirical(0.0, ref) == 0.0);
    CHECK(qt_empirical(2.5, ref) == 0.5);
}

TEST_CASE("kernel depth") {
    const KernelSpec k(1.0);
    CHECK(kd_empirical(3.0, SortedSample::from_sorted({3.0}), k) == 1.0);
    CHECK(kd_empirical(1.0, SortedSample::from_sorted({0.0, 2.0}), k) ==
          Catch::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(kd_empirical(100.0, SortedSample::from_sorted({0.0, 2.0}), k) < 1e-10);
}

TEST_CASE("sd = 2 hd (1 - hd) on a grid") {
    const auto g = Distribution::gaussian(0.3, 1.7);
    for (int i = 0; i <= 1000; ++i) {
        const double x = -8.0 + 16.0 * i / 1000.0;
        const double h = hd_analytic(x, g);
        CHECK(sd_analytic(x, g) == Catch::Approx(2.0 * h * (1.0 - h)).margin(1e-14));
    }
}

TEST_CASE("halfspace depth of own draws is U(0,1/2)") {
    const auto g = Distribution::gaussian(0, 1);
    const auto xs = sample(g, 100000, 2024);
    const auto depths = transform_sample(xs, g, DepthKind::halfspace);
    const double ks = testsupport::ks_statistic(depths.values, [](double z) {
        return std::clamp(2.0 * z, 0.0, 1.0);
    });
    CHECK(ks < 1.95 / std::sqrt(100000.0));
}

TEST_CASE("twice the simplicial depth of own draws is Beta(1,1/2)") {
    const auto g = Distribution::gaussian(0, 1);
    const auto xs = sample(g, 100000, 2024);
    const auto depths = transform_sample(xs, g, DepthKind::simplicial);
    std::vector<double> doubled;
    doubled.reserve(depths.values.size());
    for (double v : depths.values) doubled.push_back(2.0 * v);
    const double ks = testsupport::ks_statistic(doubled, [](double t) {
        return 1.0 - std::sqrt(std::max(0.0, 1.0 - std::min(t, 1.0)));
    });
    CHECK(ks < 1.95 / std::sqrt(100000.0));
}

TEST_CASE("depth moments by quadrature against the closed forms") {
    const auto g = Distribution::gaussian(0, 1);
    auto moment = [&](auto&& depth, int m) {
        auto f = [&](double x) { return std::pow(depth(x, g), m) * g.pdf(x); };
        // the halfspace integrand has a kink at the median; split there
        return integrate_adaptive(f, -40.0, 0.0, 5e-13, 40000) +
               integrate_adaptive(f, 0.0, 40.0, 5e-13, 40000);
    };
    for (int m = 1; m <= 4; ++m) {
        CHECK(moment([](double x, const Distribution& d) { return hd_analytic(x, d); }, m) ==
              Catch::Approx(std::pow(2.0, -m) / (m + 1.0)).margin(1e-9));
    }
    const double hd1 = moment([](double x, const Distribution& d) { return hd_analytic(x, d); }, 1);
    const double hd2 = moment([](double x, const Distribution& d) { return hd_analytic(x, d); }, 2);
    CHECK(hd2 - hd1 * hd1 == Catch::Approx(1.0 / 48.0).margin(1e-9));

    const double sd1 = moment([](double x, const Distribution& d) { return sd_analytic(x, d); }, 1);
    const double sd2 = moment([](double x, const Distribution& d) { return sd_analytic(x, d); }, 2);
    CHECK(sd1 == Catch::Approx(1.0 / 3.0).margin(1e-9));
    CHECK(sd2 - sd1 * sd1 == Catch::Approx(1.0 / 45.0).margin(1e-9));
}

TEST_CASE("simplicial depth law first-order dominates the halfspace law") {
    int interior_equalities = 0;
    for (int i = 0; i <= 1000; ++i) {
        const double z = 0.5 * i / 1000.0;
        const double f_sd = 1.0 - std::sqrt(1.0 - 2.0 * z);
        const double f_hd = 2.0 * z;
        CHECK(f_sd <= f_hd + 1e-15);
        if (i > 0 && i < 1000 && f_sd == f_hd) ++interior_equalities;
    }
    CHECK(interior_equalities == 0);
}

TEST_CASE("empirical transforms are invariant under monotone affine maps") {
    Xoshiro256PlusPlus rng(7);
    auto map_sample = [](const SortedSample& s, double a, double bb) {
        std::vector<double> out;
        out.reserve(s.size());
        for (double v : s.values()) out.push_back(a * v + bb);
        return SortedSample::from_values(std::move(out));
    };
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> raw(37);
        for (auto& v : raw) v = 4.0 * rng.uniform_open01() - 2.0;
        const auto distinct = SortedSample::from_values(raw);
        raw[5] = raw[11];  // force a tie
        const auto tied = SortedSample::from_values(raw);
        const double a_pos = 0.5 + 3.0 * rng.uniform_open01();
        const double b = 10.0 * rng.uniform_open01() - 5.0;

        // a > 0: pointwise exact, including at ties
        const auto tied_pos = map_sample(tied, a_pos, b);
        for (double x : tied.values()) {
            CHECK(hd_empirical(a_pos * x + b, tied_pos) == hd_empirical(x, tied));
            CHECK(sd_empirical(a_pos * x + b, tied_pos) == sd_empirical(x, tied));
        }
        // a < 0: the transformed depth multiset matches the original.
        // Halfspace counts ties on both sides, so even tied samples match;
        // the simplicial tie convention is one-sided, so its statement is
        // the almost-sure one over distinct values.
        const auto tied_neg = map_sample(tied, -a_pos, b);
        CHECK(transform_sample(tied, tied, DepthKind::halfspace).values ==
              transform_sample(tied_neg, tied_neg, DepthKind::halfspace).values);
        const auto distinct_neg = map_sample(distinct, -a_pos, b);
        for (DepthKind kind : {DepthKind::halfspace, DepthKind::simplicial}) {
            CHECK(transform_sample(distinct, distinct, kind).values ==
                  transform_sample(distinct_neg, distinct_neg, kind).values);
        }
    }
}

TEST_CASE("self transforms produce the exact uniform grids") {
    const auto g = Distribution::gaussian(0, 1);
    for (std::size_t n = 2; n <= 64; n += 2) {
        const auto xs = sample(g, n, 1000 + n);
        const auto qt = transform_sample(xs, xs, DepthKind::quantile);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(qt.values[i] == static_cast<double>(i + 1) / static_cast<double>(n));
        }
        const auto hd = transform_sample(xs, xs, DepthKind::halfspace);
        std::multiset<double> expected;
        for (std::size_t k = 1; k <= n / 2; ++k) {
            const double v = static_cast<double>(k) / static_cast<double>(n);
            expected.insert(v);
            expected.insert(v);
        }
        CHECK(std::multiset<double>(hd.values.begin(), hd.values.end()) == expected);
    }
}

TEST_CASE("transform against an analytic reference stays in range") {
    const auto g = Distribution::gaussian(0, 1);
    const auto xs = sample(Distribution::gaussian(2, 3), 500, 9);
    const auto hd = transform_sample(xs, g, DepthKind::halfspace);
    CHECK(hd.support.lo == 0.0);
    CHECK(hd.support.hi == 0.5);
    for (double v : hd.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 0.5);
    }
    CHECK(std::is_sorted(hd.values.begin(), hd.values.end()));
}
