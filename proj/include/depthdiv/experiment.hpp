#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "depthdiv/chain_lp.hpp"
#include "depthdiv/depth.hpp"
#include "depthdiv/distribution.hpp"
#include "depthdiv/divergence.hpp"
#include "depthdiv/io.hpp"

namespace depthdiv {

struct ExperimentConfig {
    Distribution dist_p = Distribution::gaussian(0.0, 1.0);
    Distribution dist_q = Distribution::gaussian(0.0, 1.5);
    std::size_t n = 1000;
    std::uint64_t seed = 17;
    double l_raw = 4.0;
    double l_depth = 20.0;
    std::vector<std::size_t> refinement_factors = {2, 4};
    std::size_t histogram_bins = 20;

    void validate() const {
        if (n < 2) throw std::invalid_argument("ExperimentConfig: n must be >= 2");
        if (!(l_raw > 0.0) || !(l_depth > 0.0))
            throw std::invalid_argument("ExperimentConfig: Lipschitz parameters must be > 0");
        for (std::size_t f : refinement_factors)
            if (f < 1) throw std::invalid_argument("ExperimentConfig: refinement factors must be >= 1");
        if (histogram_bins < 1) throw std::invalid_argument("ExperimentConfig: histogram_bins must be >= 1");
    }
};

// All estimates from one seeded run. "forward" rows estimate D~(P||Q), i.e.
// they transform against the Q-sample; "backward" rows estimate D~(Q||P).
struct ExperimentReport {
    double ground_truth_tvd = 0.0;
    double raw_lvtvd = 0.0;
    InducedDivergenceResult hd{};
    InducedDivergenceResult sd{};
    double qt_forward = 0.0;
    double qt_backward = 0.0;
    std::map<std::size_t, InducedDivergenceResult> refined;  // factor -> estimates
    InducedDivergenceResult one_sided{};
    ExperimentConfig config;
    std::uint64_t seed_x = 0;
    std::uint64_t seed_y = 0;
};

// The x-sample draws with the config seed, the y-sample with seed+1.
inline std::pair<std::uint64_t, std::uint64_t> experiment_seeds(std::uint64_t seed) {
    return {seed, seed + 1};
}

// Full seeded pipeline: sample P and Q, transform each sample against both
// empirical references, run every estimator variant, and record the
// quadrature ground truth. Deterministic in the config.
inline ExperimentReport run_reference_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport rep;
    rep.config = cfg;
    std::tie(rep.seed_x, rep.seed_y) = experiment_seeds(cfg.seed);

    const SortedSample xs = sample(cfg.dist_p, cfg.n, rep.seed_x);
    const SortedSample ys = sample(cfg.dist_q, cfg.n, rep.seed_y);

    rep.ground_truth_tvd = tvd_between_densities(cfg.dist_p, cfg.dist_q);
    rep.raw_lvtvd = lvtvd_two_sample(xs, ys, cfg.l_raw).objective;

    auto depth_pair_estimate = [&](DepthKind kind, const SortedSample& ref) {
        // both samples transformed against the same empirical reference;
        // the self-transform side plays the role of the reference law draws
        const SortedSample dx = transform_sample(xs, ref, kind).to_sample();
        const SortedSample dy = transform_sample(ys, ref, kind).to_sample();
        return lvtvd_two_sample(dx, dy, cfg.l_depth).objective;
    };
    rep.hd.forward = depth_pair_estimate(DepthKind::halfspace, ys);
    rep.hd.backward = depth_pair_estimate(DepthKind::halfspace, xs);
    rep.hd.symmetrized = 0.5 * (rep.hd.forward + rep.hd.backward);
    rep.sd.forward = depth_pair_estimate(DepthKind::simplicial, ys);
    rep.sd.backward = depth_pair_estimate(DepthKind::simplicial, xs);
    rep.sd.symmetrized = 0.5 * (rep.sd.forward + rep.sd.backward);
    rep.qt_forward = depth_pair_estimate(DepthKind::quantile, ys);
    rep.qt_backward = depth_pair_estimate(DepthKind::quantile, xs);

    // refined grids replace the self-transform side of the halfspace pairs
    const SortedSample hd_x_in_q = transform_sample(xs, ys, DepthKind::halfspace).to_sample();
    const SortedSample hd_y_in_p = transform_sample(ys, xs, DepthKind::halfspace).to_sample();
    for (std::size_t factor : cfg.refinement_factors) {
        const std::size_t m = 2 * ((factor * cfg.n) / 2);  // construction needs an even grid
        const SortedSample grid = refined_uniform_sample(m, 0.5);
        InducedDivergenceResult r{};
        r.forward = lvtvd_two_sample(hd_x_in_q, grid, cfg.l_depth).objective;
        r.backward = lvtvd_two_sample(hd_y_in_p, grid, cfg.l_depth).objective;
        r.symmetrized = 0.5 * (r.forward + r.backward);
        rep.refined[factor] = r;
    }

    rep.one_sided.forward = lvtvd_one_sided_uniform(hd_x_in_q, 0.0, 0.5, cfg.l_depth).objective;
    rep.one_sided.backward = lvtvd_one_sided_uniform(hd_y_in_p, 0.0, 0.5, cfg.l_depth).objective;
    rep.one_sided.symmetrized = 0.5 * (rep.one_sided.forward + rep.one_sided.backward);
    return rep;
}

// --- serialization -----------------------------------------------------------

inline json config_to_json(const ExperimentConfig& cfg) {
    return json{{"distP", descriptor_to_json(cfg.dist_p)},
                {"distQ", descriptor_to_json(cfg.dist_q)},
                {"n", cfg.n},
                {"seed", cfg.seed},
                {"l_raw", cfg.l_raw},
                {"l_depth", cfg.l_depth},
                {"refinement_factors", cfg.refinement_factors},
                {"histogram_bins", cfg.histogram_bins}};
}

inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("distP")) cfg.dist_p = distribution_from_json(j.at("distP"));
    if (j.contains("distQ")) cfg.dist_q = distribution_from_json(j.at("distQ"));
    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("l_raw")) cfg.l_raw = j.at("l_raw").get<double>();
    if (j.contains("l_depth")) cfg.l_depth = j.at("l_depth").get<double>();
    if (j.contains("refinement_factors"))
        cfg.refinement_factors = j.at("refinement_factors").get<std::vector<std::size_t>>();
    if (j.contains("histogram_bins")) cfg.histogram_bins = j.at("histogram_bins").get<std::size_t>();
    cfg.validate();
    return cfg;
}

inline json triple_to_json(const InducedDivergenceResult& r) {
    return json{{"forward", r.forward}, {"backward", r.backward}, {"symmetrized", r.symmetrized}};
}

inline InducedDivergenceResult triple_from_json(const json& j) {
    return {j.at("forward").get<double>(), j.at("backward").get<double>(),
            j.at("symmetrized").get<double>()};
}

inline json report_to_json(const ExperimentReport& rep) {
    json refined = json::object();
    for (const auto& [factor, r] : rep.refined) refined[std::to_string(factor)] = triple_to_json(r);
    return json{{"ground_truth_tvd", rep.ground_truth_tvd},
                {"raw_lvtvd", rep.raw_lvtvd},
                {"hd", triple_to_json(rep.hd)},
                {"sd", triple_to_json(rep.sd)},
                {"qt", json{{"forward", rep.qt_forward}, {"backward", rep.qt_backward}}},
                {"refined", refined},
                {"one_sided", triple_to_json(rep.one_sided)},
                {"config", config_to_json(rep.config)},
                {"seeds", json{{"x", rep.seed_x}, {"y", rep.seed_y}}}};
}

inline ExperimentReport report_from_json(const json& j) {
    ExperimentReport rep;
    rep.ground_truth_tvd = j.at("ground_truth_tvd").get<double>();
    rep.raw_lvtvd = j.at("raw_lvtvd").get<double>();
    rep.hd = triple_from_json(j.at("hd"));
    rep.sd = triple_from_json(j.at("sd"));
    rep.qt_forward = j.at("qt").at("forward").get<double>();
    rep.qt_backward = j.at("qt").at("backward").get<double>();
    for (const auto& [key, val] : j.at("refined").items())
        rep.refined[static_cast<std::size_t>(std::stoul(key))] = triple_from_json(val);
    rep.one_sided = triple_from_json(j.at("one_sided"));
    rep.config = config_from_json(j.at("config"));
    rep.seed_x = j.at("seeds").at("x").get<std::uint64_t>();
    rep.seed_y = j.at("seeds").at("y").get<std::uint64_t>();
    return rep;
}

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

// CSV: one row per estimator variant, columns (name, forward, backward,
// symmetrized). Single-valued rows repeat their value across the columns.
inline void emit_report_csv(const ExperimentReport& rep, std::ostream& out) {
    using detail::fmt17;
    auto row = [&](const std::string& name, double f, double b, double s) {
        out << name << "," << fmt17(f) << "," << fmt17(b) << "," << fmt17(s) << "\n";
    };
    out << "name,forward,backward,symmetrized\n";
    row("ground_truth_tvd", rep.ground_truth_tvd, rep.ground_truth_tvd, rep.ground_truth_tvd);
    row("raw_lvtvd", rep.raw_lvtvd, rep.raw_lvtvd, rep.raw_lvtvd);
    row("hd", rep.hd.forward, rep.hd.backward, rep.hd.symmetrized);
    row("sd", rep.sd.forward, rep.sd.backward, rep.sd.symmetrized);
    row("qt", rep.qt_forward, rep.qt_backward, 0.5 * (rep.qt_forward + rep.qt_backward));
    for (const auto& [factor, r] : rep.refined)
        row("refined_" + std::to_string(factor) + "x", r.forward, r.backward, r.symmetrized);
    row("one_sided", rep.one_sided.forward, rep.one_sided.backward, rep.one_sided.symmetrized);
}

enum class ReportFormat { json, csv };

inline void emit_report(const ExperimentReport& rep, ReportFormat format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report file: " + path);
    if (format == ReportFormat::json)
        out << report_to_json(rep).dump(2) << "\n";
    else
        emit_report_csv(rep, out);
    if (!out) throw std::runtime_error("error while writing report file: " + path);
}

// Histogram over the depth sample's declared support:
// CSV rows (bin_left, bin_right, count, normalized_density).
inline void emit_histogram(const DepthSample& depths, std::size_t bins, std::ostream& out) {
    if (bins < 1) throw std::invalid_argument("emit_histogram: bins must be >= 1");
    const double lo = depths.support.lo, hi = depths.support.hi;
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (double v : depths.values) {
        auto idx = static_cast<std::ptrdiff_t>((v - lo) / width);
        if (idx < 0) idx = 0;
        if (idx >= static_cast<std::ptrdiff_t>(bins)) idx = static_cast<std::ptrdiff_t>(bins) - 1;
        ++counts[static_cast<std::size_t>(idx)];
    }
    const double n = static_cast<double>(depths.values.size());
    out << "bin_left,bin_right,count,normalized_density\n";
    for (std::size_t i = 0; i < bins; ++i) {
        const double left = lo + width * static_cast<double>(i);
        const double right = (i + 1 == bins) ? hi : lo + width * static_cast<double>(i + 1);
        const double density = static_cast<double>(counts[i]) / (n * width);
        out << detail::fmt17(left) << "," << detail::fmt17(right) << "," << counts[i] << ","
            << detail::fmt17(density) << "\n";
    }
}

inline void emit_histogram(const DepthSample& depths, std::size_t bins, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write histogram file: " + path);
    emit_histogram(depths, bins, out);
}

}  // namespace depthdiv
