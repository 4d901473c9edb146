// Command-line front end: sampling, depth transforms, TVD computations,
// LV-TVD estimators and the reference experiment, with CSV/JSON input and
// output. Every subcommand accepts --config <json> (flags override config
// values), --seed and --out.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "depthdiv/depthdiv.hpp"

namespace dd = depthdiv;
using dd::json;

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

json parse_json_text(const std::string& text) { return json::parse(text); }

// Flags win over config-file values; config values win over defaults.
template <typename T>
void fill_from_config(const CLI::Option* opt, const json& cfg, const char* key, T& value) {
    if (opt != nullptr && opt->count() > 0) return;
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << text;
}

dd::Distribution dist_from_arg(const std::string& text) {
    return dd::distribution_from_json(parse_json_text(text));
}

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 17;
    CLI::Option* seed_opt = nullptr;

    json attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON file with this subcommand's parameters");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        seed_opt = cmd->add_option("--seed", seed, "RNG seed");
        return json::object();
    }

    json config() const { return config_path.empty() ? json::object() : load_json_file(config_path); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"univariate statistical depth transforms and depth-induced TVD estimators"};
    app.require_subcommand(1);

    // --- sample ---------------------------------------------------------
    auto* c_sample = app.add_subcommand("sample", "draw a seeded sample from a distribution (CSV out)");
    CommonArgs a_sample;
    a_sample.attach(c_sample);
    std::string sample_dist = R"({"kind":"gaussian","mu":0.0,"sigma":1.0})";
    std::size_t sample_n = 1000;
    auto* o_sample_dist = c_sample->add_option("--dist", sample_dist, "distribution descriptor JSON");
    auto* o_sample_n = c_sample->add_option("--n", sample_n, "sample size");

    // --- transform --------------------------------------------------------
    auto* c_transform = app.add_subcommand("transform", "depth-transform a sample (CSV out)");
    CommonArgs a_transform;
    a_transform.attach(c_transform);
    std::string tr_input, tr_ref_sample, tr_ref_dist, tr_kind = "hd";
    double tr_bandwidth = 1.0;
    auto* o_tr_input = c_transform->add_option("--input", tr_input, "sample CSV to transform");
    auto* o_tr_refs = c_transform->add_option("--ref-sample", tr_ref_sample, "empirical reference CSV");
    auto* o_tr_refd = c_transform->add_option("--ref-dist", tr_ref_dist, "analytic reference descriptor JSON");
    auto* o_tr_kind = c_transform->add_option("--kind", tr_kind, "hd | sd | qt | kd");
    auto* o_tr_bw = c_transform->add_option("--bandwidth", tr_bandwidth, "kernel bandwidth (kd only)");

    // --- tvd-exact --------------------------------------------------------
    auto* c_tvd_exact = app.add_subcommand("tvd-exact", "closed-form Gaussian-Gaussian TVD");
    CommonArgs a_tvd_exact;
    a_tvd_exact.attach(c_tvd_exact);
    std::string te_p = R"({"kind":"gaussian","mu":0.0,"sigma":1.0})";
    std::string te_q = R"({"kind":"gaussian","mu":0.0,"sigma":1.5})";
    auto* o_te_p = c_tvd_exact->add_option("--p", te_p, "Gaussian descriptor JSON");
    auto* o_te_q = c_tvd_exact->add_option("--q", te_q, "Gaussian descriptor JSON");

    // --- tvd-quadrature ---------------------------------------------------
    auto* c_tvd_quad = app.add_subcommand("tvd-quadrature", "TVD between two densities by quadrature");
    CommonArgs a_tvd_quad;
    a_tvd_quad.attach(c_tvd_quad);
    std::string tq_p = R"({"kind":"gaussian","mu":0.0,"sigma":1.0})";
    std::string tq_q = R"({"kind":"gaussian","mu":0.0,"sigma":1.5})";
    double tq_abs_tol = 1e-8;
    auto* o_tq_p = c_tvd_quad->add_option("--p", tq_p, "distribution descriptor JSON");
    auto* o_tq_q = c_tvd_quad->add_option("--q", tq_q, "distribution descriptor JSON");
    auto* o_tq_tol = c_tvd_quad->add_option("--abs-tol", tq_abs_tol, "quadrature absolute tolerance");

    // --- induced-tvd --------------------------------------------------------
    auto* c_induced = app.add_subcommand("induced-tvd", "depth-induced TVD between two analytic laws");
    CommonArgs a_induced;
    a_induced.attach(c_induced);
    std::string in_p = R"({"kind":"gaussian","mu":0.0,"sigma":1.0})";
    std::string in_q = R"({"kind":"gaussian","mu":0.0,"sigma":1.5})";
    std::string in_kind = "hd";
    auto* o_in_p = c_induced->add_option("--p", in_p, "distribution descriptor JSON");
    auto* o_in_q = c_induced->add_option("--q", in_q, "distribution descriptor JSON");
    auto* o_in_kind = c_induced->add_option("--kind", in_kind, "hd | sd | qt");

    // --- lvtvd -----------------------------------------------------------
    auto* c_lvtvd = app.add_subcommand("lvtvd", "two-sample Lipschitz-variational TVD estimate");
    CommonArgs a_lvtvd;
    a_lvtvd.attach(c_lvtvd);
    std::string lv_x, lv_y, lv_dump;
    double lv_l = 4.0;
    auto* o_lv_x = c_lvtvd->add_option("--x", lv_x, "first sample CSV");
    auto* o_lv_y = c_lvtvd->add_option("--y", lv_y, "second sample CSV");
    auto* o_lv_l = c_lvtvd->add_option("--l", lv_l, "Lipschitz parameter");
    c_lvtvd->add_option("--dump-lp", lv_dump, "write the LP instance in debug text form");

    // --- lvtvd-one-sided -----------------------------------------------------
    auto* c_one = app.add_subcommand("lvtvd-one-sided", "one-sided LV-TVD against a known uniform");
    CommonArgs a_one;
    a_one.attach(c_one);
    std::string os_input, os_dump;
    double os_lo = 0.0, os_hi = 0.5, os_l = 20.0;
    auto* o_os_input = c_one->add_option("--input", os_input, "sample CSV inside [lo,hi]");
    auto* o_os_lo = c_one->add_option("--lo", os_lo, "uniform lower endpoint");
    auto* o_os_hi = c_one->add_option("--hi", os_hi, "uniform upper endpoint");
    auto* o_os_l = c_one->add_option("--l", os_l, "Lipschitz parameter");
    c_one->add_option("--dump-lp", os_dump, "write the LP instance in debug text form");

    // --- mmd -------------------------------------------------------------
    auto* c_mmd = app.add_subcommand("mmd", "squared MMD, direct and via kernel depth");
    CommonArgs a_mmd;
    a_mmd.attach(c_mmd);
    std::string mm_x, mm_y;
    double mm_bw = 1.0;
    auto* o_mm_x = c_mmd->add_option("--x", mm_x, "first sample CSV");
    auto* o_mm_y = c_mmd->add_option("--y", mm_y, "second sample CSV");
    auto* o_mm_bw = c_mmd->add_option("--bandwidth", mm_bw, "kernel bandwidth");

    // --- reproduce -----------------------------------------------------------
    auto* c_repro = app.add_subcommand("reproduce", "run the seeded reference experiment");
    CommonArgs a_repro;
    a_repro.attach(c_repro);
    std::string rp_format = "json";
    std::size_t rp_n = 0;
    auto* o_rp_format = c_repro->add_option("--format", rp_format, "json | csv");
    auto* o_rp_n = c_repro->add_option("--n", rp_n, "override sample size");

    // --- histogram ----------------------------------------------------------
    auto* c_hist = app.add_subcommand("histogram", "bin a depth sample (CSV out)");
    CommonArgs a_hist;
    a_hist.attach(c_hist);
    std::string hg_input, hg_kind = "hd";
    std::size_t hg_bins = 20;
    double hg_lo = 0.0, hg_hi = 0.5;
    auto* o_hg_input = c_hist->add_option("--input", hg_input, "depth/sample CSV");
    auto* o_hg_kind = c_hist->add_option("--kind", hg_kind, "declares the support: hd | sd | qt | kd");
    auto* o_hg_bins = c_hist->add_option("--bins", hg_bins, "number of bins");
    auto* o_hg_lo = c_hist->add_option("--lo", hg_lo, "support lower end (overrides --kind)");
    auto* o_hg_hi = c_hist->add_option("--hi", hg_hi, "support upper end (overrides --kind)");

    try {
        app.parse(argc, argv);

        if (c_sample->parsed()) {
            const json cfg = a_sample.config();
            fill_from_config(o_sample_dist, cfg, "dist", sample_dist);
            fill_from_config(o_sample_n, cfg, "n", sample_n);
            fill_from_config(a_sample.seed_opt, cfg, "seed", a_sample.seed);
            const auto s = dd::sample(dist_from_arg(sample_dist), sample_n, a_sample.seed);
            std::ostringstream os;
            dd::write_value_column(os, s.values(), "value");
            write_output(a_sample.out_path, os.str());
        } else if (c_transform->parsed()) {
            const json cfg = a_transform.config();
            fill_from_config(o_tr_input, cfg, "input", tr_input);
            fill_from_config(o_tr_refs, cfg, "ref_sample", tr_ref_sample);
            fill_from_config(o_tr_refd, cfg, "ref_dist", tr_ref_dist);
            fill_from_config(o_tr_kind, cfg, "kind", tr_kind);
            fill_from_config(o_tr_bw, cfg, "bandwidth", tr_bandwidth);
            if (tr_input.empty()) throw std::runtime_error("transform: --input is required");
            if (tr_ref_sample.empty() == tr_ref_dist.empty())
                throw std::runtime_error("transform: give exactly one of --ref-sample / --ref-dist");
            const auto points = dd::read_sample_csv(tr_input);
            const auto kind = dd::depth_kind_from_name(tr_kind);
            dd::DepthSample depths =
                tr_ref_sample.empty()
                    ? dd::transform_sample(points, dist_from_arg(tr_ref_dist), kind)
                    : dd::transform_sample(points, dd::read_sample_csv(tr_ref_sample), kind,
                                           kind == dd::DepthKind::kernel
                                               ? std::optional<dd::KernelSpec>(dd::KernelSpec(tr_bandwidth))
                                               : std::nullopt);
            std::ostringstream os;
            dd::write_value_column(os, depths.values, "depth");
            write_output(a_transform.out_path, os.str());
        } else if (c_tvd_exact->parsed()) {
            const json cfg = a_tvd_exact.config();
            fill_from_config(o_te_p, cfg, "p", te_p);
            fill_from_config(o_te_q, cfg, "q", te_q);
            const json jp = parse_json_text(te_p), jq = parse_json_text(te_q);
            if (jp.at("kind") != "gaussian" || jq.at("kind") != "gaussian")
                throw std::runtime_error("tvd-exact: both descriptors must be gaussian");
            const double v = dd::gaussian_tvd_exact(jp.at("mu"), jp.at("sigma"), jq.at("mu"), jq.at("sigma"));
            write_output(a_tvd_exact.out_path, json{{"value", v}}.dump(2));
        } else if (c_tvd_quad->parsed()) {
            const json cfg = a_tvd_quad.config();
            fill_from_config(o_tq_p, cfg, "p", tq_p);
            fill_from_config(o_tq_q, cfg, "q", tq_q);
            fill_from_config(o_tq_tol, cfg, "abs_tol", tq_abs_tol);
            dd::QuadratureConfig qc;
            qc.abs_tol = tq_abs_tol;
            const double v = dd::tvd_between_densities(dist_from_arg(tq_p), dist_from_arg(tq_q), qc);
            write_output(a_tvd_quad.out_path, json{{"value", v}}.dump(2));
        } else if (c_induced->parsed()) {
            const json cfg = a_induced.config();
            fill_from_config(o_in_p, cfg, "p", in_p);
            fill_from_config(o_in_q, cfg, "q", in_q);
            fill_from_config(o_in_kind, cfg, "kind", in_kind);
            const auto r = dd::induced_tvd(dd::depth_kind_from_name(in_kind), dist_from_arg(in_p),
                                           dist_from_arg(in_q));
            write_output(a_induced.out_path,
                         json{{"forward", r.forward},
                              {"backward", r.backward},
                              {"symmetrized", r.symmetrized},
                              {"config", json{{"p", parse_json_text(in_p)},
                                              {"q", parse_json_text(in_q)},
                                              {"kind", in_kind}}},
                              {"seeds", nullptr}}
                             .dump(2));
        } else if (c_lvtvd->parsed()) {
            const json cfg = a_lvtvd.config();
            fill_from_config(o_lv_x, cfg, "x", lv_x);
            fill_from_config(o_lv_y, cfg, "y", lv_y);
            fill_from_config(o_lv_l, cfg, "l", lv_l);
            if (lv_x.empty() || lv_y.empty()) throw std::runtime_error("lvtvd: --x and --y are required");
            const auto sx = dd::read_sample_csv(lv_x);
            const auto sy = dd::read_sample_csv(lv_y);
            const auto lp = dd::make_two_sample_lp(sx, sy, lv_l);
            if (!lv_dump.empty()) write_output(lv_dump, lp.debug_text());
            const auto sol = dd::solve_chain_lp(lp);
            write_output(a_lvtvd.out_path, json{{"objective", sol.objective}}.dump(2));
        } else if (c_one->parsed()) {
            const json cfg = a_one.config();
            fill_from_config(o_os_input, cfg, "input", os_input);
            fill_from_config(o_os_lo, cfg, "lo", os_lo);
            fill_from_config(o_os_hi, cfg, "hi", os_hi);
            fill_from_config(o_os_l, cfg, "l", os_l);
            if (os_input.empty()) throw std::runtime_error("lvtvd-one-sided: --input is required");
            const auto sz = dd::read_sample_csv(os_input);
            const auto lp = dd::make_one_sided_uniform_lp(sz, os_lo, os_hi, os_l);
            if (!os_dump.empty()) write_output(os_dump, lp.debug_text());
            const auto sol = dd::solve_chain_lp(lp);
            write_output(a_one.out_path, json{{"objective", sol.objective}}.dump(2));
        } else if (c_mmd->parsed()) {
            const json cfg = a_mmd.config();
            fill_from_config(o_mm_x, cfg, "x", mm_x);
            fill_from_config(o_mm_y, cfg, "y", mm_y);
            fill_from_config(o_mm_bw, cfg, "bandwidth", mm_bw);
            if (mm_x.empty() || mm_y.empty()) throw std::runtime_error("mmd: --x and --y are required");
            const auto sx = dd::read_sample_csv(mm_x);
            const auto sy = dd::read_sample_csv(mm_y);
            const dd::KernelSpec kernel(mm_bw);
            write_output(a_mmd.out_path, json{{"direct", dd::mmd_squared_direct(sx, sy, kernel)},
                                              {"via_depth", dd::mmd_squared_via_depth(sx, sy, kernel)}}
                                             .dump(2));
        } else if (c_repro->parsed()) {
            const json raw = a_repro.config();
            dd::ExperimentConfig cfg =
                a_repro.config_path.empty() ? dd::ExperimentConfig{} : dd::config_from_json(raw);
            if (a_repro.seed_opt->count() > 0) cfg.seed = a_repro.seed;
            if (o_rp_n->count() > 0) cfg.n = rp_n;
            fill_from_config(o_rp_format, raw, "format", rp_format);
            const auto rep = dd::run_reference_experiment(cfg);
            std::ostringstream os;
            if (rp_format == "csv")
                dd::emit_report_csv(rep, os);
            else
                os << dd::report_to_json(rep).dump(2) << "\n";
            write_output(a_repro.out_path, os.str());
        } else if (c_hist->parsed()) {
            const json cfg = a_hist.config();
            fill_from_config(o_hg_input, cfg, "input", hg_input);
            fill_from_config(o_hg_kind, cfg, "kind", hg_kind);
            fill_from_config(o_hg_bins, cfg, "bins", hg_bins);
            fill_from_config(o_hg_lo, cfg, "lo", hg_lo);
            fill_from_config(o_hg_hi, cfg, "hi", hg_hi);
            if (hg_input.empty()) throw std::runtime_error("histogram: --input is required");
            const auto kind = dd::depth_kind_from_name(hg_kind);
            dd::Interval support = dd::detail::depth_support(kind);
            if (o_hg_lo->count() > 0 || cfg.contains("lo")) support.lo = hg_lo;
            if (o_hg_hi->count() > 0 || cfg.contains("hi")) support.hi = hg_hi;
            const auto s = dd::read_sample_csv(hg_input);
            dd::DepthSample depths{s.values(), support, kind, "cli"};
            std::ostringstream os;
            dd::emit_histogram(depths, hg_bins, os);
            write_output(a_hist.out_path, os.str());
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
