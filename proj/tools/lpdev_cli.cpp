// Batch front-end: psi-norm estimation, sup-deviation sweeps with held-out
// tail dominance, and l2 -> lp embedding runs. Reports are canonical JSON
// (fixed field order, no timestamps): identical configs and seeds produce
// byte-identical payloads at any --threads setting.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lpdev/complexity.hpp"
#include "lpdev/deviation.hpp"
#include "lpdev/ensembles.hpp"
#include "lpdev/jl_embed.hpp"
#include "lpdev/orlicz.hpp"
#include "lpdev/parallel.hpp"
#include "lpdev/reports.hpp"
#include "lpdev/rng.hpp"
#include "lpdev/stats.hpp"

namespace fs = std::filesystem;
using namespace lpdev;
using reports::Json;

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string default_out_dir() {
    if (const char* env = std::getenv("LPDEV_OUT_DIR")) return env;
    return ".";
}

fs::path ensure_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + dir);
    return p;
}

complexity::PointSet load_or_make_points(const std::string& points_file,
                                         Index synth_n, Index synth_dim,
                                         std::uint64_t seed) {
    if (!points_file.empty()) return complexity::load_point_set_csv(points_file);
    const ensembles::SeededSampler g{ensembles::DistributionSpec::gaussian(),
                                     seed, rng::mix64(0x9075, 0)};
    Mat pts(synth_n, synth_dim);
    for (Index i = 0; i < synth_n; ++i) {
        for (Index j = 0; j < synth_dim; ++j)
            pts(i, j) = g.entry(static_cast<std::uint32_t>(i),
                                static_cast<std::uint32_t>(j));
        pts.row(i) /= pts.row(i).norm();
    }
    return complexity::make_point_set(std::move(pts));
}

struct PsiArgs {
    std::string dist = "gaussian";
    double alpha = 2.0;
    double n = 1e6;
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    int bootstrap = 200;
    std::string format = "json";
};

int run_psi_estimate(const PsiArgs& args, const fs::path& out) {
    const auto spec = ensembles::DistributionSpec::parse(args.dist);
    const auto n = static_cast<Index>(args.n);
    require(n >= 1, "psi-estimate: --n must be at least 1");
    const ensembles::SeededSampler sampler{spec, args.seed, 0};
    const Vec v = ensembles::sample_vector(sampler, n);
    std::vector<double> xs(v.data(), v.data() + v.size());
    orlicz::PsiOptions opt;
    opt.tolerance = args.tolerance;
    opt.bootstrap_resamples = args.bootstrap;
    opt.bootstrap_seed = rng::mix64(args.seed, 0xB007);
    const auto est = orlicz::psi_alpha_norm(xs, orlicz::Alpha(args.alpha), opt);

    const std::map<std::string, std::string> config = {
        {"dist", spec.name()},
        {"alpha", format_double(args.alpha)},
        {"n", std::to_string(n)},
        {"seed", std::to_string(args.seed)},
        {"tolerance", format_double(args.tolerance)},
        {"bootstrap", std::to_string(args.bootstrap)},
    };
    if (args.format == "csv") {
        std::ofstream os(out / "psi_estimate.csv");
        if (!os) throw std::runtime_error("cannot write psi_estimate.csv");
        os << "alpha,value,ci_low,ci_high,sample_count\n";
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%zu\n",
                      est.alpha, est.value, est.ci_low, est.ci_high,
                      est.sample_count);
        os << buf;
    } else {
        Json j = reports::make_envelope("psi-estimate", config);
        j["result"] = reports::to_json(est);
        const auto theory = ensembles::theoretical_psi2(spec);
        if (args.alpha == 2.0 && theory)
            j["closed_form_psi2"] = *theory;
        reports::write_json((out / "psi_estimate.json").string(), j);
    }
    std::cout << "psi_" << args.alpha << "(" << spec.name()
              << ") = " << est.value << "  [" << est.ci_low << ", "
              << est.ci_high << "]  n=" << n << "\n";
    return 0;
}

struct SweepArgs {
    std::string dist = "gaussian";
    std::vector<double> p_grid;
    std::vector<Index> m_grid;
    Index trials = 2000;
    std::uint64_t seed = 0;
    std::string points_file;
    Index synth_n = 50;
    Index synth_dim = 32;
    std::string process = "R";
    bool emit_plot = false;
    bool emit_svg = false;
    double cp_override = 0.0;  // 0: fit on the smallest m
};

std::string cell_name(const std::string& proc, double p, Index m) {
    return "process " + proc + ", p=" + format_double(p) +
           ", m=" + std::to_string(m);
}

int run_deviation_sweep(const SweepArgs& args, const fs::path& out) {
    require(!args.p_grid.empty(), "deviation-sweep: --p grid is empty");
    require(!args.m_grid.empty(), "deviation-sweep: --m grid is empty");
    const auto spec = ensembles::DistributionSpec::parse(args.dist);
    const auto T = load_or_make_points(args.points_file, args.synth_n,
                                       args.synth_dim, args.seed);
    auto m_grid = args.m_grid;
    std::sort(m_grid.begin(), m_grid.end());

    std::vector<std::string> processes;
    if (args.process == "both") {
        processes = {"R", "X"};
    } else {
        require(args.process == "R" || args.process == "X",
                "deviation-sweep: --process must be R, X or both");
        processes = {args.process};
    }

    const std::map<std::string, std::string> config = {
        {"dist", spec.name()},
        {"trials", std::to_string(args.trials)},
        {"seed", std::to_string(args.seed)},
        {"points",
         args.points_file.empty()
             ? "synthetic(" + std::to_string(args.synth_n) + "," +
                   std::to_string(args.synth_dim) + ")"
             : args.points_file},
        {"process", args.process},
    };

    std::vector<std::string> failures;
    Json summary = reports::make_envelope("deviation-sweep", config);
    Json cells = Json::array();

    for (const auto& proc_name : processes) {
        const auto process = proc_name == "R" ? deviation::Process::R
                                              : deviation::Process::X;
        for (double pv : args.p_grid) {
            const lp::Exponent p(pv);
            // One report per grid cell; the envelope constant is fitted on
            // the smallest m and then frozen for the larger cells.
            double c_fit = args.cp_override;
            for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
                const Index m = m_grid[mi];
                deviation::SupDeviationOptions opt;
                opt.point_set_ref = config.at("points");
                const auto report = deviation::sup_deviation_trials(
                    spec, T, m, p, args.trials,
                    rng::mix64(args.seed, rng::mix64(mi, pv * 8 + (process == deviation::Process::R))),
                    process, opt);
                const double psi_env = report.envelope;

                // tail envelope from the fitted psi2 bound:
                // P(sup >= s) <= 2 exp(-s^2 / (C K^{4p+4} rad gamma)^2)
                const auto thresholds =
                    stats::geometric_thresholds(report.sup_samples);
                const auto n_samp =
                    static_cast<std::int64_t>(report.sup_samples.size());
                if (mi == 0 && c_fit <= 0.0) {
                    double c_needed = 0.0;
                    for (double s : thresholds) {
                        if (s <= 0.0) continue;
                        std::int64_t k = 0;
                        for (double v : report.sup_samples) k += (v >= s);
                        const double upper =
                            stats::clopper_pearson_upper(k, n_samp, 0.99);
                        if (upper >= 1.0) continue;
                        c_needed = std::max(
                            c_needed, s / (psi_env * std::sqrt(std::log(2.0 / upper))));
                    }
                    c_fit = c_needed > 0.0 ? c_needed : 1.0;
                }
                const double psi_frozen = c_fit * psi_env;
                auto theory = [&](double s) {
                    if (psi_frozen <= 0.0) return s > 0.0 ? 0.0 : 1.0;
                    return std::min(
                        1.0, 2.0 * std::exp(-s * s / (psi_frozen * psi_frozen)));
                };
                const auto curve = deviation::empirical_tail(
                    report.sup_samples, thresholds, theory);
                bool dominated = true;
                for (std::size_t i = 0; i < curve.thresholds.size(); ++i)
                    if (curve.ci_low[i] > curve.theory[i]) dominated = false;
                if (!dominated)
                    failures.push_back(cell_name(proc_name, pv, m));

                const std::string stem = "deviation_" + proc_name + "_p" +
                                         format_double(pv) + "_m" +
                                         std::to_string(m);
                Json cell = reports::to_json(report, false);
                cell["tail"] = reports::to_json(curve);
                cell["c_fit"] = c_fit;
                cell["dominated"] = dominated;
                reports::write_json((out / (stem + ".json")).string(), cell);
                if (args.emit_plot)
                    reports::write_tail_csv((out / (stem + ".csv")).string(),
                                            curve);
                if (args.emit_svg)
                    reports::write_tail_svg((out / (stem + ".svg")).string(),
                                            curve);
                Json brief;
                brief["cell"] = cell_name(proc_name, pv, m);
                brief["fitted_psi2"] =
                    report.fitted_psi2 ? Json(report.fitted_psi2->value)
                                       : Json(nullptr);
                brief["envelope"] = report.envelope;
                brief["ratio"] = report.fitted_psi2 ? Json(report.ratio)
                                                    : Json(nullptr);
                brief["dominated"] = dominated;
                cells.push_back(brief);
                std::cout << cell_name(proc_name, pv, m) << ": fitted_psi2="
                          << (report.fitted_psi2
                                  ? format_double(report.fitted_psi2->value)
                                  : "n/a")
                          << " envelope=" << format_double(report.envelope)
                          << (dominated ? "" : "  [DOMINANCE FAILURE]") << "\n";
            }
        }
    }
    summary["cells"] = cells;
    summary["dominance_failures"] = failures;
    reports::write_json((out / "sweep_summary.json").string(), summary);
    if (!failures.empty()) {
        std::cerr << "held-out dominance failed for:";
        for (const auto& f : failures) std::cerr << " [" << f << "]";
        std::cerr << "\n";
        return 2;
    }
    return 0;
}

struct JlArgs {
    std::string points_file;
    Index synth_n = 0;
    Index synth_dim = 0;
    double p = 2.0;
    double eps = 0.5;
    double fail = 0.01;
    std::uint64_t seed = 0;
    double k_psi2 = 1.0;
    double cp = 1.0;
    Index repeats = 1;
    bool emit_plot = false;
    bool emit_svg = false;
};

int run_jl(const JlArgs& args, const fs::path& out) {
    require(!args.points_file.empty() || args.synth_n >= 2,
            "jl: need --points or --synthetic");
    const auto T = load_or_make_points(args.points_file, args.synth_n,
                                       args.synth_dim, args.seed);
    require(T.count() >= 2, "jl: need at least two points");
    const lp::Exponent p(args.p);
    deviation::FittedConstants fitted;
    const auto plan = jl::plan_dimension(T.count(), args.eps, args.fail, p,
                                         args.k_psi2, fitted, args.cp);

    const std::map<std::string, std::string> config = {
        {"points", args.points_file.empty()
                       ? "synthetic(" + std::to_string(args.synth_n) + "," +
                             std::to_string(args.synth_dim) + ")"
                       : args.points_file},
        {"p", format_double(args.p)},
        {"eps", format_double(args.eps)},
        {"fail", format_double(args.fail)},
        {"seed", std::to_string(args.seed)},
        {"K", format_double(args.k_psi2)},
        {"cp", format_double(args.cp)},
        {"repeats", std::to_string(args.repeats)},
    };
    Json plan_json = reports::make_envelope("jl", config);
    plan_json["plan"] = reports::to_json(plan);
    reports::write_json((out / "jl_plan.json").string(), plan_json);

    const ensembles::SeededSampler sampler{
        ensembles::DistributionSpec::gaussian(), args.seed,
        rng::mix64(0x31, 0)};
    Index repeats_with_violations = 0;
    Json runs = Json::array();
    std::vector<std::pair<double, double>> ratio_extremes;
    complexity::PointSet last_embedded;
    for (Index r = 0; r < args.repeats; ++r) {
        const auto A =
            ensembles::sample_matrix(sampler.stream(r), plan.m, T.dim());
        const auto embedded = jl::embed(A, T, p);
        const auto report = jl::distortion_report(T, embedded, p, plan);
        repeats_with_violations += (report.violations > 0);
        ratio_extremes.emplace_back(report.min_ratio, report.max_ratio);
        Json jr = reports::to_json(report, false);
        jr["repeat"] = r;
        runs.push_back(jr);
        if (r + 1 == args.repeats) last_embedded = embedded;
    }
    Json dist_json = reports::make_envelope("jl", config);
    dist_json["plan"] = reports::to_json(plan);
    dist_json["repeats"] = args.repeats;
    dist_json["repeats_with_violations"] = repeats_with_violations;
    dist_json["violation_frequency"] =
        static_cast<double>(repeats_with_violations) /
        static_cast<double>(args.repeats);
    dist_json["runs"] = runs;
    reports::write_json((out / "jl_distortion.json").string(), dist_json);
    complexity::save_point_set_csv((out / "jl_embedded.csv").string(),
                                   last_embedded);

    if (args.emit_plot || args.emit_svg) {
        // experiment failure frequency against the planned envelope, over a
        // grid of distortion levels
        std::vector<double> grid;
        for (int i = 1; i <= 16; ++i)
            grid.push_back(args.eps * (0.25 + 0.75 * i / 16.0));
        deviation::TailCurve curve;
        curve.thresholds = grid;
        const double log_n = std::log(static_cast<double>(T.count()));
        for (double e : grid) {
            // a repeat fails at level e when any pair ratio leaves
            // [d_p (1-e), D_p (1+e)]; min/max ratios decide that
            Index bad = 0;
            for (const auto& [mn, mx] : ratio_extremes)
                bad += (mn < plan.d_p * (1.0 - e) || mx > plan.big_d_p * (1.0 + e));
            curve.empirical.push_back(static_cast<double>(bad) /
                                      static_cast<double>(args.repeats));
            const auto n_rep = static_cast<std::int64_t>(args.repeats);
            curve.ci_low.push_back(stats::clopper_pearson_lower(bad, n_rep, 0.99));
            curve.ci_high.push_back(
                stats::clopper_pearson_upper(bad, n_rep, 0.99));
            curve.theory.push_back(std::min(
                1.0,
                2.0 * std::exp(-e * e *
                               std::pow(static_cast<double>(plan.m),
                                        2.0 * p.beta) /
                               (std::pow(plan.d_p, -2.0) * plan.c_p_jl *
                                std::pow(plan.k_psi2, 8.0 * p.p + 8.0) *
                                log_n))));
        }
        if (args.emit_plot)
            reports::write_tail_csv((out / "jl_tail.csv").string(), curve);
        if (args.emit_svg)
            reports::write_tail_svg((out / "jl_tail.svg").string(), curve);
    }
    std::cout << "plan.m = " << plan.m << " (d_p=" << plan.d_p
              << ", D_p=" << plan.big_d_p << "); violations in "
              << repeats_with_violations << "/" << args.repeats
              << " repeats\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lp-norm deviation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global --out/--threads may follow the subcommand
    app.set_config("--config", "", "flat key=value config file");

    int threads = 1;
    std::string out_dir = default_out_dir();
    app.add_option("--threads", threads, "worker thread cap (results identical)");
    app.add_option("--out", out_dir, "output directory");

    PsiArgs psi;
    auto* psi_cmd =
        app.add_subcommand("psi-estimate", "empirical psi_alpha norm of an entry law");
    psi_cmd->add_option("--dist", psi.dist, "entry law");
    psi_cmd->add_option("--alpha", psi.alpha, "Orlicz exponent");
    psi_cmd->add_option("--n", psi.n, "sample count");
    psi_cmd->add_option("--seed", psi.seed, "RNG seed")->required();
    psi_cmd->add_option("--tolerance", psi.tolerance, "bisection tolerance");
    psi_cmd->add_option("--bootstrap", psi.bootstrap, "bootstrap resamples");
    psi_cmd->add_option("--format", psi.format, "json or csv");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand(
        "deviation-sweep", "sup-deviation sweep over a (p, m) grid");
    sweep_cmd->add_option("--dist", sweep.dist, "entry law");
    sweep_cmd->add_option("--p", sweep.p_grid, "p grid")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("--m", sweep.m_grid, "m grid")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("--trials", sweep.trials, "matrix draws per cell");
    sweep_cmd->add_option("--seed", sweep.seed, "RNG seed")->required();
    sweep_cmd->add_option("--points", sweep.points_file, "point set CSV");
    sweep_cmd->add_option("--synthetic-n", sweep.synth_n, "synthetic point count");
    sweep_cmd->add_option("--synthetic-dim", sweep.synth_dim,
                          "synthetic point dimension");
    sweep_cmd->add_option("--process", sweep.process, "R, X or both");
    sweep_cmd->add_flag("--emit-plot", sweep.emit_plot, "write tail CSVs");
    sweep_cmd->add_flag("--emit-svg", sweep.emit_svg, "write SVG charts");
    sweep_cmd->add_option("--cp", sweep.cp_override,
                          "override the fitted envelope constant");

    JlArgs jl_args;
    auto* jl_cmd = app.add_subcommand("jl", "plan and run an l2 -> lp embedding");
    jl_cmd->add_option("--points", jl_args.points_file, "point set CSV");
    jl_cmd->add_option("--synthetic-n", jl_args.synth_n, "synthetic point count");
    jl_cmd->add_option("--synthetic-dim", jl_args.synth_dim,
                       "synthetic point dimension");
    jl_cmd->add_option("--p", jl_args.p, "target norm exponent");
    jl_cmd->add_option("--eps", jl_args.eps, "distortion epsilon");
    jl_cmd->add_option("--fail", jl_args.fail, "failure probability target");
    jl_cmd->add_option("--seed", jl_args.seed, "RNG seed")->required();
    jl_cmd->add_option("--K", jl_args.k_psi2, "entry psi2 for planning");
    jl_cmd->add_option("--cp", jl_args.cp, "planning constant C_p");
    jl_cmd->add_option("--repeats", jl_args.repeats, "independent experiment repeats");
    jl_cmd->add_flag("--emit-plot", jl_args.emit_plot, "write tail CSV");
    jl_cmd->add_flag("--emit-svg", jl_args.emit_svg, "write SVG chart");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage and IO problems share exit 1
    }

    try {
        set_max_threads(threads);
        const auto out = ensure_out_dir(out_dir);
        if (psi_cmd->parsed()) return run_psi_estimate(psi, out);
        if (sweep_cmd->parsed()) return run_deviation_sweep(sweep, out);
        if (jl_cmd->parsed()) return run_jl(jl_args, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
