#include "lpdev/reports.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace lpdev::reports {

namespace {
Json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}
}  // namespace

Json make_envelope(const std::string& command,
                   const std::map<std::string, std::string>& config) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["canonical"] = true;
    j["command"] = command;
    Json cfg;
    for (const auto& [key, value] : config) cfg[key] = value;
    j["config"] = cfg;
    return j;
}

Json to_json(const orlicz::PsiEstimate& est) {
    Json j;
    j["alpha"] = est.alpha;
    j["value"] = est.value;
    j["ci_low"] = est.ci_low;
    j["ci_high"] = finite_or_null(est.ci_high);
    j["sample_count"] = est.sample_count;
    return j;
}

Json to_json(const deviation::TailCurve& curve) {
    Json j;
    j["thresholds"] = curve.thresholds;
    j["empirical"] = curve.empirical;
    j["ci_low"] = curve.ci_low;
    j["ci_high"] = curve.ci_high;
    j["theory"] = curve.theory;
    return j;
}

Json to_json(const deviation::DeviationReport& report, bool include_samples) {
    Json j;
    j["process"] = report.process == deviation::Process::R ? "R" : "X";
    j["spec"] = report.spec_name;
    j["p"] = report.p;
    j["m"] = report.m;
    j["point_set"] = report.point_set_ref;
    j["trials"] = report.trials;
    j["entry_psi2"] = report.entry_psi2;
    j["gamma"] = report.gamma_value;
    j["envelope"] = report.envelope;
    if (report.fitted_psi2) {
        j["fitted_psi2"] = to_json(*report.fitted_psi2);
        j["ratio"] = report.ratio;
    } else {
        j["fitted_psi2"] = nullptr;
        j["ratio"] = nullptr;
    }
    j["seed"] = report.seed;
    if (include_samples) j["sup_samples"] = report.sup_samples;
    return j;
}

Json to_json(const jl::EmbeddingPlan& plan) {
    Json j;
    j["p"] = plan.p;
    j["K"] = plan.k_psi2;
    j["N"] = plan.n_points;
    j["epsilon"] = plan.epsilon;
    j["target_failure"] = plan.target_failure;
    j["c_p_jl"] = plan.c_p_jl;
    j["d_p"] = plan.d_p;
    j["D_p"] = plan.big_d_p;
    j["m"] = plan.m;
    return j;
}

Json to_json(const jl::DistortionReport& report, bool include_ratios) {
    Json j;
    j["pair_count"] = report.pair_count;
    j["skipped_pairs"] = report.skipped_pairs;
    j["min_ratio"] = report.min_ratio;
    j["max_ratio"] = report.max_ratio;
    j["lower_edge"] = report.lower_edge;
    j["upper_edge"] = report.upper_edge;
    j["violations"] = report.violations;
    if (include_ratios) j["ratios"] = report.ratios;
    return j;
}

void write_json(const std::string& path, const Json& payload) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << payload.dump(2) << "\n";
}

void write_tail_csv(const std::string& path, const deviation::TailCurve& curve) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "threshold,empirical,ci_low,ci_high,theory\n";
    char buf[160];
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      curve.thresholds[i], curve.empirical[i], curve.ci_low[i],
                      curve.ci_high[i], curve.theory[i]);
        os << buf;
    }
}

void write_tail_svg(const std::string& path, const deviation::TailCurve& curve) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    const int width = 640, height = 420, margin = 48;
    const auto& xs = curve.thresholds;
    if (xs.empty()) {
        os << "<svg xmlns='http://www.w3.org/2000/svg'/>\n";
        return;
    }
    const double x0 = xs.front(), x1 = std::max(xs.back(), xs.front() + 1e-12);
    const double floor_p = 1e-6;
    auto sx = [&](double x) {
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin);
    };
    auto sy = [&](double pval) {
        const double lp = std::log10(std::max(pval, floor_p));
        return height - margin + lp / 6.0 * (height - 2 * margin);
    };
    auto polyline = [&](const std::vector<double>& ys, const char* color) {
        os << "<polyline fill='none' stroke='" << color << "' points='";
        for (std::size_t i = 0; i < xs.size(); ++i)
            os << sx(xs[i]) << "," << sy(ys[i]) << " ";
        os << "'/>\n";
    };
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
       << "' height='" << height << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<line x1='" << margin << "' y1='" << height - margin << "' x2='"
       << width - margin << "' y2='" << height - margin
       << "' stroke='black'/>\n";
    os << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin
       << "' y2='" << height - margin << "' stroke='black'/>\n";
    polyline(curve.empirical, "#1f77b4");
    polyline(curve.theory, "#d62728");
    os << "<text x='" << width / 2 << "' y='" << height - 12
       << "' font-size='12'>threshold</text>\n";
    os << "<text x='8' y='16' font-size='12'>exceedance (log10, floor 1e-6); "
          "blue empirical, red envelope</text>\n";
    os << "</svg>\n";
}

}  // namespace lpdev::reports
