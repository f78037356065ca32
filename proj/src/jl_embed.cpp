#include "lpdev/jl_embed.hpp"

#include <cmath>
#include <limits>

#include "lpdev/parallel.hpp"

namespace lpdev::jl {

namespace {
const double kPsi2Floor = std::sqrt(1.0 / std::log(2.0));
}

std::pair<double, double> distortion_constants(
    const lp::Exponent& p, double k_psi2,
    const deviation::FittedConstants& fitted) {
    require(k_psi2 >= kPsi2Floor - 1e-12,
            "distortion_constants: K below the unit-variance floor 1/sqrt(ln 2)");
    if (p.regime == lp::Exponent::Regime::low)
        return {fitted.norm_c_lower * std::pow(k_psi2, -3.0), 1.0};
    if (p.regime == lp::Exponent::Regime::boundary) return {1.0, 1.0};
    return {1.0, fitted.norm_c_upper * k_psi2};
}

EmbeddingPlan plan_dimension(Index n_points, double epsilon, double target_failure,
                             const lp::Exponent& p, double k_psi2,
                             const deviation::FittedConstants& fitted,
                             double c_p_jl) {
    require(n_points >= 2, "plan_dimension: need N >= 2");
    require(epsilon > 0.0 && epsilon < 1.0, "plan_dimension: eps outside (0,1)");
    require(target_failure > 0.0 && target_failure < 1.0,
            "plan_dimension: failure target outside (0,1)");
    require(c_p_jl > 0.0, "plan_dimension: C_p must be positive");
    EmbeddingPlan plan;
    plan.p = p.p;
    plan.k_psi2 = k_psi2;
    plan.n_points = n_points;
    plan.epsilon = epsilon;
    plan.target_failure = target_failure;
    plan.c_p_jl = c_p_jl;
    plan.constants = fitted;
    // regime table inline: planning is allowed with synthetic K (e.g. K = 1
    // benchmarks), unlike distortion_constants which enforces the
    // unit-variance floor
    if (p.regime == lp::Exponent::Regime::low) {
        plan.d_p = fitted.norm_c_lower * std::pow(k_psi2, -3.0);
        plan.big_d_p = 1.0;
    } else if (p.regime == lp::Exponent::Regime::boundary) {
        plan.d_p = plan.big_d_p = 1.0;
    } else {
        plan.d_p = 1.0;
        plan.big_d_p = fitted.norm_c_upper * k_psi2;
    }
    const double base = std::pow(plan.d_p, -2.0) * c_p_jl *
                        std::pow(k_psi2, 8.0 * p.p + 8.0) *
                        std::log(static_cast<double>(n_points)) *
                        std::log(2.0 / target_failure) / (epsilon * epsilon);
    plan.m = static_cast<Index>(std::ceil(std::pow(base, 1.0 / (2.0 * p.beta))));
    if (plan.m < 1) plan.m = 1;
    return plan;
}

double calibrated_jl_constant(double c_p_dev, double multiplier) {
    require(c_p_dev > 0.0 && multiplier > 0.0,
            "calibrated_jl_constant: inputs must be positive");
    const double v = multiplier * c_p_dev;
    return v * v;
}

complexity::PointSet embed(const ensembles::MatrixSample& A,
                           const complexity::PointSet& T, const lp::Exponent& p) {
    require(A.cols == T.dim(), "embed: matrix columns must match point dimension");
    const double scale = std::pow(static_cast<double>(A.rows), -1.0 / p.p);
    Mat out(T.count(), A.rows);
    parallel_for(T.count(), [&](Index i) {
        out.row(i) =
            (scale * (A.entries * T.points.row(i).transpose())).transpose();
    });
    return complexity::make_point_set(std::move(out), T.labels);
}

DistortionReport distortion_report(const complexity::PointSet& T,
                                   const complexity::PointSet& embedded,
                                   const lp::Exponent& p,
                                   const EmbeddingPlan& plan) {
    require(T.count() == embedded.count(),
            "distortion_report: point counts must match");
    DistortionReport report;
    report.lower_edge = plan.d_p * (1.0 - plan.epsilon);
    report.upper_edge = plan.big_d_p * (1.0 + plan.epsilon);
    report.min_ratio = std::numeric_limits<double>::infinity();
    report.max_ratio = 0.0;
    for (Index i = 0; i < T.count(); ++i) {
        for (Index j = i + 1; j < T.count(); ++j) {
            const double src = (T.points.row(i) - T.points.row(j)).norm();
            if (src <= 0.0) {
                ++report.skipped_pairs;
                continue;
            }
            const Vec diff =
                (embedded.points.row(i) - embedded.points.row(j)).transpose();
            const double ratio = lp::lp_norm(diff, p) / src;
            report.ratios.push_back(ratio);
            report.min_ratio = std::min(report.min_ratio, ratio);
            report.max_ratio = std::max(report.max_ratio, ratio);
            ++report.pair_count;
            if (ratio < report.lower_edge || ratio > report.upper_edge)
                ++report.violations;
        }
    }
    if (report.pair_count == 0) report.min_ratio = 0.0;
    return report;
}

}  // namespace lpdev::jl
