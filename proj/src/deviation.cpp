#include "lpdev/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpdev/parallel.hpp"
#include "lpdev/rng.hpp"
#include "lpdev/stats.hpp"

namespace lpdev::deviation {

namespace {

double lp_norm_of_product(const Mat& A, const Vec& x, const lp::Exponent& p) {
    require(A.cols() == x.size(), "deviation: dimension mismatch");
    return lp::lp_norm(A * x, p);
}

double m_root(Index m, double p) {
    return std::pow(static_cast<double>(m), 1.0 / p);
}

}  // namespace

double deviation_from_row_norm(const Mat& A, const Vec& x, const lp::Exponent& p,
                               double row_lp) {
    require(row_lp >= 0.0, "deviation_from_row_norm: negative row norm");
    return lp_norm_of_product(A, x, p) -
           m_root(A.rows(), p.p) * row_lp;
}

double deviation_from_mean(const Mat& A, const Vec& x, const lp::Exponent& p,
                           double mean_norm) {
    require(mean_norm >= 0.0, "deviation_from_mean: negative mean norm");
    return lp_norm_of_product(A, x, p) - mean_norm;
}

double vector_concentration_tail(double s, const lp::Exponent& p, Index m,
                                 double k_psi2, const FittedConstants& constants) {
    require(s >= 0.0, "vector_concentration_tail: s must be nonnegative");
    require(k_psi2 > 0.0, "vector_concentration_tail: K must be positive");
    require(m >= 1, "vector_concentration_tail: m must be positive");
    const double kp = std::pow(k_psi2, 2.0 * p.p);
    double denom = kp;
    if (p.p < 2.0) denom *= std::pow(static_cast<double>(m), 2.0 / p.p - 1.0);
    return std::min(1.0, 2.0 * std::exp(-constants.c_p_tail * s * s / denom));
}

double bernstein_bound(double t, orlicz::Alpha alpha, double k_psi, const Vec& weights,
                       double c_alpha) {
    require_domain(alpha.value <= 1.0, "bernstein_bound: requires alpha <= 1");
    require(k_psi > 0.0, "bernstein_bound: K must be positive");
    require(c_alpha > 0.0, "bernstein_bound: c_alpha must be positive");
    require(weights.size() >= 1, "bernstein_bound: empty weights");
    require(t >= 0.0, "bernstein_bound: t must be nonnegative");
    const double a = alpha.value;
    const double l2 = weights.squaredNorm();
    const double linf = weights.cwiseAbs().maxCoeff();
    const double quad = t * t / (k_psi * k_psi * l2);
    const double orlz = std::pow(t, a) / (std::pow(k_psi, a) * std::pow(linf, a));
    return std::min(1.0, 2.0 * std::exp(-c_alpha * std::min(quad, orlz)));
}

TailCurve empirical_tail(std::span<const double> samples,
                         std::vector<double> thresholds,
                         const std::function<double(double)>& theory_fn) {
    require(!samples.empty(), "empirical_tail: empty samples");
    require(!thresholds.empty(), "empirical_tail: empty thresholds");
    std::sort(thresholds.begin(), thresholds.end());
    TailCurve curve;
    curve.thresholds = std::move(thresholds);
    const auto n = static_cast<std::int64_t>(samples.size());
    for (double s : curve.thresholds) {
        std::int64_t k = 0;
        for (double v : samples) k += (v >= s);
        curve.empirical.push_back(static_cast<double>(k) / static_cast<double>(n));
        curve.ci_low.push_back(stats::clopper_pearson_lower(k, n, 0.99));
        curve.ci_high.push_back(stats::clopper_pearson_upper(k, n, 0.99));
        curve.theory.push_back(theory_fn ? theory_fn(s) : 0.0);
    }
    return curve;
}

std::vector<double> vector_deviation_samples(
    const ensembles::DistributionSpec& spec, const lp::Exponent& p, Index m,
    Index trials, std::uint64_t seed) {
    require(m >= 1 && trials >= 1, "vector_deviation_samples: bad sizes");
    const double mu_root = std::pow(spec.abs_moment(p.p), 1.0 / p.p);
    const double target = m_root(m, p.p);
    std::vector<double> out(trials);
    const ensembles::SeededSampler base{spec, seed, rng::mix64(0xDE5A, 0)};
    parallel_for(trials, [&](Index t) {
        const ensembles::SeededSampler s = base.stream(t);
        double sum = 0.0;
        for (Index i = 0; i < m; ++i)
            sum += lp::pow_abs(
                s.entry(static_cast<std::uint32_t>(i), 0) / mu_root, p.p);
        out[t] = std::abs(std::pow(sum, 1.0 / p.p) - target);
    });
    return out;
}

double normalized_entry_psi2(const ensembles::DistributionSpec& spec, double p) {
    const auto k = ensembles::theoretical_psi2(spec);
    require(k.has_value(), "normalized_entry_psi2: no closed-form entry psi2");
    return *k / std::pow(spec.abs_moment(p), 1.0 / p);
}

double fit_tail_constant(std::span<const double> samples, const lp::Exponent& p,
                         Index m, double k_psi2, double conf) {
    require(!samples.empty(), "fit_tail_constant: empty samples");
    double denom = std::pow(k_psi2, 2.0 * p.p);
    if (p.p < 2.0) denom *= std::pow(static_cast<double>(m), 2.0 / p.p - 1.0);
    const auto n = static_cast<std::int64_t>(samples.size());
    double c_fit = std::numeric_limits<double>::infinity();
    for (double s : stats::geometric_thresholds(samples)) {
        if (s <= 0.0) continue;
        std::int64_t k = 0;
        for (double v : samples) k += (v >= s);
        const double upper = stats::clopper_pearson_upper(k, n, conf);
        if (upper >= 1.0) continue;
        c_fit = std::min(c_fit, std::log(2.0 / upper) * denom / (s * s));
    }
    return c_fit;
}

DominanceCheck check_tail_dominance(std::span<const double> samples,
                                    const lp::Exponent& p, Index m, double k_psi2,
                                    const FittedConstants& constants, double conf) {
    require(!samples.empty(), "check_tail_dominance: empty samples");
    DominanceCheck out;
    const auto n = static_cast<std::int64_t>(samples.size());
    for (double s : stats::geometric_thresholds(samples)) {
        std::int64_t k = 0;
        for (double v : samples) k += (v >= s);
        const double lower = stats::clopper_pearson_lower(k, n, conf);
        const double theory = vector_concentration_tail(s, p, m, k_psi2, constants);
        if (lower > theory) {
            out.dominated = false;
            out.failed_thresholds.push_back(s);
        }
    }
    return out;
}

namespace {

// Per-point mixed norms ||A_1 x||_{L^p}: closed form where available,
// otherwise a deterministic Monte Carlo estimate on its own stream.
Vec row_norms_for(const ensembles::DistributionSpec& spec,
                  const complexity::PointSet& T, const lp::Exponent& p,
                  std::uint64_t seed) {
    Vec out(T.count());
    lp::MixedNormSpec mixed{spec, p, lp::MixedNormSpec::Method::closed_form, 100000};
    const bool closed = (p.p == 2.0) || spec.kind() == ensembles::Kind::gaussian;
    if (!closed) mixed.method = lp::MixedNormSpec::Method::monte_carlo;
    for (Index i = 0; i < T.count(); ++i) {
        const Vec x = T.points.row(i).transpose();
        out(i) = lp::row_lp_norm(mixed, x, rng::mix64(seed, 0xC0 + i)).value;
    }
    return out;
}

// E||A x||_p per point: exact chi mean for (gaussian, p = 2), otherwise a
// Monte Carlo pre-pass with `factor` times the trial budget on an independent
// stream, so centering noise is uncorrelated with the measured run.
Vec mean_norms_for(const ensembles::DistributionSpec& spec,
                   const complexity::PointSet& T, Index m, const lp::Exponent& p,
                   Index trials, Index factor, std::uint64_t seed) {
    Vec out(T.count());
    if (spec.kind() == ensembles::Kind::gaussian && p.p == 2.0) {
        const double cm = stats::chi_mean(m);
        for (Index i = 0; i < T.count(); ++i)
            out(i) = cm * T.points.row(i).norm();
        return out;
    }
    const Index pre_trials = std::max<Index>(Index(1), trials * factor);
    const ensembles::SeededSampler base{spec, seed, rng::mix64(0x3EA9, 1)};
    const Mat Tt = T.points.transpose();
    std::vector<Vec> sums(pre_trials);
    parallel_for(pre_trials, [&](Index t) {
        const auto A =
            ensembles::sample_matrix(base.stream(t), m, T.dim()).entries;
        const Mat W = A * Tt;  // m x N
        Vec norms(T.count());
        for (Index c = 0; c < W.cols(); ++c) norms(c) = lp::lp_norm(W.col(c), p);
        sums[t] = norms;
    });
    Vec acc = Vec::Zero(T.count());
    for (const auto& v : sums) acc += v;
    return acc / static_cast<double>(pre_trials);
}

}  // namespace

DeviationReport sup_deviation_trials(const ensembles::DistributionSpec& spec,
                                     const complexity::PointSet& T, Index m,
                                     const lp::Exponent& p, Index trials,
                                     std::uint64_t seed, Process process,
                                     const SupDeviationOptions& options) {
    require(m >= 1 && trials >= 1, "sup_deviation_trials: bad sizes");
    DeviationReport report;
    report.process = process;
    report.spec_name = spec.name();
    report.p = p.p;
    report.m = m;
    report.trials = trials;
    report.point_set_ref = options.point_set_ref;
    report.seed = seed;

    Vec centers(T.count());
    if (process == Process::R) {
        centers = m_root(m, p.p) *
                  row_norms_for(spec, T, p, rng::mix64(seed, 0xA0));
    } else {
        centers = mean_norms_for(spec, T, m, p, trials,
                                 options.mean_prepass_factor,
                                 rng::mix64(seed, 0xA1));
    }

    report.sup_samples.resize(trials);
    const ensembles::SeededSampler base{spec, seed, rng::mix64(0x5EDE, 2)};
    const Mat Tt = T.points.transpose();
    parallel_for(trials, [&](Index t) {
        const auto A = ensembles::sample_matrix(base.stream(t), m, T.dim()).entries;
        const Mat W = A * Tt;
        double sup = 0.0;
        for (Index c = 0; c < W.cols(); ++c)
            sup = std::max(sup,
                           std::abs(lp::lp_norm(W.col(c), p) - centers(c)));
        report.sup_samples[t] = sup;
    });

    const auto k = ensembles::theoretical_psi2(spec);
    report.entry_psi2 = k.value_or(0.0);
    const auto gamma = complexity::gaussian_complexity(
        T, options.gamma_trials, rng::mix64(seed, 0x6A));
    report.gamma_value = gamma.value;
    report.envelope = std::pow(report.entry_psi2, 4.0 * p.p + 4.0) *
                      lp::dual_ball_radius(m, p) * gamma.value;

    if (trials >= options.min_trials_for_fit) {
        orlicz::PsiOptions psi_opt;
        psi_opt.bootstrap_seed = rng::mix64(seed, 0xB5);
        report.fitted_psi2 = orlicz::psi_alpha_norm(
            report.sup_samples, orlicz::Alpha(2.0), psi_opt);
        report.ratio = report.envelope > 0.0
                           ? report.fitted_psi2->value / report.envelope
                           : 0.0;
    }
    return report;
}

IncrementReport increment_psi2_report(const ensembles::DistributionSpec& spec,
                                      const Vec& x, const Vec& y, Index m,
                                      const lp::Exponent& p, Index trials,
                                      std::uint64_t seed) {
    require(x.size() == y.size(), "increment_psi2_report: dimension mismatch");
    const double dist = (x - y).norm();
    require(dist > 0.0, "increment_psi2_report: x == y gives a zero process");
    require(trials >= 1000, "increment_psi2_report: need >= 1000 trials for the fit");

    const std::uint64_t row_seed = rng::mix64(seed, 0xA2);
    lp::MixedNormSpec mixed{spec, p, lp::MixedNormSpec::Method::closed_form, 100000};
    if (!(p.p == 2.0 || spec.kind() == ensembles::Kind::gaussian))
        mixed.method = lp::MixedNormSpec::Method::monte_carlo;
    const double row_x = lp::row_lp_norm(mixed, x, row_seed).value;
    const bool y_zero = y.norm() == 0.0;
    const double row_y =
        y_zero ? 0.0 : lp::row_lp_norm(mixed, y, rng::mix64(row_seed, 1)).value;

    std::vector<double> increments(trials);
    const ensembles::SeededSampler base{spec, seed, rng::mix64(0x12C, 3)};
    const double target = m_root(m, p.p);
    parallel_for(trials, [&](Index t) {
        const auto A = ensembles::sample_matrix(
            base.stream(t), m, x.size()).entries;
        const double rx = lp::lp_norm(A * x, p) - target * row_x;
        const double ry = y_zero ? 0.0 : lp::lp_norm(A * y, p) - target * row_y;
        increments[t] = std::abs(rx - ry);
    });

    IncrementReport out;
    out.distance = dist;
    const bool both_unit =
        !y_zero && std::abs(row_x - 1.0) <= 1e-9 && std::abs(row_y - 1.0) <= 1e-9;
    out.envelope_exponent = (y_zero || both_unit) ? 4.0 * p.p : 4.0 * p.p + 4.0;
    const auto entry_k = ensembles::theoretical_psi2(spec);
    require(entry_k.has_value(), "increment_psi2_report: unknown entry psi2");
    const double k = *entry_k;
    out.envelope = std::pow(k, out.envelope_exponent) *
                   lp::dual_ball_radius(m, p) * dist;
    orlicz::PsiOptions psi_opt;
    psi_opt.bootstrap_seed = rng::mix64(seed, 0xB6);
    out.fitted_psi2 = orlicz::psi_alpha_norm(increments, orlicz::Alpha(2.0), psi_opt);
    out.ratio = out.envelope > 0.0 ? out.fitted_psi2.value / out.envelope : 0.0;
    return out;
}

}  // namespace lpdev::deviation
