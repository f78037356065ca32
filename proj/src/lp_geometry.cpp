#include "lpdev/lp_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpdev/rng.hpp"
#include "lpdev/stats.hpp"

namespace lpdev::lp {

double dual_ball_radius(Index m, const Exponent& p) {
    require(m >= 1, "dual_ball_radius: m must be positive");
    if (p.p <= 2.0) return std::pow(static_cast<double>(m), 1.0 / p.p - 0.5);
    return 1.0;
}

namespace {

bool has_closed_form(const MixedNormSpec& spec) {
    if (spec.p.p == 2.0) return true;  // unit variance rows
    return spec.dist.kind() == ensembles::Kind::gaussian;
}

NormEstimate closed_form_norm(const MixedNormSpec& spec, const Vec& x) {
    const double l2 = x.norm();
    double value = l2;
    if (spec.p.p != 2.0)
        value = l2 * std::pow(stats::gaussian_abs_moment(spec.p.p), 1.0 / spec.p.p);
    return {value, value, value};
}

NormEstimate monte_carlo_norm(const MixedNormSpec& spec, const Vec& x,
                              std::uint64_t seed) {
    const int trials = spec.trials;
    require(trials >= 100, "row_lp_norm: need at least 100 trials");
    const auto n = static_cast<std::uint32_t>(x.size());
    std::vector<double> pth(trials);
    ensembles::SeededSampler row{spec.dist, seed, rng::mix64(0x11C0DE, 0)};
    for (int t = 0; t < trials; ++t) {
        const ensembles::SeededSampler s = row.stream(t);
        double dot = 0.0;
        for (std::uint32_t j = 0; j < n; ++j)
            dot += s.entry(0, j) * x(static_cast<Index>(j));
        pth[t] = pow_abs(dot, spec.p.p);
    }
    const double m0 = stats::mean(pth);
    NormEstimate est;
    est.value = std::pow(m0, 1.0 / spec.p.p);
    // percentile bootstrap on the p-th moment, transformed through ^{1/p}
    const int resamples = 200;
    std::vector<double> boot(resamples);
    for (int r = 0; r < resamples; ++r) {
        double sum = 0.0;
        const std::uint64_t stream = rng::mix64(seed ^ 0xB007, r);
        for (int k = 0; k < trials; ++k) {
            const auto bits = rng::entry_block(0xB007ull, stream,
                                               static_cast<std::uint32_t>(k), 0);
            sum += pth[rng::bounded(bits.lo, trials)];
        }
        boot[r] = std::pow(sum / trials, 1.0 / spec.p.p);
    }
    std::sort(boot.begin(), boot.end());
    est.ci_low = std::min(boot[static_cast<int>(0.025 * (resamples - 1))], est.value);
    est.ci_high = std::max(boot[static_cast<int>(0.975 * (resamples - 1))], est.value);
    return est;
}

}  // namespace

NormEstimate row_lp_norm(const MixedNormSpec& spec, const Vec& x,
                         std::uint64_t seed) {
    require(x.size() >= 1, "row_lp_norm: empty vector");
    require(x.allFinite(), "row_lp_norm: non-finite coordinates");
    if (spec.method == MixedNormSpec::Method::closed_form) {
        require(has_closed_form(spec),
                "row_lp_norm: no closed form for this (kind, p); use monte_carlo");
        return closed_form_norm(spec, x);
    }
    return monte_carlo_norm(spec, x, seed);
}

double norm_equivalence_ratio(const MixedNormSpec& spec, const Vec& x,
                              std::uint64_t seed) {
    const double l2 = x.norm();
    require(l2 > 0.0, "norm_equivalence_ratio: zero vector");
    return row_lp_norm(spec, x, seed).value / l2;
}

namespace {
// lhs <= rhs up to pow rounding
bool leq_tol(double lhs, double rhs) {
    return lhs <= rhs + 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}
}  // namespace

std::pair<bool, bool> power_triangle_check(double a, double b, double r) {
    require(a >= 0.0 && b >= 0.0, "power_triangle_check: a, b must be >= 0");
    require(r > 0.0, "power_triangle_check: r must be positive");
    const double sum_pow = std::pow(a + b, r);
    const double pow_sum = std::pow(a, r) + std::pow(b, r);
    const double diff_pow = std::abs(std::pow(a, r) - std::pow(b, r));
    const double pow_diff = std::pow(std::abs(a - b), r);
    if (r <= 1.0)
        return {leq_tol(sum_pow, pow_sum), leq_tol(diff_pow, pow_diff)};
    return {leq_tol(pow_sum, sum_pow), leq_tol(pow_diff, diff_pow)};
}

bool power_difference_check(double a, double b, const Exponent& p) {
    require(a >= 0.0 && b >= 0.0, "power_difference_check: a, b must be >= 0");
    const double gap = std::abs(a - b);
    const double mid = std::abs(std::pow(a, p.p) - std::pow(b, p.p));
    const double lower = std::pow(a, p.p - 1.0) * gap;
    const double upper =
        p.p * gap *
        std::sqrt(std::pow(a, 2.0 * p.p - 2.0) + std::pow(b, 2.0 * p.p - 2.0));
    return leq_tol(lower, mid) && leq_tol(mid, upper);
}

ReverseTriangleRecord reverse_triangle_report(const Vec& x, const Vec& y,
                                              const MixedNormSpec& spec,
                                              std::uint64_t seed) {
    require(x.size() == y.size(), "reverse_triangle_report: dimension mismatch");
    const double xm = row_lp_norm(spec, x, seed).value;
    const double ym = row_lp_norm(spec, y, rng::mix64(seed, 1)).value;
    require(std::abs(xm - 1.0) <= 1e-6 ||
                spec.method == MixedNormSpec::Method::monte_carlo,
            "reverse_triangle_report: x must lie on the mixed-norm unit sphere");
    require(ym > 1.0, "reverse_triangle_report: need ||y|| > 1");
    const Vec yb = y / ym;
    const double denom = (x - y).norm();
    require(denom > 0.0, "reverse_triangle_report: x == y");

    ReverseTriangleRecord rec;
    const Vec u = x - yb;
    const Vec v = y - yb;
    rec.lhs_over_rhs = (u.norm() + v.norm()) / denom;
    if (u.norm() <= 1e-14 || v.norm() <= 1e-14) {
        rec.cos_theta = 1.0;
        rec.sin_theta = 1.0;  // theta = 0 forces x == yb: nothing to prove
        return rec;
    }
    double c = u.dot(v) / (u.norm() * v.norm());
    c = std::clamp(c, -1.0, 1.0);
    rec.cos_theta = c;
    rec.sin_theta = std::sqrt(std::max(0.0, 1.0 - c * c));
    return rec;
}

}  // namespace lpdev::lp
