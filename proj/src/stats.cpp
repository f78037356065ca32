#include "lpdev/stats.hpp"

#include <unsupported/Eigen/SpecialFunctions>

#include <algorithm>
#include <cmath>

namespace lpdev::stats {

double kahan_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double mean(std::span<const double> xs) {
    require(!xs.empty(), "mean: empty input");
    return kahan_sum(xs) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    require(xs.size() >= 2, "variance: need at least 2 samples");
    const double m = mean(xs);
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double d = (x - m) * (x - m);
        const double y = d - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(xs.size() - 1);
}

double quantile(std::span<const double> xs, double q) {
    require(!xs.empty(), "quantile: empty input");
    require(q >= 0.0 && q <= 1.0, "quantile: q outside [0,1]");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::vector<double> geometric_thresholds(std::span<const double> samples,
                                         int points) {
    require(!samples.empty(), "geometric_thresholds: empty input");
    std::vector<double> abs(samples.size());
    std::transform(samples.begin(), samples.end(), abs.begin(),
                   [](double v) { return std::abs(v); });
    const double mx = *std::max_element(abs.begin(), abs.end());
    if (mx <= 0.0) return {0.0};
    double med = quantile(abs, 0.5);
    med = std::max(med, mx * 1e-6);
    if (med >= mx) return {mx};
    std::vector<double> grid(points);
    const double ratio = std::log(mx / med) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) grid[i] = med * std::exp(ratio * i);
    grid.back() = mx;
    return grid;
}

double beta_inc(double a, double b, double x) {
    require(a > 0.0 && b > 0.0, "beta_inc: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    using A = Eigen::Array<double, 1, 1>;
    A aa, bb, xx;
    aa(0) = a;
    bb(0) = b;
    xx(0) = x;
    return Eigen::betainc(aa, bb, xx)(0);
}

double beta_inv(double p, double a, double b) {
    require(p >= 0.0 && p <= 1.0, "beta_inv: p outside [0,1]");
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (beta_inc(a, b, mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

double clopper_pearson_upper(std::int64_t k, std::int64_t n, double conf) {
    require(n > 0 && k >= 0 && k <= n, "clopper_pearson: bad counts");
    if (k >= n) return 1.0;
    return beta_inv(conf, static_cast<double>(k + 1), static_cast<double>(n - k));
}

double clopper_pearson_lower(std::int64_t k, std::int64_t n, double conf) {
    require(n > 0 && k >= 0 && k <= n, "clopper_pearson: bad counts");
    if (k <= 0) return 0.0;
    return beta_inv(1.0 - conf, static_cast<double>(k), static_cast<double>(n - k + 1));
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, "ols_slope: need >= 2 points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    require(sxx > 0.0, "ols_slope: degenerate x");
    return sxy / sxx;
}

double chi_mean(Index m) {
    require(m >= 1, "chi_mean: m must be positive");
    const double md = static_cast<double>(m);
    return std::exp(0.5 * std::log(2.0) + std::lgamma(0.5 * (md + 1.0)) -
                    std::lgamma(0.5 * md));
}

double gaussian_abs_moment(double p) {
    require(p >= 0.0, "gaussian_abs_moment: p must be nonnegative");
    return std::exp(0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) -
                    0.5 * std::log(M_PI));
}

}  // namespace lpdev::stats
