#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lpdev/common.hpp"

namespace lpdev::stats {

// Kahan-compensated sum in index order; independent of thread count because
// callers always reduce a fully materialized slot array.
double kahan_sum(std::span<const double> xs);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased

// q in [0,1]; linear interpolation on the sorted copy
double quantile(std::span<const double> xs, double q);

// 16-point geometric grid on [median, max] of |samples|; a single {0} when
// all samples are zero, and a degenerate single-point grid when median==max.
std::vector<double> geometric_thresholds(std::span<const double> samples,
                                         int points = 16);

// regularized incomplete beta I_x(a, b)
double beta_inc(double a, double b, double x);
// inverse of beta_inc in x, by bisection
double beta_inv(double p, double a, double b);

// One-sided Clopper-Pearson bounds for a binomial proportion at confidence
// level `conf` (e.g. 0.99).
double clopper_pearson_upper(std::int64_t k, std::int64_t n, double conf);
double clopper_pearson_lower(std::int64_t k, std::int64_t n, double conf);

// OLS slope of y against x
double ols_slope(std::span<const double> x, std::span<const double> y);

// E[chi_m] = sqrt(2) Gamma((m+1)/2) / Gamma(m/2), the exact mean of the
// Euclidean norm of an m-dimensional standard Gaussian vector.
double chi_mean(Index m);

// E|g|^p for g ~ N(0,1): 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
double gaussian_abs_moment(double p);

}  // namespace lpdev::stats
