#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpdev/common.hpp"
#include "lpdev/lp_geometry.hpp"

namespace lpdev::complexity {

// Finite point set in R^n, one point per row.
struct PointSet {
    Mat points;  // N x dim
    std::vector<std::string> labels;  // optional, empty or size N

    Index count() const { return points.rows(); }
    Index dim() const { return points.cols(); }
};

PointSet make_point_set(Mat points, std::vector<std::string> labels = {});

struct ComplexityEstimate {
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    Index trials = 0;
};

// Monte Carlo estimate of E sup_{x in T} |<g, x>| with g ~ N(0, I). The sup
// is an exact scan per trial; the band is a 99% CLT interval on the trial
// mean. Per-trial draws depend only on (seed, trial), so subsets of T can be
// compared pathwise under the same seed.
ComplexityEstimate gaussian_complexity(const PointSet& T, Index trials,
                                       std::uint64_t seed);

struct DifferenceSet {
    PointSet directions;
    Index duplicate_pairs = 0;  // pairs skipped because x == y
};

// All normalized pairwise differences (x - y)/||x - y||, deduplicated up to
// sign at tolerance 1e-12. The norm is Euclidean or the mixed row norm.
DifferenceSet normalized_difference_set(const PointSet& T);
DifferenceSet normalized_difference_set(const PointSet& T,
                                        const lp::MixedNormSpec& mixed,
                                        std::uint64_t seed = 0);

// sqrt(log N) / d_p with the log base exposed (natural by default).
double complexity_log_bound(double n_points, double d_p,
                            double log_base = M_E);

// CSV I/O: one point per row; an optional leading non-numeric column is
// treated as a label.
void save_point_set_csv(const std::string& path, const PointSet& set);
PointSet load_point_set_csv(const std::string& path);

}  // namespace lpdev::complexity
