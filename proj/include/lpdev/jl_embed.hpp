#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lpdev/common.hpp"
#include "lpdev/complexity.hpp"
#include "lpdev/deviation.hpp"
#include "lpdev/ensembles.hpp"
#include "lpdev/lp_geometry.hpp"

namespace lpdev::jl {

// Regime constants of the distance sandwich d_p ||z||_2 <= ||z|| <= D_p ||z||_2:
// (C K^-3, 1) below p = 2, (1, 1) at p = 2, (1, C' K) above, with C and C'
// the fitted norm-equivalence constants.
std::pair<double, double> distortion_constants(
    const lp::Exponent& p, double k_psi2,
    const deviation::FittedConstants& fitted);

struct EmbeddingPlan {
    double p = 2.0;
    double k_psi2 = 1.0;
    Index n_points = 0;
    double epsilon = 0.0;
    double target_failure = 0.0;
    double c_p_jl = 1.0;  // constant slot of the failure-probability formula
    Index m = 0;
    double d_p = 1.0;
    double big_d_p = 1.0;
    deviation::FittedConstants constants;
};

// Smallest m with 2 exp(-eps^2 m^{2 beta} / (d_p^{-2} C_p K^{8p+8} log N))
// below the failure target:
//   m = ceil((d_p^{-2} C_p K^{8p+8} ln N ln(2/fail) / eps^2)^{1/(2 beta)})
EmbeddingPlan plan_dimension(Index n_points, double epsilon, double target_failure,
                             const lp::Exponent& p, double k_psi2,
                             const deviation::FittedConstants& fitted,
                             double c_p_jl = 1.0);

// Calibration route for the formula's constant slot: the deviation module's
// fitted ratio, a conservative multiplier (default 2), squared by the
// tail-from-psi2 inversion.
double calibrated_jl_constant(double c_p_dev, double multiplier = 2.0);

// x -> m^{-1/p} A x for every point of T
complexity::PointSet embed(const ensembles::MatrixSample& A,
                           const complexity::PointSet& T, const lp::Exponent& p);

struct DistortionReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    Index violations = 0;
    Index pair_count = 0;
    Index skipped_pairs = 0;  // duplicate source points
    double lower_edge = 0.0;  // d_p (1 - eps)
    double upper_edge = 0.0;  // D_p (1 + eps)
    std::vector<double> ratios;
};

// Pair ratios || m^{-1/p} A (x - y) ||_p / ||x - y||_2 via the embedded
// points, counted against [d_p (1 - eps), D_p (1 + eps)].
DistortionReport distortion_report(const complexity::PointSet& T,
                                   const complexity::PointSet& embedded,
                                   const lp::Exponent& p,
                                   const EmbeddingPlan& plan);

}  // namespace lpdev::jl
