#pragma once

#include <cstdint>
#include <span>

#include "lpdev/common.hpp"

namespace lpdev::orlicz {

// Dimensionless Orlicz exponent alpha > 0 (alpha = 2: sub-Gaussian,
// alpha = 1: sub-exponential).
struct Alpha {
    double value;
    explicit Alpha(double v) : value(v) {
        require(std::isfinite(v) && v > 0.0, "Alpha: must be positive finite");
    }
};

struct PsiEstimate {
    double alpha = 2.0;
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t sample_count = 0;
};

struct PsiOptions {
    double tolerance = 1e-6;           // relative, on the returned norm
    int bootstrap_resamples = 200;     // percentile method
    std::uint64_t bootstrap_seed = 0;  // caller-supplied; no global state
    int min_samples_for_ci = 50;       // below this the band is [0, +inf)
};

// Empirical psi_alpha norm: the minimal t (within relative tolerance, by
// bisection) with mean_i exp(|x_i|^alpha / t^alpha) <= 2. Samples are
// normalized by max|x| first, which also caps every exponent by log(2n):
// a single huge sample yields a finite large norm rather than an overflow.
PsiEstimate psi_alpha_norm(std::span<const double> samples, Alpha alpha,
                           const PsiOptions& options = {});
PsiEstimate psi_alpha_norm(std::span<const double> samples, Alpha alpha,
                           double tolerance);

// Constant chain linking the four equivalent sub-Gaussian/Orlicz properties:
// MGF-bounded-at-a-point (K1), tails (K2), moments (K3), parametric MGF (K4),
// with C2 = (2/(c alpha))^{1/alpha}, C3 = (2 e alpha)^{1/alpha} and the
// round trip K1' = (4 c e)^{-1/alpha} K4 = c^{-2/alpha} K1.
struct EquivalenceConstants {
    double c_stirling = 1.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c7 = 0.0;  // max{1, C3, C3*C2}
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double k4 = 0.0;
    double round_trip_k1 = 0.0;
};

// Grid check of Gamma(1+x) <= (x/c)^x for x in [1, 100] (log grid); the
// c = 1 default is asserted once per process before constants are handed out.
bool stirling_gamma_bound_holds(double c, int grid_points = 256);

EquivalenceConstants equivalence_chain(double k1, Alpha alpha,
                                       double c_stirling = 1.0);

// P(|X| >= t) <= min(1, 2 exp(-(t/K2)^alpha))
double tail_bound(double t, double k2, Alpha alpha);

// ||X||_{L^p} <= K3 p^{1/alpha}, valid for p >= alpha
double moment_bound(double p, double k3, Alpha alpha);

// E exp(lambda X) <= exp((2 lambda K C7)^{alpha'} / alpha'), alpha > 1,
// valid for lambda >= 2 / (K C7); below that threshold the bound is not
// asserted and the call is a domain error.
double mgf_bound(double lambda, double k, Alpha alpha, double c_stirling = 1.0);

// ||X - E X||_psi_alpha <= C4 ||X||_psi_alpha. Centering at most doubles the
// moment growth constant (with a 2 alpha^{-1/alpha} variant below alpha = 1),
// and carrying that through the moments -> MGF -> norm legs multiplies by
// (4 c e)^{-1/alpha} C3 C2 = c^{-2/alpha}; with c = 1:
//   C4(alpha) = max(2, 2 alpha^{-1/alpha}).
double centering_constant(Alpha alpha, double c_stirling = 1.0);
double centered_norm_bound(const PsiEstimate& psi);

// || |X|^beta ||_psi_alpha = ||X||_psi_{alpha beta}^beta: given the
// psi_{alpha beta} norm, returns its beta-th power.
double scaling_norm(double psi_alphabeta, double beta);

}  // namespace lpdev::orlicz
