#pragma once

#include <cstdint>
#include <limits>
#include <utility>

#include "lpdev/common.hpp"
#include "lpdev/ensembles.hpp"

namespace lpdev::lp {

// p in [1, inf) with its Hoelder conjugate q (inf at p = 1) and the JL rate
// exponent beta (1/2 up to p = 2, then 1/p).
struct Exponent {
    double p;
    double q;
    double beta;
    enum class Regime { low, boundary, high } regime;

    explicit Exponent(double p_in) : p(p_in) {
        require(std::isfinite(p_in) && p_in >= 1.0,
                "Exponent: p must lie in [1, inf)");
        q = (p_in == 1.0) ? std::numeric_limits<double>::infinity()
                          : p_in / (p_in - 1.0);
        beta = (p_in <= 2.0) ? 0.5 : 1.0 / p_in;
        regime = (p_in < 2.0)   ? Regime::low
                 : (p_in == 2.0) ? Regime::boundary
                                 : Regime::high;
    }
};

// |x|^p with fast paths for the common grid; pow handles the rest and maps
// 0^p to 0 for p > 0.
inline double pow_abs(double x, double p) {
    const double a = std::abs(x);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    if (p == 3.0) return a * a * a;
    if (p == 4.0) {
        const double s = a * a;
        return s * s;
    }
    return std::pow(a, p);
}

// (sum |v_i|^p)^{1/p}
template <typename Derived>
double lp_norm(const Eigen::MatrixBase<Derived>& v, const Exponent& p) {
    double sum = 0.0;
    for (Index i = 0; i < v.size(); ++i) sum += pow_abs(v(i), p.p);
    if (p.p == 1.0) return sum;
    if (p.p == 2.0) return std::sqrt(sum);
    return std::pow(sum, 1.0 / p.p);
}

// Euclidean radius of the dual-norm ball {z : ||z||_q <= 1}:
// m^{1/p - 1/2} for p <= 2 and 1 above.
double dual_ball_radius(Index m, const Exponent& p);

// How to evaluate the mixed norm ||x|| = (E |<a, x>|^p)^{1/p} over rows a.
struct MixedNormSpec {
    ensembles::DistributionSpec dist;
    Exponent p;
    enum class Method { closed_form, monte_carlo } method = Method::closed_form;
    int trials = 100000;
};

struct NormEstimate {
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;  // zero-width for closed forms
};

// Closed forms: any entry law at p = 2 gives ||x||_2 (unit-variance rows),
// Gaussian rows give ||x||_2 (E|g|^p)^{1/p} for every p. Everything else is
// Monte Carlo with a bootstrap band.
NormEstimate row_lp_norm(const MixedNormSpec& spec, const Vec& x,
                         std::uint64_t seed = 0);

// ||x|| / ||x||_2; <= 1 for p <= 2 and >= 1 for p >= 2 (up to MC noise)
double norm_equivalence_ratio(const MixedNormSpec& spec, const Vec& x,
                              std::uint64_t seed = 0);

// Power-triangle checks, used as property-test oracles: for r <= 1
// (a+b)^r <= a^r + b^r and |a^r - b^r| <= |a-b|^r; both reversed for r >= 1.
// Returns {sum inequality holds, difference inequality holds} with a small
// relative tolerance absorbing pow rounding.
std::pair<bool, bool> power_triangle_check(double a, double b, double r);

// a^{p-1} |a-b| <= |a^p - b^p| <= p |a-b| sqrt(a^{2p-2} + b^{2p-2})
bool power_difference_check(double a, double b, const Exponent& p);

struct ReverseTriangleRecord {
    double lhs_over_rhs = 0.0;  // (||x - yb||_2 + ||y - yb||_2) / ||x - y||_2
    double sin_theta = 0.0;
    double cos_theta = 0.0;
};

// x on the mixed-norm unit sphere, ||y|| > 1, yb = y / ||y||. The angle is
// taken between x - yb and y - yb in their common plane; degenerate x == yb
// reports sin_theta = 1 (the nothing-to-prove case), exact antipodes report 0.
ReverseTriangleRecord reverse_triangle_report(const Vec& x, const Vec& y,
                                              const MixedNormSpec& spec,
                                              std::uint64_t seed = 0);

}  // namespace lpdev::lp
