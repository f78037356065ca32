#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpdev/common.hpp"
#include "lpdev/complexity.hpp"
#include "lpdev/ensembles.hpp"
#include "lpdev/lp_geometry.hpp"
#include "lpdev/orlicz.hpp"

namespace lpdev::deviation {

enum class Process { R, X };

// Universal constants the bounds carry but never pin numerically; they are
// fitted on calibration data and then frozen for held-out checks.
struct FittedConstants {
    double c_p_tail = 1.0;   // exponent constant of the vector tail envelope
    double c_p_dev = 1.0;    // fitted psi2 ratio of the sup-deviation envelope
    double c_alpha = 1.0;    // Bernstein exponent constant
    double norm_c_lower = 1.0;  // lower norm-equivalence constant (p < 2)
    double norm_c_upper = 1.0;  // upper norm-equivalence constant (p > 2)
    enum class Source { fitted, configured } source = Source::configured;
};

// ||A x||_p - m^{1/p} * row_lp, the deviation around the row-norm scale
double deviation_from_row_norm(const Mat& A, const Vec& x, const lp::Exponent& p,
                               double row_lp);

// ||A x||_p - mean_norm, the deviation around a precomputed E||A x||_p
double deviation_from_mean(const Mat& A, const Vec& x, const lp::Exponent& p,
                           double mean_norm);

// Tail envelope for | ||X^(m)||_p - m^{1/p} | with ||X_1||_{L^p} = 1:
//   p < 2:  min(1, 2 exp(-C s^2 / (K^{2p} m^{2/p-1})))
//   p >= 2: min(1, 2 exp(-C s^2 / K^{2p}))  (m-free)
double vector_concentration_tail(double s, const lp::Exponent& p, Index m,
                                 double k_psi2, const FittedConstants& constants);

// Bernstein-type tail for |sum a_i Y_i| with mean-zero psi_alpha summands,
// alpha <= 1: min(1, 2 exp(-c min{t^2/(K^2||a||_2^2), t^a/(K^a max|a_i|^a)}))
double bernstein_bound(double t, orlicz::Alpha alpha, double k_psi, const Vec& weights,
                       double c_alpha);

struct TailCurve {
    std::vector<double> thresholds;
    std::vector<double> empirical;
    std::vector<double> ci_low;   // Clopper-Pearson 99%
    std::vector<double> ci_high;
    std::vector<double> theory;
};

TailCurve empirical_tail(std::span<const double> samples,
                         std::vector<double> thresholds,
                         const std::function<double(double)>& theory_fn);

// Per-trial | ||X^(m)||_p - m^{1/p} | with entries drawn from spec and
// normalized so that ||X_1||_{L^p} = 1 exactly.
std::vector<double> vector_deviation_samples(
    const ensembles::DistributionSpec& spec, const lp::Exponent& p, Index m,
    Index trials, std::uint64_t seed);

// psi2 of spec entries after L^p normalization (K of the vector bound)
double normalized_entry_psi2(const ensembles::DistributionSpec& spec, double p);

// Largest C such that the envelope clears the one-sided `conf` CP upper bound
// of the empirical tail at every threshold; +inf when the samples are
// identically zero (no constraint).
double fit_tail_constant(std::span<const double> samples, const lp::Exponent& p,
                         Index m, double k_psi2, double conf = 0.99);

struct DominanceCheck {
    bool dominated = true;
    std::vector<double> failed_thresholds;
};

// Held-out check: CP lower bound <= envelope at every threshold.
DominanceCheck check_tail_dominance(std::span<const double> samples,
                                    const lp::Exponent& p, Index m, double k_psi2,
                                    const FittedConstants& constants,
                                    double conf = 0.99);

struct DeviationReport {
    Process process = Process::R;
    std::string spec_name;
    double p = 2.0;
    Index m = 0;
    std::string point_set_ref;
    Index trials = 0;
    std::vector<double> sup_samples;
    std::optional<orlicz::PsiEstimate> fitted_psi2;  // absent below 10^3 trials
    double envelope = 0.0;   // K^{4p+4} rad(B_q^m) gamma(T)
    double ratio = 0.0;      // fitted psi2 / envelope
    double gamma_value = 0.0;
    double entry_psi2 = 0.0;
    std::uint64_t seed = 0;
};

struct SupDeviationOptions {
    Index gamma_trials = 20000;
    Index mean_prepass_factor = 10;  // trial multiplier for centering E||Ax||_p
    Index min_trials_for_fit = 1000;
    std::string point_set_ref = "inline";
};

// Per-trial sup_{x in T} |process value| over fresh matrix draws, with the
// psi2 fit of the raw sup and the envelope ratio.
DeviationReport sup_deviation_trials(const ensembles::DistributionSpec& spec,
                                     const complexity::PointSet& T, Index m,
                                     const lp::Exponent& p, Index trials,
                                     std::uint64_t seed, Process process,
                                     const SupDeviationOptions& options = {});

struct IncrementReport {
    orlicz::PsiEstimate fitted_psi2;
    double envelope = 0.0;
    double ratio = 0.0;
    double distance = 0.0;       // ||x - y||_2
    double envelope_exponent = 0.0;  // 4p or 4p+4
};

// psi2 of R_x - R_y over coupled matrix draws against the increment envelope
// K^e rad(B_q^m) ||x - y||_2; e = 4p when y = 0 or both points sit on the
// mixed-norm unit sphere, 4p+4 otherwise.
IncrementReport increment_psi2_report(const ensembles::DistributionSpec& spec,
                                      const Vec& x, const Vec& y, Index m,
                                      const lp::Exponent& p, Index trials,
                                      std::uint64_t seed);

}  // namespace lpdev::deviation
