#include "lpdev/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "lpdev/rng.hpp"

namespace lpdev::orlicz {

namespace {

double pow_abs(double u, double alpha) {
    if (alpha == 1.0) return u;
    if (alpha == 2.0) return u * u;
    return std::pow(u, alpha);
}

// Working representation of one fit: scale-free powers y_i = (|x_i|/M)^alpha
// in [0, 1] and the bracket for beta = (M/t)^alpha. The defining condition
// mean exp(|x|^alpha / t^alpha) <= 2 becomes g(beta) = mean exp(y beta) <= 2
// with the alpha-free bracket beta in [log 2, log(2n)]:
//   g(log 2)  <= exp(log 2) = 2   (y <= 1)
//   g(log 2n) >= exp(log 2n)/n = 2 (the max sample alone).
// Normalizing by M makes the fit exactly positive-homogeneous in the sample
// scale and keeps every exponent at most log(2n).
struct FitProblem {
    Arr y;
    double scale = 0.0;  // M = max|x|
    double beta_lo = 0.0;
    double beta_hi = 0.0;
};

FitProblem make_problem(std::span<const double> samples, double alpha) {
    FitProblem prob;
    const auto n = static_cast<Index>(samples.size());
    Arr abs(n);
    for (Index i = 0; i < n; ++i) {
        require(std::isfinite(samples[i]), "psi_alpha_norm: non-finite sample");
        abs[i] = std::abs(samples[i]);
    }
    prob.scale = abs.maxCoeff();
    if (prob.scale <= 0.0) return prob;
    prob.y.resize(n);
    for (Index i = 0; i < n; ++i) prob.y[i] = pow_abs(abs[i] / prob.scale, alpha);
    prob.beta_lo = std::log(2.0);
    prob.beta_hi = std::log(2.0 * static_cast<double>(n));
    return prob;
}

double g_plain(const FitProblem& prob, double beta) {
    return (prob.y * beta).exp().mean();
}

// largest feasible beta (g <= 2) by bisection; the returned beta is feasible
double solve_beta(const FitProblem& prob, double alpha, double tolerance) {
    double lo = prob.beta_lo;
    double hi = prob.beta_hi;
    if (g_plain(prob, hi) <= 2.0) return hi;
    // relative tolerance on t translates to alpha * tol on beta
    const double width = tolerance * alpha;
    for (int it = 0; it < 200 && (hi - lo) > width * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g_plain(prob, mid) <= 2.0 ? lo : hi) = mid;
    }
    return lo;
}

double beta_to_norm(const FitProblem& prob, double beta, double alpha) {
    return prob.scale * std::pow(beta, -1.0 / alpha);
}

// Weighted root g_w(beta) = (1/n) sum w_i exp(y_i beta) = 2 for one bootstrap
// resample; Newton from the full-sample root with a bisection fallback.
double solve_beta_weighted(const FitProblem& prob, const Arr& w, double beta0) {
    double beta = beta0;
    const double lo_lim = 0.5 * prob.beta_lo;
    const double hi_lim = 2.0 * prob.beta_hi;
    for (int it = 0; it < 8; ++it) {
        const Arr e = (prob.y * beta).exp();
        const double g = (w * e).mean();
        const double gp = (w * prob.y * e).mean();
        if (std::abs(g - 2.0) <= 1e-12) return beta;
        if (gp <= 0.0) break;
        beta -= (g - 2.0) / gp;
        if (!(beta > lo_lim && beta < hi_lim)) break;
    }
    double lo = prob.beta_lo, hi = prob.beta_hi;
    if ((w * (prob.y * hi).exp()).mean() <= 2.0) return hi;
    for (int it = 0; it < 100 && (hi - lo) > 1e-12 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((w * (prob.y * mid).exp()).mean() <= 2.0 ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

PsiEstimate psi_alpha_norm(std::span<const double> samples, Alpha alpha,
                           const PsiOptions& options) {
    require(!samples.empty(), "psi_alpha_norm: empty sample list");
    require(options.tolerance > 0.0, "psi_alpha_norm: tolerance must be positive");
    PsiEstimate est;
    est.alpha = alpha.value;
    est.sample_count = samples.size();

    const FitProblem prob = make_problem(samples, alpha.value);
    if (prob.scale <= 0.0) return est;  // all zeros: norm 0, band [0,0]

    const double beta_hat = solve_beta(prob, alpha.value, options.tolerance);
    est.value = beta_to_norm(prob, beta_hat, alpha.value);

    if (static_cast<int>(samples.size()) < options.min_samples_for_ci) {
        est.ci_low = 0.0;
        est.ci_high = std::numeric_limits<double>::infinity();
        return est;
    }

    const auto n = static_cast<Index>(samples.size());
    const int resamples = options.bootstrap_resamples;
    if (resamples <= 0) {
        est.ci_low = est.ci_high = est.value;
        return est;
    }
    std::vector<double> boot(resamples);
    Arr w(n);
    for (int r = 0; r < resamples; ++r) {
        w.setZero();
        const std::uint64_t stream = rng::mix64(options.bootstrap_seed, r);
        for (Index k = 0; k < n; k += 2) {
            const auto bits =
                rng::entry_block(0x9D5AB51E5EEDull, stream,
                                 static_cast<std::uint32_t>(k >> 1), 0);
            w[static_cast<Index>(rng::bounded(bits.lo, n))] += 1.0;
            if (k + 1 < n) w[static_cast<Index>(rng::bounded(bits.hi, n))] += 1.0;
        }
        boot[r] = beta_to_norm(prob, solve_beta_weighted(prob, w, beta_hat),
                               alpha.value);
    }
    std::sort(boot.begin(), boot.end());
    auto pick = [&](double q) {
        const double pos = q * (resamples - 1);
        const auto i = static_cast<std::size_t>(pos);
        const auto j = std::min(i + 1, boot.size() - 1);
        const double f = pos - static_cast<double>(i);
        return boot[i] * (1.0 - f) + boot[j] * f;
    };
    est.ci_low = std::min(pick(0.025), est.value);
    est.ci_high = std::max(pick(0.975), est.value);
    return est;
}

PsiEstimate psi_alpha_norm(std::span<const double> samples, Alpha alpha,
                           double tolerance) {
    PsiOptions options;
    options.tolerance = tolerance;
    return psi_alpha_norm(samples, alpha, options);
}

bool stirling_gamma_bound_holds(double c, int grid_points) {
    require(c > 0.0, "stirling_gamma_bound_holds: c must be positive");
    const double step = std::log(100.0) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        const double x = std::exp(step * i);
        if (std::lgamma(1.0 + x) > x * (std::log(x) - std::log(c)) + 1e-12)
            return false;
    }
    return true;
}

EquivalenceConstants equivalence_chain(double k1, Alpha alpha, double c_stirling) {
    require(k1 >= 0.0 && std::isfinite(k1), "equivalence_chain: k1 must be >= 0");
    require(c_stirling > 0.0, "equivalence_chain: c must be positive");
    static std::once_flag once;
    std::call_once(once, [] {
        if (!stirling_gamma_bound_holds(1.0))
            throw std::logic_error("Gamma(1+x) <= x^x self-test failed");
    });
    const double a = alpha.value;
    EquivalenceConstants out;
    out.c_stirling = c_stirling;
    out.c2 = std::pow(2.0 / (c_stirling * a), 1.0 / a);
    out.c3 = std::pow(2.0 * M_E * a, 1.0 / a);
    out.c7 = std::max({1.0, out.c3, out.c3 * out.c2});
    out.k1 = k1;
    out.k2 = k1;
    out.k3 = out.c2 * out.k2;
    out.k4 = out.c3 * out.k3;
    out.round_trip_k1 = std::pow(4.0 * c_stirling * M_E, -1.0 / a) * out.k4;
    return out;
}

double tail_bound(double t, double k2, Alpha alpha) {
    require(k2 > 0.0, "tail_bound: K2 must be positive");
    require(t >= 0.0, "tail_bound: t must be nonnegative");
    return std::min(1.0, 2.0 * std::exp(-std::pow(t / k2, alpha.value)));
}

double moment_bound(double p, double k3, Alpha alpha) {
    require(k3 > 0.0, "moment_bound: K3 must be positive");
    require_domain(p >= alpha.value,
                   "moment_bound: only valid for p >= alpha");
    return k3 * std::pow(p, 1.0 / alpha.value);
}

double mgf_bound(double lambda, double k, Alpha alpha, double c_stirling) {
    require(alpha.value > 1.0, "mgf_bound: requires alpha > 1");
    require(k > 0.0, "mgf_bound: K must be positive");
    require(lambda >= 0.0, "mgf_bound: lambda must be nonnegative");
    const double c7 = equivalence_chain(1.0, alpha, c_stirling).c7;
    require_domain(lambda >= 2.0 / (k * c7),
                   "mgf_bound: lambda below the validity threshold 2/(K C7)");
    const double conj = alpha.value / (alpha.value - 1.0);
    return std::exp(std::pow(2.0 * lambda * k * c7, conj) / conj);
}

double centering_constant(Alpha alpha, double c_stirling) {
    const double a = alpha.value;
    return std::pow(c_stirling, -2.0 / a) *
           std::max(2.0, 2.0 * std::pow(a, -1.0 / a));
}

double centered_norm_bound(const PsiEstimate& psi) {
    require(std::isfinite(psi.value) && psi.value >= 0.0,
            "centered_norm_bound: psi estimate must be finite");
    return centering_constant(Alpha(psi.alpha)) * psi.value;
}

double scaling_norm(double psi_alphabeta, double beta) {
    require(std::isfinite(psi_alphabeta) && psi_alphabeta >= 0.0,
            "scaling_norm: input must be finite and nonnegative");
    require(beta > 0.0, "scaling_norm: beta must be positive");
    return std::pow(psi_alphabeta, beta);
}

}  // namespace lpdev::orlicz
