// Acceptance runner: one verification per criterion, each printing a single
// PASS/FAIL line with the measured quantities. Run all of them or a single
// one with --criterion N. Criterion 11 needs --cli <path to the lpdev tool>.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lpdev/complexity.hpp"
#include "lpdev/deviation.hpp"
#include "lpdev/ensembles.hpp"
#include "lpdev/jl_embed.hpp"
#include "lpdev/lp_geometry.hpp"
#include "lpdev/orlicz.hpp"
#include "lpdev/parallel.hpp"
#include "lpdev/reports.hpp"
#include "lpdev/rng.hpp"
#include "lpdev/stats.hpp"

namespace fs = std::filesystem;
using namespace lpdev;
using Clock = std::chrono::steady_clock;
using ensembles::DistributionSpec;
using ensembles::SeededSampler;
using lp::Exponent;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void note(const std::string& what) {
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

std::vector<double> draw_samples(const DistributionSpec& spec, Index n,
                                 std::uint64_t seed) {
    const SeededSampler s{spec, seed, 0};
    const Vec v = ensembles::sample_vector(s, n);
    return {v.data(), v.data() + v.size()};
}

double fit_psi2_value(std::span<const double> xs) {
    orlicz::PsiOptions opt;
    opt.bootstrap_resamples = 0;
    return orlicz::psi_alpha_norm(xs, orlicz::Alpha(2.0), opt).value;
}

// ---- criterion 1: closed-form psi2 recovery at 1e6 samples, < 10 s each ----

Line criterion1() {
    Line line;
    const struct {
        DistributionSpec spec;
        double target;
    } cases[] = {
        {DistributionSpec::rademacher(), 1.0 / std::sqrt(std::log(2.0))},
        {DistributionSpec::gaussian(), std::sqrt(8.0 / 3.0)},
    };
    for (const auto& c : cases) {
        const auto t0 = Clock::now();
        const auto xs = draw_samples(c.spec, 1000000, 1);
        orlicz::PsiOptions opt;  // full bootstrap band included in the budget
        opt.bootstrap_seed = 99;
        const auto est = orlicz::psi_alpha_norm(xs, orlicz::Alpha(2.0), opt);
        const double secs = seconds_since(t0);
        const double rel = std::abs(est.value - c.target) / c.target;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s: value %.5f target %.5f rel %.4f in %.1fs",
                      c.spec.name().c_str(), est.value, c.target, rel, secs);
        line.note(buf);
        if (rel > 0.01) line.fail(c.spec.name() + " misses 1%");
        if (secs > 10.0) line.fail(c.spec.name() + " over 10 s");
    }
    return line;
}

// ---- criterion 2: psi2 floor sqrt(1/ln 2) across the catalog --------------

Line criterion2() {
    Line line;
    const double floor_value = std::sqrt(1.0 / std::log(2.0)) - 0.01;
    const DistributionSpec catalog[] = {
        DistributionSpec::gaussian(), DistributionSpec::rademacher(),
        DistributionSpec::uniform_scaled(), DistributionSpec::two_point(3.0, 0.1)};
    int idx = 0;
    for (const auto& spec : catalog) {
        const auto xs = draw_samples(spec, 1000000, 100 + idx++);
        const double psi = fit_psi2_value(xs);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s: %.4f", spec.name().c_str(), psi);
        line.note(buf);
        if (psi < floor_value) line.fail(spec.name() + " under the floor");
    }
    return line;
}

// ---- criterion 3: inequality oracle fuzz, zero violations, < 5 s ----------

Line criterion3() {
    Line line;
    const auto t0 = Clock::now();
    std::int64_t bad_triangle = 0, bad_difference = 0;
    for (std::uint32_t t = 0; t < 100000; ++t) {
        const auto b1 = rng::entry_block(0xACCE3, 1, t, 0);
        const auto b2 = rng::entry_block(0xACCE3, 2, t, 0);
        const double a = 1000.0 * rng::u01(b1.lo);
        const double b = 1000.0 * rng::u01(b1.hi);
        const double r_low = rng::u01_positive(b2.lo);
        const double r_high = 1.0 + 7.0 * rng::u01(b2.lo);
        const double p = 1.0 + 7.0 * rng::u01(b2.hi);
        const auto low = lp::power_triangle_check(a, b, r_low);
        const auto high = lp::power_triangle_check(a, b, r_high);
        if (!low.first || !low.second || !high.first || !high.second)
            ++bad_triangle;
        if (!lp::power_difference_check(a, b, Exponent(p))) ++bad_difference;
    }
    // deliberate boundary cases ride along
    for (double r : {0.5, 1.0, 2.0}) {
        const auto eq = lp::power_triangle_check(5.0, 0.0, r);
        if (!eq.first || !eq.second) ++bad_triangle;
    }
    if (!lp::power_difference_check(1.3, 1.3, Exponent(4.0))) ++bad_difference;
    const double secs = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "1e5 fuzz cases/oracle: %lld triangle, %lld difference "
                  "violations in %.2fs",
                  static_cast<long long>(bad_triangle),
                  static_cast<long long>(bad_difference), secs);
    line.note(buf);
    if (bad_triangle != 0 || bad_difference != 0) line.fail("violations found");
    if (secs > 5.0) line.fail("over 5 s");
    return line;
}

// ---- criterion 4: dual ball radius bit-exact values ------------------------

Line criterion4() {
    Line line;
    if (lp::dual_ball_radius(4, Exponent(1.0)) != 2.0)
        line.fail("rad(m=4, p=1) != 2");
    if (lp::dual_ball_radius(1000000, Exponent(2.0)) != 1.0)
        line.fail("rad(m=1e6, p=2) != 1");
    if (lp::dual_ball_radius(100, Exponent(3.0)) != 1.0)
        line.fail("rad(m=100, p=3) != 1");
    // branch agreement at p = 2 over a log-uniform m sample
    int checked = 0;
    for (std::uint32_t t = 0; t < 200; ++t) {
        const auto bits = rng::entry_block(0xACCE4, 1, t, 0);
        const double lm = 6.0 * rng::u01(bits.lo);
        const auto m = static_cast<Index>(std::pow(10.0, lm));
        if (m < 1) continue;
        ++checked;
        const double low_branch =
            std::pow(static_cast<double>(m), 1.0 / 2.0 - 0.5);
        if (lp::dual_ball_radius(m, Exponent(2.0)) != 1.0 || low_branch != 1.0)
            line.fail("p=2 branch mismatch at m=" + std::to_string(m));
    }
    line.note("3 pinned values bit-exact, " + std::to_string(checked) +
              " log-uniform m at p=2");
    return line;
}

// ---- criteria 5 and 6 share the vector-concentration sweep -----------------

struct SweepCell {
    std::vector<double> samples;
    double fitted_psi2 = 0.0;
};

using SweepKey = std::pair<std::string, double>;

const std::vector<Index> kSweepM = {100, 1000, 10000};
const std::vector<double> kSweepP = {1.0, 1.5, 2.0, 3.0, 4.0};

std::map<SweepKey, std::vector<SweepCell>>& sweep_cache() {
    static std::map<SweepKey, std::vector<SweepCell>> cache;
    return cache;
}

const std::vector<SweepCell>& sweep_cells(const DistributionSpec& spec,
                                          double p) {
    auto& cache = sweep_cache();
    const SweepKey key{spec.name(), p};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<SweepCell> cells;
    for (std::size_t mi = 0; mi < kSweepM.size(); ++mi) {
        SweepCell cell;
        cell.samples = deviation::vector_deviation_samples(
            spec, Exponent(p), kSweepM[mi], 10000,
            rng::mix64(0xC5C6, rng::mix64(mi, static_cast<std::uint64_t>(p * 4))));
        cell.fitted_psi2 = fit_psi2_value(cell.samples);
        cells.push_back(std::move(cell));
    }
    return cache.emplace(key, std::move(cells)).first->second;
}

const std::vector<DistributionSpec>& sweep_specs() {
    static const std::vector<DistributionSpec> specs = {
        DistributionSpec::gaussian(), DistributionSpec::rademacher(),
        DistributionSpec::uniform_scaled()};
    return specs;
}

Line criterion5() {
    Line line;
    const auto t0 = Clock::now();
    for (const auto& spec : sweep_specs()) {
        for (double p : kSweepP) {
            const auto& cells = sweep_cells(spec, p);
            std::vector<double> lx, ly;
            bool degenerate = false;
            for (std::size_t mi = 0; mi < kSweepM.size(); ++mi) {
                const double rad =
                    lp::dual_ball_radius(kSweepM[mi], Exponent(p));
                const double v = cells[mi].fitted_psi2 / rad;
                if (v <= 0.0) {
                    degenerate = true;
                    break;
                }
                lx.push_back(std::log(static_cast<double>(kSweepM[mi])));
                ly.push_back(std::log(v));
            }
            double slope = 0.0;  // identically-zero deviations: flat by convention
            if (!degenerate) slope = stats::ols_slope(lx, ly);
            char buf[120];
            std::snprintf(buf, sizeof(buf), "%s p=%.1f slope %+.3f%s",
                          spec.name().c_str(), p, slope,
                          degenerate ? " (zero process)" : "");
            line.note(buf);
            if (std::abs(slope) > 0.15) {
                std::snprintf(buf, sizeof(buf), "%s p=%.1f outside +-0.15",
                              spec.name().c_str(), p);
                line.fail(buf);
            }
        }
    }
    const double secs = seconds_since(t0);
    line.note("sweep in " + std::to_string(static_cast<int>(secs)) + "s");
    if (secs > 600.0) line.fail("over 10 min");
    return line;
}

Line criterion6() {
    Line line;
    Index non_dominated = 0;
    for (const auto& spec : sweep_specs()) {
        for (double p : kSweepP) {
            const Exponent pe(p);
            const double k = deviation::normalized_entry_psi2(spec, p);
            const auto& cells = sweep_cells(spec, p);
            deviation::FittedConstants constants;
            constants.c_p_tail =
                deviation::fit_tail_constant(cells[0].samples, pe, kSweepM[0], k);
            constants.source = deviation::FittedConstants::Source::fitted;
            if (!std::isfinite(constants.c_p_tail)) constants.c_p_tail = 1.0;
            for (std::size_t mi = 1; mi < kSweepM.size(); ++mi) {
                const auto check = deviation::check_tail_dominance(
                    cells[mi].samples, pe, kSweepM[mi], k, constants);
                if (!check.dominated) {
                    non_dominated +=
                        static_cast<Index>(check.failed_thresholds.size());
                    char buf[120];
                    std::snprintf(buf, sizeof(buf),
                                  "%s p=%.1f m=%lld: %zu thresholds",
                                  spec.name().c_str(), p,
                                  static_cast<long long>(kSweepM[mi]),
                                  check.failed_thresholds.size());
                    line.fail(buf);
                }
            }
        }
    }
    line.note("non-dominated held-out thresholds: " +
              std::to_string(non_dominated));
    if (non_dominated != 0) line.fail("dominance violated");
    return line;
}

// ---- criterion 7: sup-deviation scaling, and calibration for criterion 9 ---

complexity::PointSet unit_sphere_points(Index n_pts, Index dim,
                                        std::uint64_t seed) {
    const SeededSampler g{DistributionSpec::gaussian(), seed, 0};
    Mat pts(n_pts, dim);
    for (Index i = 0; i < n_pts; ++i) {
        for (Index j = 0; j < dim; ++j)
            pts(i, j) = g.entry(static_cast<std::uint32_t>(i),
                                static_cast<std::uint32_t>(j));
        pts.row(i) /= pts.row(i).norm();
    }
    return complexity::make_point_set(std::move(pts));
}

std::map<double, double>& calibrated_ratios() {
    static std::map<double, double> ratios;  // p -> fitted psi2 / envelope
    return ratios;
}

Line criterion7() {
    Line line;
    const auto t0 = Clock::now();
    const auto T = unit_sphere_points(50, 32, 0x7077);
    const std::vector<Index> m_grid = {16, 64, 256, 1024};
    for (double p : {1.0, 2.0, 4.0}) {
        const Exponent pe(p);
        const double rad_slope = p <= 2.0 ? 1.0 / p - 0.5 : 0.0;
        for (const auto process : {deviation::Process::R, deviation::Process::X}) {
            std::vector<double> lx, ly;
            double max_ratio = 0.0;
            for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
                const auto report = deviation::sup_deviation_trials(
                    DistributionSpec::gaussian(), T, m_grid[mi], pe, 2000,
                    rng::mix64(0xC7, rng::mix64(mi, static_cast<std::uint64_t>(
                                                        p * 4 + (process ==
                                                                 deviation::Process::R)))),
                    process);
                lx.push_back(std::log(static_cast<double>(m_grid[mi])));
                ly.push_back(std::log(report.fitted_psi2->value));
                max_ratio = std::max(max_ratio, report.ratio);
            }
            const double slope = stats::ols_slope(lx, ly);
            char buf[120];
            std::snprintf(buf, sizeof(buf), "p=%.0f %s slope %+.3f (rad %+.3f)",
                          p, process == deviation::Process::R ? "R" : "X",
                          slope, rad_slope);
            line.note(buf);
            if (std::abs(slope - rad_slope) > 0.15) {
                std::snprintf(buf, sizeof(buf), "p=%.0f %s outside +-0.15", p,
                              process == deviation::Process::R ? "R" : "X");
                line.fail(buf);
            }
            if (process == deviation::Process::R) {
                auto& cal = calibrated_ratios();
                cal[p] = std::max(cal[p], max_ratio);
            }
        }
    }
    line.note("in " + std::to_string(static_cast<int>(seconds_since(t0))) + "s");
    return line;
}

// ---- criterion 8: increment growth linear in the distance ------------------

Line criterion8() {
    Line line;
    const Index dim = 32, m = 400, trials = 5000;
    Vec x = Vec::Zero(dim);
    x(0) = 4.0;  // base point away from the sphere keeps increments local
    Vec u = Vec::Zero(dim);
    u(1) = 1.0;
    for (double p : {1.0, 4.0}) {
        std::vector<double> lt, lv;
        for (double t : {0.25, 0.5, 1.0, 2.0}) {
            const Vec y = x + t * u;
            const auto rep = deviation::increment_psi2_report(
                DistributionSpec::gaussian(), x, y, m, Exponent(p), trials,
                rng::mix64(0xC8, static_cast<std::uint64_t>(p * 16 + t * 4)));
            lt.push_back(std::log(t));
            lv.push_back(std::log(rep.fitted_psi2.value));
        }
        const double slope = stats::ols_slope(lt, lv);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "p=%.0f slope %.3f", p, slope);
        line.note(buf);
        if (std::abs(slope - 1.0) > 0.1) {
            std::snprintf(buf, sizeof(buf), "p=%.0f slope %.3f outside 1+-0.1",
                          p, slope);
            line.fail(buf);
        }
    }
    return line;
}

// ---- criterion 9: planned JL embeddings hold at the target failure rate ----

Line criterion9() {
    Line line;
    const auto t0 = Clock::now();
    const Index n_points = 100, dim = 50, repeats = 200;
    const double eps = 0.5, delta = 0.01;
    const double k = std::sqrt(8.0 / 3.0);  // gaussian entries

    // point cloud under test
    const SeededSampler gp{DistributionSpec::gaussian(), 0x90123, 0};
    Mat pts(n_points, dim);
    for (Index i = 0; i < n_points; ++i)
        for (Index j = 0; j < dim; ++j)
            pts(i, j) = gp.entry(static_cast<std::uint32_t>(i),
                                 static_cast<std::uint32_t>(j));
    const auto T = complexity::make_point_set(std::move(pts));

    // norm-equivalence constants from the closed-form gaussian ratios
    deviation::FittedConstants fitted;
    fitted.source = deviation::FittedConstants::Source::fitted;
    {
        Vec probe = Vec::Zero(dim);
        probe(0) = 1.0;
        const lp::MixedNormSpec g1{DistributionSpec::gaussian(), Exponent(1.0)};
        const lp::MixedNormSpec g4{DistributionSpec::gaussian(), Exponent(4.0)};
        fitted.norm_c_lower =
            lp::norm_equivalence_ratio(g1, probe) * k * k * k;
        fitted.norm_c_upper = lp::norm_equivalence_ratio(g4, probe) / k;
    }

    // envelope ratios from the deviation module (criterion 7 fills these when
    // it runs first; otherwise calibrate on one sweep cell per p)
    auto& cal = calibrated_ratios();
    for (double p : {1.0, 2.0, 4.0}) {
        if (cal.find(p) == cal.end()) {
            const auto Tc = unit_sphere_points(50, 32, 0x7077);
            const auto rep = deviation::sup_deviation_trials(
                DistributionSpec::gaussian(), Tc, 256, Exponent(p), 2000,
                rng::mix64(0xCA11, static_cast<std::uint64_t>(p * 4)),
                deviation::Process::R);
            cal[p] = rep.ratio;
        }
    }

    const double sigma3 = 3.0 * std::sqrt(delta * (1.0 - delta) /
                                          static_cast<double>(repeats));
    for (double p : {2.0, 1.0, 4.0}) {
        const Exponent pe(p);
        const double c_p_jl = jl::calibrated_jl_constant(cal[p]);
        const auto plan =
            jl::plan_dimension(n_points, eps, delta, pe, k, fitted, c_p_jl);
        Index bad = 0;
        double min_ratio_seen = std::numeric_limits<double>::infinity();
        const SeededSampler matrices{
            DistributionSpec::gaussian(),
            0x90AB0ull + static_cast<std::uint64_t>(p * 4), 1};
        for (Index r = 0; r < repeats; ++r) {
            const auto A =
                ensembles::sample_matrix(matrices.stream(r), plan.m, dim);
            const auto embedded = jl::embed(A, T, pe);
            const auto report = jl::distortion_report(T, embedded, pe, plan);
            bad += (report.violations > 0);
            min_ratio_seen = std::min(min_ratio_seen, report.min_ratio);
        }
        const double freq = static_cast<double>(bad) / repeats;
        char buf[180];
        std::snprintf(buf, sizeof(buf),
                      "p=%.0f planned m=%lld violation freq %.3f (allow %.3f)",
                      p, static_cast<long long>(plan.m), freq, delta + sigma3);
        line.note(buf);
        if (freq > delta + sigma3) {
            std::snprintf(buf, sizeof(buf), "p=%.0f frequency %.3f too high", p,
                          freq);
            line.fail(buf);
        }
        if (pe.regime == Exponent::Regime::low) {
            // safety margin of the fitted lower constant: <= 1 on passing runs
            const double margin = plan.d_p * (1.0 - eps) / min_ratio_seen;
            std::snprintf(buf, sizeof(buf), "p=%.0f lower-edge margin %.3f", p,
                          margin);
            line.note(buf);
            if (bad == 0 && margin > 1.0)
                line.fail("safety margin above 1 on a passing run");
        }
    }
    const double secs = seconds_since(t0);
    line.note("in " + std::to_string(static_cast<int>(secs)) + "s");
    if (secs > 300.0) line.fail("over 5 min");
    return line;
}

// ---- criterion 10: plane geometry of the reverse triangle ------------------

Line criterion10() {
    Line line;
    const lp::MixedNormSpec g2{DistributionSpec::gaussian(), Exponent(2.0)};
    const SeededSampler dir{DistributionSpec::gaussian(), 0xC10, 6};
    Index obtuse = 0, violations_sin = 0, violations_sqrt2 = 0, tested = 0;
    for (std::uint32_t t = 0; t < 10000; ++t) {
        Vec x(5), y(5);
        for (Index j = 0; j < 5; ++j) {
            x(j) = dir.stream(2 * t).entry(0, static_cast<std::uint32_t>(j));
            y(j) = dir.stream(2 * t + 1).entry(0, static_cast<std::uint32_t>(j));
        }
        if (x.norm() == 0.0 || y.norm() == 0.0) continue;
        x /= x.norm();
        const auto bits = rng::entry_block(0xC10, 7, t, 0);
        y *= (1.0 + 3.0 * rng::u01(bits.lo)) / y.norm();
        if (y.norm() <= 1.0) continue;
        const auto rec = lp::reverse_triangle_report(x, y, g2);
        ++tested;
        if (rec.lhs_over_rhs * rec.sin_theta > 3.0 + 1e-9) ++violations_sin;
        if (rec.cos_theta <= 0.0) {
            ++obtuse;
            if (rec.lhs_over_rhs > std::sqrt(2.0) + 1e-12) ++violations_sqrt2;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%lld pairs (%lld obtuse): %lld sine-bound and %lld sqrt2 "
                  "violations",
                  static_cast<long long>(tested), static_cast<long long>(obtuse),
                  static_cast<long long>(violations_sin),
                  static_cast<long long>(violations_sqrt2));
    line.note(buf);
    if (violations_sin != 0 || violations_sqrt2 != 0) line.fail("bound violated");
    if (obtuse < 100) line.fail("obtuse branch under-sampled");
    if (tested < 9000) line.fail("too few valid pairs");
    return line;
}

// ---- criterion 11: byte-identical CLI reports across thread counts ---------

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

Line criterion11(const std::string& cli) {
    Line line;
    if (cli.empty()) {
        line.fail("no --cli path given");
        return line;
    }
    const fs::path base =
        fs::temp_directory_path() / "lpdev_acceptance_determinism";
    fs::remove_all(base);
    const std::vector<std::string> commands = {
        "psi-estimate --dist gaussian --alpha 2 --n 2e5 --seed 7 --bootstrap 50",
        "deviation-sweep --dist gaussian --p 1,2 --m 50,100 --trials 1200 "
        "--seed 11 --synthetic-n 8 --synthetic-dim 8 --emit-plot",
        "jl --synthetic-n 40 --synthetic-dim 20 --p 2 --eps 0.5 --fail 0.05 "
        "--seed 3 --repeats 3 --emit-plot",
    };
    const int thread_settings[] = {1, 4, 8};
    for (std::size_t ci = 0; ci < commands.size(); ++ci) {
        std::vector<fs::path> dirs;
        for (int threads : thread_settings) {
            const fs::path out =
                base / ("cmd" + std::to_string(ci) + "_t" + std::to_string(threads));
            fs::create_directories(out);
            const std::string cmdline = cli + " " + commands[ci] + " --threads " +
                                        std::to_string(threads) + " --out " +
                                        out.string() + " > " +
                                        (out / "stdout.txt").string() + " 2>&1";
            const int rc = std::system(cmdline.c_str());
            if (rc != 0) {
                line.fail("command " + std::to_string(ci) + " exited " +
                          std::to_string(rc));
            }
            dirs.push_back(out);
        }
        // every produced file must match byte-for-byte across thread counts
        std::vector<std::string> names;
        for (const auto& entry : fs::directory_iterator(dirs[0]))
            names.push_back(entry.path().filename().string());
        std::sort(names.begin(), names.end());
        if (names.empty()) line.fail("command produced no files");
        for (const auto& name : names) {
            const std::string ref = slurp(dirs[0] / name);
            for (std::size_t d = 1; d < dirs.size(); ++d) {
                if (slurp(dirs[d] / name) != ref)
                    line.fail("file " + name + " differs across threads");
            }
        }
        line.note("command " + std::to_string(ci) + ": " +
                  std::to_string(names.size()) + " files identical x3 threads");
    }
    fs::remove_all(base);
    return line;
}

}  // namespace

int main(int argc, char** argv) {
    int which = 0;
    std::string cli;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) which = std::atoi(argv[++i]);
        else if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
    }
    struct Entry {
        int id;
        const char* name;
        std::function<Line()> run;
    };
    const std::vector<Entry> entries = {
        {1, "closed-form psi2 recovery", criterion1},
        {2, "catalog psi2 floor", criterion2},
        {3, "inequality oracle fuzz", criterion3},
        {4, "dual ball radius exactness", criterion4},
        {5, "vector concentration scaling", criterion5},
        {6, "frozen-constant tail dominance", criterion6},
        {7, "sup-deviation scaling", criterion7},
        {8, "increment linearity", criterion8},
        {9, "planned embedding failure rate", criterion9},
        {10, "reverse-triangle geometry", criterion10},
        {11, "deterministic CLI reports", [&] { return criterion11(cli); }},
    };
    int failures = 0;
    for (const auto& entry : entries) {
        if (which != 0 && entry.id != which) continue;
        Line line;
        try {
            line = entry.run();
        } catch (const std::exception& e) {
            line.fail(std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %2d (%s): %s\n", line.pass ? "PASS" : "FAIL",
                    entry.id, entry.name, line.detail.c_str());
        std::fflush(stdout);
        failures += !line.pass;
    }
    return failures == 0 ? 0 : 1;
}
