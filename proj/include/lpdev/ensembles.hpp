#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lpdev/common.hpp"
#include "lpdev/rng.hpp"

namespace lpdev::ensembles {

enum class Kind { gaussian, rademacher, uniform_scaled, two_point };

// A mean-zero, unit-variance entry law. The two_point law takes value `a`
// with probability `prob` and b = -prob*a/(1-prob) otherwise; the constructor
// rejects (a, prob) pairs whose variance is not exactly 1.
class DistributionSpec {
public:
    static DistributionSpec gaussian();
    static DistributionSpec rademacher();
    static DistributionSpec uniform_scaled();  // uniform on [-sqrt(3), sqrt(3)]
    static DistributionSpec two_point(double a, double prob);

    Kind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double prob() const { return prob_; }

    // E|X|^p, exact per kind
    double abs_moment(double p) const;

    std::string name() const;
    static DistributionSpec parse(const std::string& name);

private:
    DistributionSpec(Kind kind, double a, double b, double prob)
        : kind_(kind), a_(a), b_(b), prob_(prob) {}
    Kind kind_;
    double a_ = 0.0, b_ = 0.0, prob_ = 0.0;
};

// Closed-form psi_2 norm of the entry law. Gaussian and Rademacher have
// literal closed forms; uniform and two-point are exact MGF roots found by
// deterministic bisection. Returns nullopt only for laws without a usable
// MGF expression (none in the current catalog).
std::optional<double> theoretical_psi2(const DistributionSpec& spec);

// Deterministic sampler: identical (spec, master_seed, stream_id) produce
// identical sequences on every platform and thread count. Entry (i, j) is a
// pure function of (master_seed, stream_id, i, j).
struct SeededSampler {
    DistributionSpec spec;
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    double entry(std::uint32_t i, std::uint32_t j) const;
    SeededSampler stream(std::uint64_t sub) const {
        return {spec, master_seed, rng::mix64(stream_id, sub)};
    }
};

struct MatrixSample {
    Index rows = 0;
    Index cols = 0;
    Mat entries;
    std::string spec_name;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// Default cap on m*n per sample; exceeding it is a resource error.
inline constexpr Index kDefaultEntryBudget = Index(1) << 27;

MatrixSample sample_matrix(const SeededSampler& sampler, Index m, Index n,
                           Index entry_budget = kDefaultEntryBudget);
Vec sample_vector(const SeededSampler& sampler, Index m,
                  Index entry_budget = kDefaultEntryBudget);

// Matrix I/O for cross-run reproduction. CSV carries a header comment with
// m, n, spec and seed; the binary format is exact (raw doubles, row-major).
void save_matrix_csv(const std::string& path, const MatrixSample& sample);
MatrixSample load_matrix_csv(const std::string& path);
void save_matrix_binary(const std::string& path, const MatrixSample& sample);
MatrixSample load_matrix_binary(const std::string& path);

}  // namespace lpdev::ensembles
