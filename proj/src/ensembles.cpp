#include "lpdev/ensembles.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lpdev/parallel.hpp"

namespace lpdev::ensembles {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kTwoPi = 6.283185307179586;

double box_muller(rng::Block128 bits) {
    const double u1 = rng::u01_positive(bits.lo);
    const double u2 = rng::u01(bits.hi);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}
}  // namespace

DistributionSpec DistributionSpec::gaussian() {
    return {Kind::gaussian, 0.0, 0.0, 0.0};
}

DistributionSpec DistributionSpec::rademacher() {
    return {Kind::rademacher, 1.0, -1.0, 0.5};
}

DistributionSpec DistributionSpec::uniform_scaled() {
    return {Kind::uniform_scaled, -kSqrt3, kSqrt3, 0.0};
}

DistributionSpec DistributionSpec::two_point(double a, double prob) {
    require(std::isfinite(a) && a > 0.0, "two_point: a must be positive finite");
    require(prob > 0.0 && prob < 1.0, "two_point: prob must lie in (0,1)");
    const double b = -prob * a / (1.0 - prob);
    // mean zero by construction; unit variance forces a^2 prob/(1-prob) = 1
    const double var = prob * a * a + (1.0 - prob) * b * b;
    require(std::abs(var - 1.0) <= 1e-9,
            "two_point: (a, prob) does not solve the unit-variance system");
    return {Kind::two_point, a, b, prob};
}

double DistributionSpec::abs_moment(double p) const {
    require(p >= 0.0, "abs_moment: p must be nonnegative");
    switch (kind_) {
        case Kind::gaussian:
            return std::exp(0.5 * p * std::log(2.0) +
                            std::lgamma(0.5 * (p + 1.0)) - 0.5 * std::log(M_PI));
        case Kind::rademacher:
            return 1.0;
        case Kind::uniform_scaled:
            return std::pow(kSqrt3, p) / (p + 1.0);
        case Kind::two_point:
            return prob_ * std::pow(a_, p) + (1.0 - prob_) * std::pow(-b_, p);
    }
    throw std::logic_error("abs_moment: unknown kind");
}

std::string DistributionSpec::name() const {
    switch (kind_) {
        case Kind::gaussian: return "gaussian";
        case Kind::rademacher: return "rademacher";
        case Kind::uniform_scaled: return "uniform_scaled";
        case Kind::two_point: {
            std::ostringstream os;
            os << "two_point(" << a_ << "," << prob_ << ")";
            return os.str();
        }
    }
    throw std::logic_error("name: unknown kind");
}

DistributionSpec DistributionSpec::parse(const std::string& name) {
    if (name == "gaussian") return gaussian();
    if (name == "rademacher") return rademacher();
    if (name == "uniform_scaled" || name == "uniform") return uniform_scaled();
    if (name.rfind("two_point(", 0) == 0 && name.back() == ')') {
        const auto body = name.substr(10, name.size() - 11);
        const auto comma = body.find(',');
        require(comma != std::string::npos, "parse: two_point needs (a,prob)");
        return two_point(std::stod(body.substr(0, comma)),
                         std::stod(body.substr(comma + 1)));
    }
    throw std::invalid_argument("unknown distribution: " + name);
}

std::optional<double> theoretical_psi2(const DistributionSpec& spec) {
    switch (spec.kind()) {
        case Kind::gaussian:
            // root of (1 - 2/t^2)^{-1/2} = 2
            return std::sqrt(8.0 / 3.0);
        case Kind::rademacher:
            // root of exp(1/t^2) = 2
            return 1.0 / std::sqrt(std::log(2.0));
        case Kind::uniform_scaled:
        case Kind::two_point: {
            // bisection on the exact MGF of |X|^2 / t^2
            auto mgf = [&](double t) {
                if (spec.kind() == Kind::two_point) {
                    return spec.prob() * std::exp(spec.a() * spec.a() / (t * t)) +
                           (1.0 - spec.prob()) *
                               std::exp(spec.b() * spec.b() / (t * t)) -
                           2.0;
                }
                // uniform on [-sqrt3, sqrt3]: 256-panel Simpson on [0, sqrt3]
                const int n = 256;
                const double h = kSqrt3 / n;
                double sum = 1.0 + std::exp(3.0 / (t * t));
                for (int k = 1; k < n; ++k) {
                    const double u = k * h;
                    sum += (k % 2 == 1 ? 4.0 : 2.0) * std::exp(u * u / (t * t));
                }
                return (h / 3.0) * sum / kSqrt3 - 2.0;
            };
            double lo = 0.5, hi = 64.0;
            while (mgf(lo) < 0.0) lo *= 0.5;
            while (mgf(hi) > 0.0) hi *= 2.0;
            for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (mgf(mid) > 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
    }
    return std::nullopt;
}

double SeededSampler::entry(std::uint32_t i, std::uint32_t j) const {
    const auto bits = rng::entry_block(master_seed, stream_id, i, j);
    switch (spec.kind()) {
        case Kind::gaussian:
            return box_muller(bits);
        case Kind::rademacher:
            return (bits.lo >> 63) ? 1.0 : -1.0;
        case Kind::uniform_scaled:
            return kSqrt3 * (2.0 * rng::u01(bits.lo) - 1.0);
        case Kind::two_point:
            return rng::u01(bits.lo) < spec.prob() ? spec.a() : spec.b();
    }
    throw std::logic_error("entry: unknown kind");
}

MatrixSample sample_matrix(const SeededSampler& sampler, Index m, Index n,
                           Index entry_budget) {
    require(m >= 1 && n >= 1, "sample_matrix: dimensions must be positive");
    if (m > entry_budget / n)
        throw std::length_error("sample_matrix: m*n exceeds the entry budget");
    MatrixSample out;
    out.rows = m;
    out.cols = n;
    out.spec_name = sampler.spec.name();
    out.seed = sampler.master_seed;
    out.stream = sampler.stream_id;
    out.entries.resize(m, n);
    Mat& A = out.entries;
    parallel_for(m, [&](Index i) {
        for (Index j = 0; j < n; ++j)
            A(i, j) = sampler.entry(static_cast<std::uint32_t>(i),
                                    static_cast<std::uint32_t>(j));
    });
    return out;
}

Vec sample_vector(const SeededSampler& sampler, Index m, Index entry_budget) {
    return sample_matrix(sampler, m, 1, entry_budget).entries.col(0);
}

void save_matrix_csv(const std::string& path, const MatrixSample& sample) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "# m=" << sample.rows << " n=" << sample.cols
       << " spec=" << sample.spec_name << " seed=" << sample.seed
       << " stream=" << sample.stream << "\n";
    char buf[32];
    for (Index i = 0; i < sample.rows; ++i) {
        for (Index j = 0; j < sample.cols; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", sample.entries(i, j));
            os << buf << (j + 1 == sample.cols ? "" : ",");
        }
        os << "\n";
    }
}

MatrixSample load_matrix_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::string header;
    std::getline(is, header);
    MatrixSample out;
    auto field = [&](const std::string& key) -> std::string {
        const auto pos = header.find(key + "=");
        require(pos != std::string::npos, "matrix csv: missing header field " + key);
        const auto start = pos + key.size() + 1;
        auto end = header.find(' ', start);
        if (end == std::string::npos) end = header.size();
        return header.substr(start, end - start);
    };
    out.rows = std::stoll(field("m"));
    out.cols = std::stoll(field("n"));
    out.spec_name = field("spec");
    out.seed = std::stoull(field("seed"));
    out.stream = std::stoull(field("stream"));
    out.entries.resize(out.rows, out.cols);
    std::string line;
    for (Index i = 0; i < out.rows; ++i) {
        require(static_cast<bool>(std::getline(is, line)), "matrix csv: truncated");
        std::istringstream ls(line);
        std::string cell;
        for (Index j = 0; j < out.cols; ++j) {
            require(static_cast<bool>(std::getline(ls, cell, ',')),
                    "matrix csv: short row");
            out.entries(i, j) = std::stod(cell);
        }
    }
    return out;
}

namespace {
constexpr char kMagic[8] = {'L', 'P', 'M', 'A', 'T', '0', '0', '1'};
}

void save_matrix_binary(const std::string& path, const MatrixSample& sample) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write(kMagic, sizeof(kMagic));
    const std::uint64_t dims[4] = {
        static_cast<std::uint64_t>(sample.rows),
        static_cast<std::uint64_t>(sample.cols), sample.seed, sample.stream};
    os.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    const std::uint64_t name_len = sample.spec_name.size();
    os.write(reinterpret_cast<const char*>(&name_len), sizeof(name_len));
    os.write(sample.spec_name.data(), static_cast<std::streamsize>(name_len));
    for (Index i = 0; i < sample.rows; ++i)
        for (Index j = 0; j < sample.cols; ++j) {
            const double v = sample.entries(i, j);
            os.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
}

MatrixSample load_matrix_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    char magic[8];
    is.read(magic, sizeof(magic));
    require(std::memcmp(magic, kMagic, sizeof(kMagic)) == 0,
            "matrix binary: bad magic");
    std::uint64_t dims[4];
    is.read(reinterpret_cast<char*>(dims), sizeof(dims));
    MatrixSample out;
    out.rows = static_cast<Index>(dims[0]);
    out.cols = static_cast<Index>(dims[1]);
    out.seed = dims[2];
    out.stream = dims[3];
    std::uint64_t name_len = 0;
    is.read(reinterpret_cast<char*>(&name_len), sizeof(name_len));
    out.spec_name.resize(name_len);
    is.read(out.spec_name.data(), static_cast<std::streamsize>(name_len));
    out.entries.resize(out.rows, out.cols);
    for (Index i = 0; i < out.rows; ++i)
        for (Index j = 0; j < out.cols; ++j) {
            double v;
            is.read(reinterpret_cast<char*>(&v), sizeof(v));
            out.entries(i, j) = v;
        }
    require(static_cast<bool>(is), "matrix binary: truncated");
    return out;
}

}  // namespace lpdev::ensembles
