#include "lpdev/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "lpdev/ensembles.hpp"
#include "lpdev/parallel.hpp"
#include "lpdev/rng.hpp"
#include "lpdev/stats.hpp"

namespace lpdev::complexity {

PointSet make_point_set(Mat points, std::vector<std::string> labels) {
    require(points.rows() >= 1, "PointSet: need at least one point");
    require(points.allFinite(), "PointSet: non-finite coordinates");
    require(labels.empty() ||
                static_cast<Index>(labels.size()) == points.rows(),
            "PointSet: label count mismatch");
    return {std::move(points), std::move(labels)};
}

ComplexityEstimate gaussian_complexity(const PointSet& T, Index trials,
                                       std::uint64_t seed) {
    require(T.count() >= 1, "gaussian_complexity: empty point set");
    require(trials >= 100, "gaussian_complexity: need at least 100 trials");
    const Index n = T.dim();
    std::vector<double> sups(trials);
    const ensembles::SeededSampler g{ensembles::DistributionSpec::gaussian(),
                                     seed, rng::mix64(0x6A77A, 0)};
    parallel_for(trials, [&](Index t) {
        const ensembles::SeededSampler gt = g.stream(t);
        Vec gv(n);
        for (Index j = 0; j < n; ++j)
            gv(j) = gt.entry(0, static_cast<std::uint32_t>(j));
        sups[t] = (T.points * gv).cwiseAbs().maxCoeff();
    });
    ComplexityEstimate est;
    est.trials = trials;
    est.value = stats::mean(sups);
    const double half =
        2.5758 * std::sqrt(stats::variance(sups) / static_cast<double>(trials));
    est.ci_low = est.value - half;
    est.ci_high = est.value + half;
    return est;
}

namespace {

DifferenceSet build_difference_set(
    const PointSet& T, const std::function<double(const Vec&)>& norm) {
    require(T.count() >= 2, "normalized_difference_set: need N >= 2");
    DifferenceSet out;
    std::vector<Vec> dirs;
    for (Index i = 0; i < T.count(); ++i) {
        for (Index j = i + 1; j < T.count(); ++j) {
            Vec d = T.points.row(i) - T.points.row(j);
            const double nrm = norm(d);
            if (nrm <= 1e-300) {
                ++out.duplicate_pairs;
                continue;
            }
            d /= nrm;
            // canonical sign: first coordinate larger than the tolerance
            for (Index k = 0; k < d.size(); ++k) {
                if (std::abs(d(k)) > 1e-12) {
                    if (d(k) < 0.0) d = -d;
                    break;
                }
            }
            dirs.push_back(std::move(d));
        }
    }
    std::sort(dirs.begin(), dirs.end(), [](const Vec& a, const Vec& b) {
        for (Index k = 0; k < a.size(); ++k)
            if (a(k) != b(k)) return a(k) < b(k);
        return false;
    });
    std::vector<Vec> unique;
    for (auto& d : dirs) {
        if (!unique.empty() &&
            (unique.back() - d).cwiseAbs().maxCoeff() <= 1e-12)
            continue;
        unique.push_back(std::move(d));
    }
    Mat pts(static_cast<Index>(unique.size()), T.dim());
    for (Index i = 0; i < pts.rows(); ++i) pts.row(i) = unique[i].transpose();
    out.directions = make_point_set(std::move(pts));
    return out;
}

}  // namespace

DifferenceSet normalized_difference_set(const PointSet& T) {
    return build_difference_set(T, [](const Vec& d) { return d.norm(); });
}

DifferenceSet normalized_difference_set(const PointSet& T,
                                        const lp::MixedNormSpec& mixed,
                                        std::uint64_t seed) {
    return build_difference_set(T, [&](const Vec& d) {
        return lp::row_lp_norm(mixed, d, seed).value;
    });
}

double complexity_log_bound(double n_points, double d_p, double log_base) {
    require(n_points >= 2.0, "complexity_log_bound: need N >= 2");
    require(d_p > 0.0, "complexity_log_bound: d_p must be positive");
    require(log_base > 1.0, "complexity_log_bound: log base must exceed 1");
    return std::sqrt(std::log(n_points) / std::log(log_base)) / d_p;
}

void save_point_set_csv(const std::string& path, const PointSet& set) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    char buf[32];
    for (Index i = 0; i < set.count(); ++i) {
        if (!set.labels.empty()) os << set.labels[i] << ",";
        for (Index j = 0; j < set.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", set.points(i, j));
            os << buf << (j + 1 == set.dim() ? "" : ",");
        }
        os << "\n";
    }
}

PointSet load_point_set_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    bool labeled = false;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.empty()) continue;
        std::size_t start = 0;
        if (rows.empty()) {
            // a non-numeric first cell marks a label column
            try {
                (void)std::stod(cells[0]);
                labeled = false;
            } catch (const std::exception&) {
                labeled = true;
            }
        }
        if (labeled) {
            labels.push_back(cells[0]);
            start = 1;
        }
        std::vector<double> row;
        for (std::size_t k = start; k < cells.size(); ++k)
            row.push_back(std::stod(cells[k]));
        rows.push_back(std::move(row));
    }
    require(!rows.empty(), "point set csv: no rows in " + path);
    const auto dim = rows.front().size();
    for (const auto& r : rows)
        require(r.size() == dim, "point set csv: ragged rows in " + path);
    Mat pts(static_cast<Index>(rows.size()), static_cast<Index>(dim));
    for (Index i = 0; i < pts.rows(); ++i)
        for (Index j = 0; j < pts.cols(); ++j)
            pts(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return make_point_set(std::move(pts), std::move(labels));
}

}  // namespace lpdev::complexity
