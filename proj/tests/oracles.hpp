#pragma once

// Independent reference implementations used to pin expected values.  These
// stay brute-force on purpose: they must not share code paths with the
// library internals they check.

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sreg/correspondence.hpp"
#include "sreg/point_set.hpp"
#include "sreg/synthetic.hpp"

namespace oracle {

// Exhaustive nearest neighbor with the smallest-index tie rule.
inline std::pair<std::size_t, double> brute_nearest(const sreg::PointSet& model,
                                                    std::span<const double> query) {
    std::size_t best = model.size();
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < model.size(); ++j) {
        const auto q = model.point(j);
        double d2 = 0.0;
        for (int c = 0; c < model.dim(); ++c) {
            const double d = query[c] - q[c];
            d2 += d * d;
        }
        if (d2 < best_d2) {
            best_d2 = d2;
            best = j;
        }
    }
    return {best, std::sqrt(best_d2)};
}

// Exhaustive psi evaluation over every admissible prefix, largest prefix on
// ties.  Mirrors the documented selection contract, not the implementation.
struct PrefixChoice {
    std::size_t n;
    double psi;
};
inline PrefixChoice brute_overlap(const sreg::CorrespondenceSet& corr, double scale,
                                  double lambda, double min_overlap) {
    std::vector<double> d;
    d.reserve(corr.size());
    for (const auto& p : corr.pairs) d.push_back(p.distance);
    std::sort(d.begin(), d.end());
    const std::size_t total = d.size();
    auto n_min = static_cast<std::size_t>(
        std::ceil(min_overlap * static_cast<double>(total) - 1e-9));
    if (n_min < 1) n_min = 1;
    PrefixChoice best{0, 0.0};
    for (std::size_t n = n_min; n <= total; ++n) {
        double sq = 0.0;
        for (std::size_t k = 0; k < n; ++k) sq += d[k] * d[k];
        const double mse = sq / static_cast<double>(n);
        const double xi = static_cast<double>(n) / static_cast<double>(total);
        const double psi = mse / (scale * scale * std::pow(xi, 1.0 + lambda));
        if (best.n == 0 || psi <= best.psi) best = {n, psi};
    }
    return best;
}

// Residual objectives evaluated the long way.
inline double sum_sq_residual(const sreg::PointSet& data, const sreg::PointSet& targets,
                              double s, const Eigen::MatrixXd& rot, const Eigen::VectorXd& t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        Eigen::VectorXd p(data.dim());
        for (int c = 0; c < data.dim(); ++c) p(c) = data(i, c);
        const Eigen::VectorXd r = s * (rot * p) + t;
        for (int c = 0; c < data.dim(); ++c) {
            const double d = r(c) - targets(i, c);
            acc += d * d;
        }
    }
    return acc;
}

inline double scale_emphasized_objective(const sreg::PointSet& data,
                                         const sreg::PointSet& targets, double s,
                                         const Eigen::MatrixXd& rot, const Eigen::VectorXd& t) {
    return sum_sq_residual(data, targets, s, rot, t) / (s * s);
}

// sum_i <R d_i, m_i>, the rotation step's gain.
inline double rotation_gain(const sreg::PointSet& d, const sreg::PointSet& m,
                            const Eigen::MatrixXd& rot) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        Eigen::VectorXd di(d.dim()), mi(d.dim());
        for (int c = 0; c < d.dim(); ++c) {
            di(c) = d(i, c);
            mi(c) = m(i, c);
        }
        acc += (rot * di).dot(mi);
    }
    return acc;
}

// Uniformly random proper rotation (2-D angle / 3-D axis-angle via
// quaternion-free sampling) for the beat-random-alternatives oracles.
inline Eigen::MatrixXd random_proper_rotation(int dim, sreg::Rng& rng) {
    return sreg::random_rotation(dim, 3.14159265358979323846, rng);
}

}  // namespace oracle
