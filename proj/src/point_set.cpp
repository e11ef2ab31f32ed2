#include "sreg/point_set.hpp"

#include <algorithm>
#include <cmath>

#include "sreg/errors.hpp"
#include "sreg/kernels.hpp"

namespace sreg {

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 2) throw InvalidValueError("point set dimension must be at least 2");
    if (coords_.empty()) throw EmptyInputError("point set must contain at least one point");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
        throw DimensionError("coordinate array length is not a multiple of the dimension");
}

Eigen::VectorXd centroid(const PointSet& points) {
    const int dim = points.dim();
    Eigen::VectorXd mean(dim);
    kernels::active_ops().col_sums(dim, points.size(), points.data(), mean.data());
    mean /= static_cast<double>(points.size());
    return mean;
}

std::pair<PointSet, Eigen::VectorXd> center(const PointSet& points) {
    const Eigen::VectorXd mean = centroid(points);
    std::vector<double> shifted(points.coords().size());
    kernels::active_ops().subtract(points.dim(), points.size(), points.data(), mean.data(),
                                   shifted.data());
    return {PointSet(points.dim(), std::move(shifted)), mean};
}

double bounding_diameter(const PointSet& points) {
    const int dim = points.dim();
    std::vector<double> lo(points.point(0).begin(), points.point(0).end());
    std::vector<double> hi = lo;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const auto p = points.point(i);
        for (int c = 0; c < dim; ++c) {
            lo[c] = std::min(lo[c], p[c]);
            hi[c] = std::max(hi[c], p[c]);
        }
    }
    double d2 = 0.0;
    for (int c = 0; c < dim; ++c) d2 += (hi[c] - lo[c]) * (hi[c] - lo[c]);
    return std::sqrt(d2);
}

}  // namespace sreg
