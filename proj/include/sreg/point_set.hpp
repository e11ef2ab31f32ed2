#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace sreg {

// An ordered, immutable collection of m-dimensional points stored as one
// flat row-major array (point-major), which is what the SIMD kernels and
// the kd-tree want to chew on.
class PointSet {
public:
    // Takes ownership of `coords`; its length must be a multiple of `dim`.
    PointSet(int dim, std::vector<double> coords);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }
    double operator()(std::size_t i, int c) const {
        return coords_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(c)];
    }

    const double* data() const noexcept { return coords_.data(); }
    const std::vector<double>& coords() const noexcept { return coords_; }

private:
    int dim_;
    std::vector<double> coords_;
};

// Component-wise arithmetic mean.  Rejects empty sets.
Eigen::VectorXd centroid(const PointSet& points);

// Returns the set translated so its centroid is at the origin, plus the
// centroid that was removed.
std::pair<PointSet, Eigen::VectorXd> center(const PointSet& points);

// Largest pairwise extent of the axis-aligned bounding box (its diagonal);
// the "scene diameter" used to normalize translation errors.
double bounding_diameter(const PointSet& points);

}  // namespace sreg
