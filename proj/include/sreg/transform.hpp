#pragma once

#include <Eigen/Core>

#include "sreg/point_set.hpp"

namespace sreg {

// The similarity transform p -> s*R*p + t with s > 0 and R a proper
// rotation.  Validity is enforced at construction; instances are immutable.
class SimilarityTransform {
public:
    SimilarityTransform(double scale, Eigen::MatrixXd rotation, Eigen::VectorXd translation);

    static SimilarityTransform identity(int dim);

    double scale() const noexcept { return scale_; }
    const Eigen::MatrixXd& rotation() const noexcept { return rotation_; }
    const Eigen::VectorXd& translation() const noexcept { return translation_; }
    int dim() const noexcept { return static_cast<int>(translation_.size()); }

    // (1/s, R^T, -(1/s) R^T t)
    SimilarityTransform inverse() const;

    Eigen::VectorXd apply(const Eigen::VectorXd& p) const;

private:
    double scale_;
    Eigen::MatrixXd rotation_;
    Eigen::VectorXd translation_;
};

// a ∘ b: apply b first, then a.
SimilarityTransform compose(const SimilarityTransform& a, const SimilarityTransform& b);

// Maps every point through the transform.  Dimensions must agree.
PointSet apply_transform(const SimilarityTransform& transform, const PointSet& points);

// Planar rotation by `angle` radians (counterclockwise).
Eigen::MatrixXd rotation2d(double angle);
// Rotation by `angle` radians about a (not necessarily unit) 3D axis.
Eigen::MatrixXd rotation3d(const Eigen::Vector3d& axis, double angle);

// Geodesic angle between two proper rotations of the same dimension.
double rotation_angle_between(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace sreg
