#include "sreg/transform.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "sreg/errors.hpp"
#include "sreg/kernels.hpp"
#include "sreg/tolerances.hpp"

namespace sreg {

SimilarityTransform::SimilarityTransform(double scale, Eigen::MatrixXd rotation,
                                         Eigen::VectorXd translation)
    : scale_(scale), rotation_(std::move(rotation)), translation_(std::move(translation)) {
    const Eigen::Index m = translation_.size();
    if (m < 2) throw InvalidValueError("similarity transform needs dimension >= 2");
    if (rotation_.rows() != m || rotation_.cols() != m)
        throw DimensionError("rotation matrix shape does not match the translation dimension");
    if (!(scale_ > 0.0) || !std::isfinite(scale_))
        throw InvalidValueError("scale must be a positive finite real");
    const double ortho =
        (rotation_.transpose() * rotation_ - Eigen::MatrixXd::Identity(m, m)).norm();
    if (!(ortho <= tol::kRotationOrthonormality))
        throw InvalidValueError("rotation matrix is not orthonormal");
    const double det = rotation_.determinant();
    if (!(std::abs(det - 1.0) <= tol::kRotationDeterminant))
        throw InvalidValueError("rotation matrix is not proper (det != +1)");
}

SimilarityTransform SimilarityTransform::identity(int dim) {
    return {1.0, Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim)};
}

SimilarityTransform SimilarityTransform::inverse() const {
    Eigen::MatrixXd rt = rotation_.transpose();
    Eigen::VectorXd t = -(rt * translation_) / scale_;
    return {1.0 / scale_, std::move(rt), std::move(t)};
}

Eigen::VectorXd SimilarityTransform::apply(const Eigen::VectorXd& p) const {
    if (p.size() != translation_.size())
        throw DimensionError("point dimension does not match the transform");
    return scale_ * (rotation_ * p) + translation_;
}

SimilarityTransform compose(const SimilarityTransform& a, const SimilarityTransform& b) {
    if (a.dim() != b.dim()) throw DimensionError("cannot compose transforms of different dimension");
    return {a.scale() * b.scale(), a.rotation() * b.rotation(),
            a.scale() * (a.rotation() * b.translation()) + a.translation()};
}

PointSet apply_transform(const SimilarityTransform& transform, const PointSet& points) {
    const int dim = points.dim();
    if (transform.dim() != dim)
        throw DimensionError("transform dimension does not match the point set");
    // Kernels take the rotation row-major.
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rot =
        transform.rotation();
    std::vector<double> out(points.coords().size());
    kernels::active_ops().transform_points(dim, points.size(), transform.scale(), rot.data(),
                                           transform.translation().data(), points.data(),
                                           out.data());
    return PointSet(dim, std::move(out));
}

Eigen::MatrixXd rotation2d(double angle) {
    Eigen::MatrixXd r(2, 2);
    const double c = std::cos(angle), s = std::sin(angle);
    r << c, -s, s, c;
    return r;
}

Eigen::MatrixXd rotation3d(const Eigen::Vector3d& axis, double angle) {
    const double norm = axis.norm();
    if (!(norm > 0.0)) throw InvalidValueError("rotation axis must be nonzero");
    return Eigen::AngleAxisd(angle, axis / norm).toRotationMatrix();
}

double rotation_angle_between(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("rotation dimensions differ");
    const Eigen::MatrixXd rel = a.transpose() * b;
    const double m = static_cast<double>(rel.rows());
    // trace(R) = m - 2*(1 - cos(theta)) per planar rotation block; for the
    // single-angle cases (2-D, 3-D) this is the exact geodesic angle.
    double c = (rel.trace() - (m - 2.0)) / 2.0;
    c = std::min(1.0, std::max(-1.0, c));
    return std::acos(c);
}

}  // namespace sreg
