#include "sreg/estimators.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sreg/errors.hpp"
#include "sreg/kernels.hpp"
#include "sreg/tolerances.hpp"

namespace sreg {

namespace {

void require_paired(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw DimensionError("paired point sets have different dimensions");
    if (a.size() != b.size()) throw DimensionError("paired point sets have different counts");
}

// C[r][c] = sum_i a_i[r] * b_i[c]
Eigen::MatrixXd cross_products(const PointSet& a, const PointSet& b) {
    const int dim = a.dim();
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> c(dim, dim);
    kernels::active_ops().cross_products(dim, a.size(), a.data(), b.data(), c.data());
    return c;
}

// sum_i <R d_i, m_i> = trace(R * C) for C = sum_i d_i m_i^T
double rotated_correlation(const Eigen::MatrixXd& rotation, const Eigen::MatrixXd& c) {
    return (rotation * c).trace();
}

}  // namespace

RotationEstimate estimate_rotation(const PointSet& centered_data,
                                   const PointSet& centered_model) {
    require_paired(centered_data, centered_model);
    const int dim = centered_data.dim();
    const double n = static_cast<double>(centered_data.size());
    const Eigen::MatrixXd h = cross_products(centered_data, centered_model) / n;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd& u = svd.matrixU();
    const Eigen::MatrixXd& v = svd.matrixV();
    const Eigen::VectorXd& sigma = svd.singularValues();

    // Flip the weakest direction when the best orthogonal map would be a
    // reflection, which keeps det(R) = +1 at the cost of that direction's
    // contribution.
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(dim);
    const bool reflected = (v * u.transpose()).determinant() < 0.0;
    if (reflected) diag(dim - 1) = -1.0;
    Eigen::MatrixXd rotation = v * diag.asDiagonal() * u.transpose();

    // The maximizer is not unique when the cross-covariance loses two or
    // more directions, or when the reflection correction lands on a tied
    // singular value.
    const double top = sigma(0);
    bool degenerate = !(top > 0.0);
    if (!degenerate && dim >= 2) {
        if (sigma(dim - 2) <= tol::kRotationRankRel * top) degenerate = true;
        if (reflected && sigma(dim - 2) - sigma(dim - 1) <= tol::kRotationRankRel * top)
            degenerate = true;
    }
    return {std::move(rotation), degenerate};
}

double estimate_scale(const PointSet& centered_data, const PointSet& centered_model,
                      const Eigen::MatrixXd& rotation) {
    require_paired(centered_data, centered_model);
    const int dim = centered_data.dim();
    if (rotation.rows() != dim || rotation.cols() != dim)
        throw DimensionError("rotation dimension does not match the point sets");
    const double model_ss =
        kernels::active_ops().sum_sq(dim, centered_model.size(), centered_model.data());
    const double corr = rotated_correlation(rotation, cross_products(centered_data, centered_model));
    if (!(corr > tol::kDegenerateScaleRel * model_ss))
        throw DegenerateScaleError(
            "scale denominator collapsed: rotated data does not correlate with the model");
    return model_ss / corr;
}

double estimate_scale_ls(const PointSet& centered_data, const PointSet& centered_model,
                         const Eigen::MatrixXd& rotation) {
    require_paired(centered_data, centered_model);
    const int dim = centered_data.dim();
    if (rotation.rows() != dim || rotation.cols() != dim)
        throw DimensionError("rotation dimension does not match the point sets");
    const double data_ss =
        kernels::active_ops().sum_sq(dim, centered_data.size(), centered_data.data());
    if (!(data_ss > 0.0))
        throw DegenerateShapeError("data shape has zero spread; least-squares scale undefined");
    const double corr = rotated_correlation(rotation, cross_products(centered_data, centered_model));
    if (!(corr > tol::kDegenerateScaleRel * data_ss))
        throw DegenerateScaleError(
            "least-squares scale collapsed to zero: rotated data does not correlate with the model");
    return corr / data_ss;
}

Eigen::VectorXd estimate_translation(const PointSet& data, const PointSet& model_targets,
                                     double scale, const Eigen::MatrixXd& rotation) {
    require_paired(data, model_targets);
    return centroid(model_targets) - scale * (rotation * centroid(data));
}

double objective_value(const PointSet& data, const PointSet& model_targets,
                       const SimilarityTransform& transform) {
    require_paired(data, model_targets);
    if (transform.dim() != data.dim())
        throw DimensionError("transform dimension does not match the point sets");
    const PointSet moved = apply_transform(transform, data);
    const double ss = kernels::active_ops().sum_sq_diff(data.dim(), data.size(), moved.data(),
                                                        model_targets.data());
    return ss / (transform.scale() * transform.scale());
}

}  // namespace sreg
