#pragma once

#include <Eigen/Core>

#include "sreg/point_set.hpp"
#include "sreg/transform.hpp"

namespace sreg {

struct RotationEstimate {
    Eigen::MatrixXd rotation;
    // True when the cross-covariance is rank-deficient enough that the
    // maximizer is not unique; the returned rotation is still a maximizer.
    bool degenerate;
};

// Proper rotation maximizing sum_i <R d_i, m_i> over centered sets D, M of
// equal size.  SVD of the cross-covariance with a determinant correction so
// det(R) = +1 even when the best orthogonal map is a reflection.
RotationEstimate estimate_rotation(const PointSet& centered_data, const PointSet& centered_model);

// Scale minimizing sum_i ||s R d_i - m_i||^2 / s^2 for fixed R over centered
// sets: s = sum ||m_i||^2 / sum <R d_i, m_i>.  Throws DegenerateScaleError
// when the denominator falls below its relative floor.
double estimate_scale(const PointSet& centered_data, const PointSet& centered_model,
                      const Eigen::MatrixXd& rotation);

// Plain least-squares stationary point s = sum <R d_i, m_i> / sum ||d_i||^2
// (minimizer of the unnormalized residual).  Used by the collapse
// diagnostic and the bounded-scale baseline.
double estimate_scale_ls(const PointSet& centered_data, const PointSet& centered_model,
                         const Eigen::MatrixXd& rotation);

// t = mean(q_i) - s * R * mean(p_i); the exact minimizer of the summed
// squared residual for fixed s, R.
Eigen::VectorXd estimate_translation(const PointSet& data, const PointSet& model_targets,
                                     double scale, const Eigen::MatrixXd& rotation);

// sum_i ||s R p_i + t - q_i||^2 / s^2 over paired sets (sum, not mean).
double objective_value(const PointSet& data, const PointSet& model_targets,
                       const SimilarityTransform& transform);

}  // namespace sreg
