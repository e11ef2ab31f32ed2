#pragma once

namespace sreg::tol {

// All numeric guards used across the library live here so they can be
// audited (and tweaked) in one place.

// Frobenius tolerance for R^T R = I on rotation construction.
inline constexpr double kRotationOrthonormality = 1e-9;
// |det(R) - 1| tolerance on rotation construction.
inline constexpr double kRotationDeterminant = 1e-9;
// A centered point set's centroid must be below this, per component.
inline constexpr double kCentroidResidual = 1e-12;
// Relative floor for the scale estimate's denominator; below it the
// geometry is considered degenerate.
inline constexpr double kDegenerateScaleRel = 1e-12;
// Relative singular-value floor used to flag a non-unique rotation.
inline constexpr double kRotationRankRel = 1e-12;
// Absolute slack allowed when checking monotonicity of objective traces.
inline constexpr double kMonotonicitySlack = 1e-9;

}  // namespace sreg::tol
