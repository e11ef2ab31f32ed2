#pragma once

#include "sreg/point_set.hpp"
#include "sreg/trimmed.hpp"

namespace sreg {

struct ScaleBounds {
    double low = 0.0;
    double high = 0.0;

    void validate() const;
    double clamp(double s) const { return s < low ? low : (s > high ? high : s); }
};

// Isotropic spread ratio: the RMS deviation of the model about its centroid
// divided by the data's.  The standard coarse initial scale.
double pca_scale_estimate(const PointSet& data, const PointSet& model);

// Bounded-scale trimmed ICP comparator: same loop as run_strimmed_icp, but
// the scale step takes the plain least-squares stationary point and clamps
// it into [low, high].  Its psi_trace records mse / xi^(1+lambda) (its own
// objective, no scale normalization) and the result is tagged
// ObjectiveKind::least_squares.
TrimmedResult run_bounded_tricp(const PointSet& data, const PointSet& model,
                                const TrimConfig& config, const ScaleBounds& bounds);

}  // namespace sreg
