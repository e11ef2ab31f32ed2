#pragma once

// Internal engine shared by the scaling, trimmed, diagnostic, and
// bounded-baseline solvers.  One iteration is: correspondences for every
// data point, optional sorted-prefix overlap selection, closed-form
// (R, s, t) fit on the retained pairs, objective bookkeeping, termination
// checks.  The variants differ only in the scale rule and in whether the
// trim step runs.

#include <cstddef>
#include <optional>
#include <utility>

#include "sreg/point_set.hpp"
#include "sreg/trimmed.hpp"

namespace sreg::detail {

enum class ScaleRule {
    // s = sum ||m||^2 / sum <R d, m>; objective divides by s^2.
    scale_emphasized,
    // s = sum <R d, m> / sum ||d||^2, optionally clamped; plain objective.
    least_squares,
};

struct EngineConfig {
    std::size_t max_iterations = 100;
    double objective_rel_tol = 1e-10;
    SimilarityTransform initial;
    bool trimmed = false;
    double lambda = 2.0;
    double min_overlap = 0.3;
    ScaleRule scale_rule = ScaleRule::scale_emphasized;
    std::optional<std::pair<double, double>> scale_bounds;  // low, high
    bool diagnostic = false;

    explicit EngineConfig(SimilarityTransform init) : initial(std::move(init)) {}
};

TrimmedResult run_icp_engine(const PointSet& data, const PointSet& model,
                             const EngineConfig& config);

// Overlap scan shared with the public select_overlap; `normalizer` is s^2
// for the scale-emphasized objective and 1 for the plain one (it does not
// change the argmin, only the reported psi values).
OverlapSelection scan_overlap(const CorrespondenceSet& correspondences, double normalizer,
                              double lambda, double min_overlap);

}  // namespace sreg::detail
