#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sreg/point_set.hpp"
#include "sreg/transform.hpp"

namespace sreg {

struct SolverConfig {
    std::size_t max_iterations = 100;
    // Terminate when (F_prev - F_new) < objective_rel_tol * F_prev.
    double objective_rel_tol = 1e-10;
    // Identity when unset.
    std::optional<SimilarityTransform> initial_transform;

    void validate() const;
};

enum class Termination {
    correspondences_unchanged,
    max_iterations,
    objective_converged,
};

// Which objective a solver traces: the scale-normalized residual
// sum ||s R p + t - q||^2 / s^2, or the plain least-squares sum used by the
// diagnostic and bounded-baseline solvers.
enum class ObjectiveKind { scale_normalized, least_squares };

const char* to_string(Termination t);
const char* to_string(ObjectiveKind k);

// Per-iteration bookkeeping, mostly for the convergence-chain tests: the
// traced objective evaluated right after the correspondence step (under the
// previous transform) and again after the transform update, plus the scale
// that update produced.
struct IterationStat {
    double objective_pre_update;
    double objective_post_update;
    double scale;
};

struct RegistrationResult {
    SimilarityTransform transform = SimilarityTransform::identity(2);
    // One traced-objective value per iteration, recorded after the
    // transform update; nonincreasing for the solvers that minimize it.
    std::vector<double> objective_trace;
    std::size_t iterations = 0;
    Termination termination = Termination::max_iterations;
    // Mean squared residual over the matched pairs under the final
    // transform (mean form, comparable across solvers).
    double final_mse = 0.0;
    ObjectiveKind objective_kind = ObjectiveKind::scale_normalized;
    // Set by the collapse diagnostic so its results are never mistaken for
    // the real solver's.
    bool diagnostic = false;
    // Some iteration produced a rank-deficient cross-covariance.
    bool rotation_degenerate = false;
    std::vector<IterationStat> steps;
};

// Full-overlap scaling ICP: alternate nearest-neighbor correspondences with
// the closed-form rotation / scale / translation update minimizing
// sum ||s R p_i + t - q_{c(i)}||^2 / s^2.
RegistrationResult run_scaling_icp(const PointSet& data, const PointSet& model,
                                   const SolverConfig& config);

// Diagnostic variant using the unregularized least-squares scale.  Exists
// to demonstrate the scale-collapse failure mode; never use it to register
// anything you care about.
RegistrationResult run_naive_ls_icp(const PointSet& data, const PointSet& model,
                                    const SolverConfig& config);

// Initial transform with unit scale, identity rotation, and the translation
// that aligns the data centroid onto the model centroid.
SimilarityTransform centroid_prealignment(const PointSet& data, const PointSet& model);

}  // namespace sreg
