#pragma once

#include <cstddef>
#include <vector>

#include "sreg/correspondence.hpp"
#include "sreg/solver.hpp"

namespace sreg {

struct TrimConfig : SolverConfig {
    // Exponent weighting the overlap fraction in the trimmed objective.
    double lambda = 2.0;
    // Smallest admissible overlap fraction; prefixes below it are not
    // scanned.
    double min_overlap = 0.3;

    void validate() const;
};

// Trimmed objective value: psi = mse / (s^2 * xi^(1+lambda)).
double psi_objective(double mse, double scale, double xi, double lambda);

struct OverlapSelection {
    double xi = 1.0;
    // Retained data indices, ascending.
    std::vector<std::size_t> subset;
    // Mean squared distance over the selected prefix.
    double subset_mse = 0.0;
    // psi at the minimizing prefix.
    double psi = 0.0;
};

// Sorts the correspondences by distance (ties by data index), scans every
// admissible prefix size, and returns the prefix minimizing psi computed
// from the prefix mean squared distance and the current scale.  Ties on psi
// go to the largest prefix, so a run of zero-residual pairs is kept whole.
OverlapSelection select_overlap(const CorrespondenceSet& correspondences, double scale,
                                const TrimConfig& config);

// The trimmed objective right after the overlap update (eta), after the
// transform update (epsilon), and the value the incoming correspondences
// gave the previous subset (e).  The convergence chain asserts
// eta <= e and epsilon <= eta within slack, per iteration.
struct TrimIterationStat {
    double psi_incoming;
    double psi_post_trim;
    double psi_post_update;
};

struct TrimmedResult : RegistrationResult {
    double overlap = 1.0;
    std::vector<std::size_t> overlap_subset;
    // One psi value per iteration, recorded after the transform update.
    std::vector<double> psi_trace;
    std::vector<TrimIterationStat> trim_steps;
};

// Partial-overlap scaling ICP: per iteration, establish correspondences for
// every data point, pick the overlap subset by the sorted-prefix scan, then
// fit (s, R, t) on that subset with the scale-normalized objective.
TrimmedResult run_strimmed_icp(const PointSet& data, const PointSet& model,
                               const TrimConfig& config);

}  // namespace sreg
