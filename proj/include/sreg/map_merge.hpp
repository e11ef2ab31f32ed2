#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "sreg/errors.hpp"
#include "sreg/occupancy_grid.hpp"
#include "sreg/transform.hpp"
#include "sreg/trimmed.hpp"

namespace sreg {

struct MergeReport {
    double scale = 1.0;
    double rotation_angle = 0.0;  // radians, counterclockwise
    double tx = 0.0, ty = 0.0;
    double overlap = 1.0;
    double final_mse = 0.0;
    std::size_t iterations = 0;
    std::size_t reference_edge_count = 0;
    std::size_t other_edge_count = 0;
    double output_resolution = 0.0;
    std::string termination;

    std::string to_json() const;
};

struct MergeConfig {
    TrimConfig solver;
    // Merge is rejected when the registration's final mean squared residual
    // exceeds this many squared reference cells.
    double mse_sanity_cells = 25.0;
};

// Registration rejected because the maps do not plausibly overlap; the
// report of the failed attempt rides along.
class MergeRejectedError : public Error {
public:
    MergeRejectedError(const std::string& what, MergeReport report)
        : Error(what), report(std::move(report)) {}
    MergeReport report;
};

// Aligns `other`'s edge points onto `reference`'s with trimmed scaling ICP
// starting from `init`, then composites other's occupied/free cells into
// the reference frame at the reference resolution.  The output canvas is
// the reference lattice grown to cover the transformed map, so disjoint
// wings survive; occupied beats free beats unknown on conflicts.
std::pair<OccupancyGrid, MergeReport> merge_maps(const OccupancyGrid& reference,
                                                 const OccupancyGrid& other,
                                                 const MergeConfig& config,
                                                 const SimilarityTransform& init);

// s from the edge-point spread ratio, identity rotation, centroid-aligning
// translation: the documented fallback when no initial transform is given.
SimilarityTransform estimate_merge_init(const OccupancyGrid& reference, const OccupancyGrid& other);

// Composite `other` into `reference`'s frame with a known transform (no
// registration).  Exposed for ground-truth comparisons.
OccupancyGrid composite_maps(const OccupancyGrid& reference, const OccupancyGrid& other,
                             const SimilarityTransform& other_to_reference);

}  // namespace sreg
