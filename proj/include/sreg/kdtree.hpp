#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sreg/correspondence.hpp"
#include "sreg/point_set.hpp"
#include "sreg/transform.hpp"

namespace sreg {

// Exact nearest-neighbor index over the model shape.  Ties on distance are
// broken toward the smallest model index, which makes queries bit-for-bit
// reproducible and lets the "correspondences unchanged" termination test
// mean something.  Immutable after construction; concurrent queries are
// safe.
class NearestNeighborIndex {
public:
    explicit NearestNeighborIndex(PointSet model, std::size_t leaf_size = 16);

    struct Result {
        std::size_t index;
        double distance;
    };

    // Exact argmin over all model points of the Euclidean distance to `query`.
    Result nearest(std::span<const double> query) const;

    const PointSet& source() const noexcept { return model_; }
    int dim() const noexcept { return model_.dim(); }
    std::size_t size() const noexcept { return model_.size(); }

private:
    struct Node {
        // Interior: children indices and the split plane.  Leaf: point range.
        std::int32_t axis = -1;  // -1 marks a leaf
        double split = 0.0;
        std::uint32_t left = 0, right = 0;    // interior children
        std::uint32_t begin = 0, end = 0;     // leaf range into order_/reordered_
    };

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);
    void search(std::uint32_t node_id, const double* query, double& best_d2,
                std::size_t& best_idx) const;

    PointSet model_;
    std::size_t leaf_size_;
    std::vector<std::uint32_t> order_;   // position in reordered_ -> original index
    std::vector<double> reordered_;      // model points permuted into build order
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
};

// Nearest model point for every data point after mapping it through the
// transform.  pairs[i] holds data index i, its argmin model index, and the
// exact post-transform distance.
CorrespondenceSet establish_correspondences(const PointSet& data, const SimilarityTransform& transform,
                                            const NearestNeighborIndex& index);

}  // namespace sreg
