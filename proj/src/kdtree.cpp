#include "sreg/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sreg/errors.hpp"

namespace sreg {

namespace {

inline double dist2(const double* a, const double* b, int dim) {
    double acc = 0.0;
    for (int c = 0; c < dim; ++c) {
        const double d = a[c] - b[c];
        acc += d * d;
    }
    return acc;
}

}  // namespace

NearestNeighborIndex::NearestNeighborIndex(PointSet model, std::size_t leaf_size)
    : model_(std::move(model)), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
    const std::size_t n = model_.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    nodes_.reserve(2 * n / leaf_size_ + 2);
    root_ = build(0, static_cast<std::uint32_t>(n));
    // Pack the points into build order for cache-friendly leaf scans.
    reordered_.resize(n * static_cast<std::size_t>(model_.dim()));
    const int dim = model_.dim();
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = model_.point(order_[i]);
        std::copy(p.begin(), p.end(), reordered_.begin() + i * dim);
    }
}

std::uint32_t NearestNeighborIndex::build(std::uint32_t begin, std::uint32_t end) {
    const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= leaf_size_) {
        nodes_[id].begin = begin;
        nodes_[id].end = end;
        return id;
    }
    // Split along the widest axis at the median.
    const int dim = model_.dim();
    int axis = 0;
    double widest = -1.0;
    for (int c = 0; c < dim; ++c) {
        double lo = model_(order_[begin], c), hi = lo;
        for (std::uint32_t i = begin + 1; i < end; ++i) {
            const double v = model_(order_[i], c);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > widest) {
            widest = hi - lo;
            axis = c;
        }
    }
    const std::uint32_t mid = begin + (end - begin) / 2;
    // Tie-break on the original index so the build is fully deterministic.
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         const double va = model_(a, axis), vb = model_(b, axis);
                         return va < vb || (va == vb && a < b);
                     });
    const double split = model_(order_[mid], axis);
    const std::uint32_t left = build(begin, mid);
    const std::uint32_t right = build(mid, end);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void NearestNeighborIndex::search(std::uint32_t node_id, const double* query, double& best_d2,
                                  std::size_t& best_idx) const {
    const Node& node = nodes_[node_id];
    const int dim = model_.dim();
    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const double d2 = dist2(query, reordered_.data() + static_cast<std::size_t>(i) * dim,
                                    dim);
            const std::size_t orig = order_[i];
            if (d2 < best_d2 || (d2 == best_d2 && orig < best_idx)) {
                best_d2 = d2;
                best_idx = orig;
            }
        }
        return;
    }
    const double diff = query[node.axis] - node.split;
    const std::uint32_t near = diff <= 0.0 ? node.left : node.right;
    const std::uint32_t far = diff <= 0.0 ? node.right : node.left;
    search(near, query, best_d2, best_idx);
    // The far side is skipped only when strictly beyond the current best, so
    // equal-distance points with smaller indices are still reachable.
    if (diff * diff <= best_d2) search(far, query, best_d2, best_idx);
}

NearestNeighborIndex::Result NearestNeighborIndex::nearest(std::span<const double> query) const {
    if (static_cast<int>(query.size()) != model_.dim())
        throw DimensionError("query dimension does not match the index");
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_idx = model_.size();
    search(root_, query.data(), best_d2, best_idx);
    return {best_idx, std::sqrt(best_d2)};
}

CorrespondenceSet establish_correspondences(const PointSet& data,
                                            const SimilarityTransform& transform,
                                            const NearestNeighborIndex& index) {
    if (data.dim() != index.dim())
        throw DimensionError("data dimension does not match the model index");
    const PointSet moved = apply_transform(transform, data);
    CorrespondenceSet result;
    result.pairs.reserve(data.size());
    for (std::size_t i = 0; i < moved.size(); ++i) {
        const auto hit = index.nearest(moved.point(i));
        result.pairs.push_back({i, hit.index, hit.distance});
    }
    return result;
}

}  // namespace sreg
