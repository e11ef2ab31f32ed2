#include "sreg/map_merge.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "sreg/baselines.hpp"
#include "sreg/solver.hpp"

namespace sreg {

namespace {

int priority(CellState s) {
    switch (s) {
        case CellState::occupied: return 2;
        case CellState::free: return 1;
        case CellState::unknown: return 0;
    }
    return 0;
}

double rotation_angle_2d(const Eigen::MatrixXd& r) { return std::atan2(r(1, 0), r(0, 0)); }

}  // namespace

std::string MergeReport::to_json() const {
    nlohmann::json j{{"scale", scale},
                     {"rotation_angle", rotation_angle},
                     {"translation", {tx, ty}},
                     {"overlap", overlap},
                     {"final_mse", final_mse},
                     {"iterations", iterations},
                     {"edge_counts", {reference_edge_count, other_edge_count}},
                     {"output_resolution", output_resolution},
                     {"termination", termination}};
    return j.dump(2);
}

SimilarityTransform estimate_merge_init(const OccupancyGrid& reference,
                                        const OccupancyGrid& other) {
    const PointSet ref_edges = extract_edge_points(reference);
    const PointSet oth_edges = extract_edge_points(other);
    const double s0 = pca_scale_estimate(oth_edges, ref_edges);
    const Eigen::VectorXd t = centroid(ref_edges) - s0 * centroid(oth_edges);
    return {s0, Eigen::MatrixXd::Identity(2, 2), t};
}

OccupancyGrid composite_maps(const OccupancyGrid& reference, const OccupancyGrid& other,
                             const SimilarityTransform& other_to_reference) {
    reference.validate();
    other.validate();

    // Grow the reference canvas (snapped to its own lattice) until it covers
    // the transformed extent of the other map's known cells.
    double min_x = reference.origin_x;
    double min_y = reference.origin_y;
    double max_x = reference.origin_x + reference.width * reference.resolution;
    double max_y = reference.origin_y + reference.height * reference.resolution;
    Eigen::VectorXd corner(2);
    for (int cy = 0; cy <= 1; ++cy) {
        for (int cx = 0; cx <= 1; ++cx) {
            corner << other.origin_x + cx * other.width * other.resolution,
                other.origin_y + cy * other.height * other.resolution;
            const Eigen::VectorXd mapped = other_to_reference.apply(corner);
            min_x = std::min(min_x, mapped(0));
            min_y = std::min(min_y, mapped(1));
            max_x = std::max(max_x, mapped(0));
            max_y = std::max(max_y, mapped(1));
        }
    }
    const double res = reference.resolution;
    const int shift_x =
        static_cast<int>(std::floor((min_x - reference.origin_x) / res + 1e-9));
    const int shift_y =
        static_cast<int>(std::floor((min_y - reference.origin_y) / res + 1e-9));

    OccupancyGrid out;
    out.resolution = res;
    out.origin_x = reference.origin_x + shift_x * res;
    out.origin_y = reference.origin_y + shift_y * res;
    out.width = std::max(reference.width - shift_x,
                         static_cast<int>(std::ceil((max_x - out.origin_x) / res - 1e-9)));
    out.height = std::max(reference.height - shift_y,
                          static_cast<int>(std::ceil((max_y - out.origin_y) / res - 1e-9)));
    out.cells.assign(static_cast<std::size_t>(out.width) * out.height, CellState::unknown);

    for (int y = 0; y < reference.height; ++y)
        for (int x = 0; x < reference.width; ++x)
            out.at(x - shift_x, y - shift_y) = reference.at(x, y);

    // Inverse-map every output cell center into the other grid and take the
    // state of the nearest cell, so resolution ratios leave no holes.
    const SimilarityTransform back = other_to_reference.inverse();
    Eigen::VectorXd center_pt(2);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            center_pt << out.origin_x + (x + 0.5) * res, out.origin_y + (y + 0.5) * res;
            const Eigen::VectorXd src = back.apply(center_pt);
            const int ox = static_cast<int>(std::floor((src(0) - other.origin_x) / other.resolution));
            const int oy = static_cast<int>(std::floor((src(1) - other.origin_y) / other.resolution));
            if (!other.in_bounds(ox, oy)) continue;
            const CellState incoming = other.at(ox, oy);
            if (incoming == CellState::unknown) continue;
            CellState& cell = out.at(x, y);
            if (priority(incoming) > priority(cell)) cell = incoming;
        }
    }
    return out;
}

std::pair<OccupancyGrid, MergeReport> merge_maps(const OccupancyGrid& reference,
                                                 const OccupancyGrid& other,
                                                 const MergeConfig& config,
                                                 const SimilarityTransform& init) {
    const PointSet ref_edges = extract_edge_points(reference);
    const PointSet oth_edges = extract_edge_points(other);

    TrimConfig solver = config.solver;
    solver.initial_transform = init;
    const TrimmedResult reg = run_strimmed_icp(oth_edges, ref_edges, solver);

    MergeReport report;
    report.scale = reg.transform.scale();
    report.rotation_angle = rotation_angle_2d(reg.transform.rotation());
    report.tx = reg.transform.translation()(0);
    report.ty = reg.transform.translation()(1);
    report.overlap = reg.overlap;
    report.final_mse = reg.final_mse;
    report.iterations = reg.iterations;
    report.reference_edge_count = ref_edges.size();
    report.other_edge_count = oth_edges.size();
    report.output_resolution = reference.resolution;
    report.termination = to_string(reg.termination);

    const double cell = reference.resolution;
    if (reg.final_mse > config.mse_sanity_cells * cell * cell)
        throw MergeRejectedError("registration residual too large; maps likely disjoint", report);

    return {composite_maps(reference, other, reg.transform), report};
}

}  // namespace sreg
