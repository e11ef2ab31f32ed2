#include "sreg/baselines.hpp"

#include <cmath>

#include "icp_engine.hpp"
#include "sreg/errors.hpp"
#include "sreg/kernels.hpp"

namespace sreg {

void ScaleBounds::validate() const {
    if (!(low > 0.0) || !(high >= low))
        throw InvalidValueError("scale bounds require 0 < low <= high");
}

double pca_scale_estimate(const PointSet& data, const PointSet& model) {
    if (data.dim() != model.dim())
        throw DimensionError("data and model point sets have different dimensions");
    if (data.size() < 2 || model.size() < 2)
        throw EmptyInputError("spread estimation needs at least two points per set");

    const auto& ops = kernels::active_ops();
    auto rms_spread = [&](const PointSet& pts) {
        const auto [centered, mean] = center(pts);
        (void)mean;
        const double ss = ops.sum_sq(pts.dim(), pts.size(), centered.data());
        return std::sqrt(ss / static_cast<double>(pts.size()));
    };
    const double data_spread = rms_spread(data);
    if (!(data_spread > 0.0))
        throw DegenerateShapeError("data shape has zero spread; cannot estimate a scale");
    return rms_spread(model) / data_spread;
}

TrimmedResult run_bounded_tricp(const PointSet& data, const PointSet& model,
                                const TrimConfig& config, const ScaleBounds& bounds) {
    config.validate();
    bounds.validate();
    detail::EngineConfig engine(config.initial_transform
                                    ? *config.initial_transform
                                    : SimilarityTransform::identity(data.dim()));
    engine.max_iterations = config.max_iterations;
    engine.objective_rel_tol = config.objective_rel_tol;
    engine.trimmed = true;
    engine.lambda = config.lambda;
    engine.min_overlap = config.min_overlap;
    engine.scale_rule = detail::ScaleRule::least_squares;
    engine.scale_bounds = std::pair{bounds.low, bounds.high};
    return detail::run_icp_engine(data, model, engine);
}

}  // namespace sreg
