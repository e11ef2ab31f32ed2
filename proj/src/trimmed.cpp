#include "sreg/trimmed.hpp"

#include <cmath>

#include "icp_engine.hpp"
#include "sreg/errors.hpp"

namespace sreg {

void TrimConfig::validate() const {
    SolverConfig::validate();
    if (!(lambda >= 0.0)) throw InvalidValueError("lambda must be >= 0");
    if (!(min_overlap > 0.0 && min_overlap <= 1.0))
        throw InvalidValueError("min_overlap must lie in (0, 1]");
}

double psi_objective(double mse, double scale, double xi, double lambda) {
    if (!(scale > 0.0)) throw InvalidValueError("psi requires a positive scale");
    if (!(xi > 0.0 && xi <= 1.0)) throw InvalidValueError("psi requires xi in (0, 1]");
    if (!(mse >= 0.0)) throw InvalidValueError("psi requires a nonnegative mean squared error");
    return mse / (scale * scale * std::pow(xi, 1.0 + lambda));
}

OverlapSelection select_overlap(const CorrespondenceSet& correspondences, double scale,
                                const TrimConfig& config) {
    config.validate();
    if (!(scale > 0.0)) throw InvalidValueError("overlap selection requires a positive scale");
    return detail::scan_overlap(correspondences, scale * scale, config.lambda,
                                config.min_overlap);
}

TrimmedResult run_strimmed_icp(const PointSet& data, const PointSet& model,
                               const TrimConfig& config) {
    config.validate();
    detail::EngineConfig engine(config.initial_transform
                                    ? *config.initial_transform
                                    : SimilarityTransform::identity(data.dim()));
    engine.max_iterations = config.max_iterations;
    engine.objective_rel_tol = config.objective_rel_tol;
    engine.trimmed = true;
    engine.lambda = config.lambda;
    engine.min_overlap = config.min_overlap;
    engine.scale_rule = detail::ScaleRule::scale_emphasized;
    return detail::run_icp_engine(data, model, engine);
}

}  // namespace sreg
