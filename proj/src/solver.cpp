#include "sreg/solver.hpp"

#include "icp_engine.hpp"
#include "sreg/errors.hpp"

namespace sreg {

void SolverConfig::validate() const {
    if (max_iterations < 1) throw InvalidValueError("max_iterations must be >= 1");
    if (!(objective_rel_tol >= 0.0)) throw InvalidValueError("objective_rel_tol must be >= 0");
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::correspondences_unchanged: return "correspondences_unchanged";
        case Termination::max_iterations: return "max_iterations";
        case Termination::objective_converged: return "objective_converged";
    }
    return "unknown";
}

const char* to_string(ObjectiveKind k) {
    switch (k) {
        case ObjectiveKind::scale_normalized: return "scale_normalized";
        case ObjectiveKind::least_squares: return "least_squares";
    }
    return "unknown";
}

namespace {

detail::EngineConfig base_engine_config(const PointSet& data, const SolverConfig& config) {
    config.validate();
    detail::EngineConfig engine(config.initial_transform
                                    ? *config.initial_transform
                                    : SimilarityTransform::identity(data.dim()));
    engine.max_iterations = config.max_iterations;
    engine.objective_rel_tol = config.objective_rel_tol;
    return engine;
}

}  // namespace

RegistrationResult run_scaling_icp(const PointSet& data, const PointSet& model,
                                   const SolverConfig& config) {
    auto engine = base_engine_config(data, config);
    engine.scale_rule = detail::ScaleRule::scale_emphasized;
    return detail::run_icp_engine(data, model, engine);
}

RegistrationResult run_naive_ls_icp(const PointSet& data, const PointSet& model,
                                    const SolverConfig& config) {
    auto engine = base_engine_config(data, config);
    engine.scale_rule = detail::ScaleRule::least_squares;
    engine.diagnostic = true;
    return detail::run_icp_engine(data, model, engine);
}

SimilarityTransform centroid_prealignment(const PointSet& data, const PointSet& model) {
    if (data.dim() != model.dim())
        throw DimensionError("data and model point sets have different dimensions");
    const Eigen::VectorXd t = centroid(model) - centroid(data);
    return {1.0, Eigen::MatrixXd::Identity(data.dim(), data.dim()), t};
}

}  // namespace sreg
