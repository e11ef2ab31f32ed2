#include "icp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sreg/errors.hpp"
#include "sreg/estimators.hpp"
#include "sreg/kdtree.hpp"
#include "sreg/kernels.hpp"

namespace sreg::detail {

namespace {

std::size_t min_prefix_size(double min_overlap, std::size_t n) {
    // Guarded ceil so 0.3 * 10 lands on 3, not 4.
    auto k = static_cast<std::size_t>(std::ceil(min_overlap * static_cast<double>(n) - 1e-9));
    return std::clamp<std::size_t>(k, 1, n);
}

struct SubsetFit {
    std::vector<double> data_sel;
    std::vector<double> model_sel;
};

void gather_pairs(const PointSet& data, const PointSet& model, const CorrespondenceSet& corr,
                  const std::vector<std::size_t>& subset, SubsetFit& out) {
    const int dim = data.dim();
    out.data_sel.resize(subset.size() * dim);
    out.model_sel.resize(subset.size() * dim);
    for (std::size_t k = 0; k < subset.size(); ++k) {
        const std::size_t i = subset[k];
        const auto p = data.point(i);
        const auto q = model.point(corr.pairs[i].model_index);
        std::copy(p.begin(), p.end(), out.data_sel.begin() + k * dim);
        std::copy(q.begin(), q.end(), out.model_sel.begin() + k * dim);
    }
}

double subset_squared_sum(const CorrespondenceSet& corr, const std::vector<std::size_t>& subset) {
    double acc = 0.0;
    for (const std::size_t i : subset) {
        const double d = corr.pairs[i].distance;
        acc += d * d;
    }
    return acc;
}

}  // namespace

OverlapSelection scan_overlap(const CorrespondenceSet& correspondences, double normalizer,
                              double lambda, double min_overlap) {
    const std::size_t n = correspondences.size();
    if (n == 0) throw EmptyInputError("cannot select an overlap from zero correspondences");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double da = correspondences.pairs[a].distance;
        const double db = correspondences.pairs[b].distance;
        return da < db || (da == db && a < b);
    });

    const std::size_t n_min = min_prefix_size(min_overlap, n);
    double prefix_sq = 0.0;
    for (std::size_t k = 0; k < n_min; ++k) {
        const double d = correspondences.pairs[order[k]].distance;
        prefix_sq += d * d;
    }

    double best_psi = 0.0;
    double best_mse = 0.0;
    std::size_t best_n = 0;
    for (std::size_t k = n_min; k <= n; ++k) {
        if (k > n_min) {
            const double d = correspondences.pairs[order[k - 1]].distance;
            prefix_sq += d * d;
        }
        const double xi = static_cast<double>(k) / static_cast<double>(n);
        const double mse = prefix_sq / static_cast<double>(k);
        const double psi = mse / (normalizer * std::pow(xi, 1.0 + lambda));
        // <= keeps the largest prefix among psi ties, so a run of
        // zero-residual pairs is retained whole.
        if (best_n == 0 || psi <= best_psi) {
            best_psi = psi;
            best_mse = mse;
            best_n = k;
        }
    }

    OverlapSelection sel;
    sel.xi = static_cast<double>(best_n) / static_cast<double>(n);
    sel.subset.assign(order.begin(), order.begin() + best_n);
    std::sort(sel.subset.begin(), sel.subset.end());
    sel.subset_mse = best_mse;
    sel.psi = best_psi;
    return sel;
}

TrimmedResult run_icp_engine(const PointSet& data, const PointSet& model,
                             const EngineConfig& config) {
    if (data.dim() != model.dim())
        throw DimensionError("data and model point sets have different dimensions");
    if (config.initial.dim() != data.dim())
        throw DimensionError("initial transform dimension does not match the point sets");
    if (config.max_iterations < 1) throw InvalidValueError("max_iterations must be >= 1");

    const auto& ops = kernels::active_ops();
    const int dim = data.dim();
    const std::size_t n = data.size();
    const bool emphasized = config.scale_rule == ScaleRule::scale_emphasized;

    const NearestNeighborIndex index(model);
    SimilarityTransform current = config.initial;
    if (config.scale_bounds) {
        const auto [lo, hi] = *config.scale_bounds;
        const double s0 = std::clamp(current.scale(), lo, hi);
        current = SimilarityTransform(s0, current.rotation(), current.translation());
    }

    TrimmedResult result;
    result.transform = current;
    result.objective_kind =
        emphasized ? ObjectiveKind::scale_normalized : ObjectiveKind::least_squares;
    result.diagnostic = config.diagnostic;

    std::vector<std::size_t> prev_subset(n);
    std::iota(prev_subset.begin(), prev_subset.end(), std::size_t{0});
    double prev_xi = 1.0;
    CorrespondenceSet prev_corr;

    SubsetFit fit;
    std::vector<double> moved;
    double last_subset_ss = 0.0;
    std::size_t last_subset_n = n;

    auto normalizer = [&](double s) { return emphasized ? s * s : 1.0; };
    auto psi_of = [&](double ss, std::size_t count, double xi, double s) {
        return ss / (static_cast<double>(count) * normalizer(s) *
                     std::pow(xi, 1.0 + config.lambda));
    };

    for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
        const double s_prev = current.scale();
        const CorrespondenceSet corr = establish_correspondences(data, current, index);

        // Objective the fresh correspondences give the previous subset,
        // before anything else moves (the e_k of the convergence chain).
        const double incoming_ss = subset_squared_sum(corr, prev_subset);
        const double psi_incoming = psi_of(incoming_ss, prev_subset.size(), prev_xi, s_prev);

        OverlapSelection sel;
        if (config.trimmed) {
            sel = scan_overlap(corr, normalizer(s_prev), config.lambda, config.min_overlap);
        } else {
            sel.xi = 1.0;
            sel.subset = prev_subset;  // all indices
            sel.subset_mse = incoming_ss / static_cast<double>(n);
            sel.psi = psi_incoming;
        }

        if (iter > 1 && corr.same_assignment(prev_corr) && sel.subset == prev_subset) {
            result.termination = Termination::correspondences_unchanged;
            break;
        }

        const double psi_post_trim = sel.psi;
        const double pre_update_ss =
            config.trimmed ? sel.subset_mse * static_cast<double>(sel.subset.size()) : incoming_ss;

        // Closed-form fit on the retained pairs.
        gather_pairs(data, model, corr, sel.subset, fit);
        const std::size_t ns = sel.subset.size();
        Eigen::VectorXd dmean(dim), mmean(dim);
        ops.col_sums(dim, ns, fit.data_sel.data(), dmean.data());
        ops.col_sums(dim, ns, fit.model_sel.data(), mmean.data());
        dmean /= static_cast<double>(ns);
        mmean /= static_cast<double>(ns);
        std::vector<double> dcent(ns * dim), mcent(ns * dim);
        ops.subtract(dim, ns, fit.data_sel.data(), dmean.data(), dcent.data());
        ops.subtract(dim, ns, fit.model_sel.data(), mmean.data(), mcent.data());
        const PointSet dc(dim, std::move(dcent));
        const PointSet mc(dim, std::move(mcent));

        auto rot = estimate_rotation(dc, mc);
        if (rot.degenerate) result.rotation_degenerate = true;

        double s = 0.0;
        try {
            if (emphasized) {
                s = estimate_scale(dc, mc, rot.rotation);
            } else {
                s = estimate_scale_ls(dc, mc, rot.rotation);
            }
        } catch (const DegenerateScaleError& e) {
            if (config.scale_bounds) {
                // The clamp regularizes the collapse; pin to the low bound.
                s = config.scale_bounds->first;
            } else {
                throw DegenerateScaleError(std::string(e.what()), iter);
            }
        }
        if (config.scale_bounds) s = std::clamp(s, config.scale_bounds->first, config.scale_bounds->second);

        const Eigen::VectorXd t = mmean - s * (rot.rotation * dmean);
        current = SimilarityTransform(s, rot.rotation, t);

        // Post-update residuals over the same subset.
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rot_rm =
            rot.rotation;
        moved.resize(ns * dim);
        ops.transform_points(dim, ns, s, rot_rm.data(), t.data(), fit.data_sel.data(),
                             moved.data());
        const double post_ss = ops.sum_sq_diff(dim, ns, moved.data(), fit.model_sel.data());

        const double objective_post = post_ss / normalizer(s);
        const double objective_pre = pre_update_ss / normalizer(s_prev);
        const double psi_post_update = psi_of(post_ss, ns, sel.xi, s);

        result.objective_trace.push_back(objective_post);
        result.steps.push_back({objective_pre, objective_post, s});
        if (config.trimmed) {
            result.psi_trace.push_back(psi_post_update);
            result.trim_steps.push_back({psi_incoming, psi_post_trim, psi_post_update});
        }
        last_subset_ss = post_ss;
        last_subset_n = ns;
        prev_corr = corr;
        prev_subset = std::move(sel.subset);
        prev_xi = sel.xi;

        // Relative-decrease test on the solver's primary objective.
        const auto& primary = config.trimmed ? result.psi_trace : result.objective_trace;
        if (primary.size() >= 2) {
            const double before = primary[primary.size() - 2];
            const double after = primary.back();
            if (before - after < config.objective_rel_tol * before) {
                result.termination = Termination::objective_converged;
                break;
            }
        }
        if (iter == config.max_iterations) result.termination = Termination::max_iterations;
    }

    result.transform = current;
    result.iterations = result.objective_trace.size();
    result.overlap = prev_xi;
    result.overlap_subset = std::move(prev_subset);
    result.final_mse = last_subset_n > 0 ? last_subset_ss / static_cast<double>(last_subset_n) : 0.0;
    return result;
}

}  // namespace sreg::detail
