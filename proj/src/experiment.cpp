#include "sreg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sreg/baselines.hpp"
#include "sreg/errors.hpp"
#include "sreg/point_io.hpp"
#include "sreg/solver.hpp"
#include "sreg/tolerances.hpp"

namespace sreg {

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::scaling_icp: return "scaling_icp";
        case Algorithm::strimmed: return "strimmed";
        case Algorithm::bounded_narrow: return "bounded_narrow";
        case Algorithm::bounded_wide: return "bounded_wide";
        case Algorithm::naive_ls: return "naive_ls";
    }
    return "unknown";
}

std::optional<Algorithm> algorithm_from_string(const std::string& name) {
    if (name == "scaling_icp") return Algorithm::scaling_icp;
    if (name == "strimmed") return Algorithm::strimmed;
    if (name == "bounded_narrow") return Algorithm::bounded_narrow;
    if (name == "bounded_wide") return Algorithm::bounded_wide;
    if (name == "naive_ls") return Algorithm::naive_ls;
    return std::nullopt;
}

void ExperimentSpec::validate() const {
    if (trials < 1) throw InvalidValueError("trials must be >= 1");
    if (algorithms.empty()) throw InvalidValueError("at least one algorithm is required");
    if (init_policy != "centroid" && init_policy != "pca")
        throw InvalidValueError("init_policy must be 'centroid' or 'pca'");
    if (static_cast<bool>(data_path) != static_cast<bool>(model_path))
        throw InvalidValueError("dataset mode needs both data and model paths");
    solver.validate();
    if (!data_path) synthetic.validate();
}

namespace {

bool trace_is_monotone(const std::vector<double>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i] > trace[i - 1] + tol::kMonotonicitySlack) return false;
    return true;
}

SimilarityTransform make_init(const PointSet& data, const PointSet& model, double scale) {
    const Eigen::VectorXd t = centroid(model) - scale * centroid(data);
    return {scale, Eigen::MatrixXd::Identity(data.dim(), data.dim()), t};
}

struct SolveOutcome {
    TrimmedResult result;  // scaling/naive results live here with empty trim fields
    bool has_overlap = false;
};

SolveOutcome dispatch(Algorithm algorithm, const ExperimentSpec& spec, const PointSet& data,
                      const PointSet& model) {
    TrimConfig cfg = spec.solver;

    const double pca_s =
        (algorithm == Algorithm::bounded_narrow || algorithm == Algorithm::bounded_wide ||
         spec.init_policy == "pca")
            ? pca_scale_estimate(data, model)
            : 1.0;
    const double init_scale = spec.init_policy == "pca" ? pca_s : 1.0;

    SolveOutcome out;
    switch (algorithm) {
        case Algorithm::scaling_icp: {
            cfg.initial_transform = make_init(data, model, init_scale);
            static_cast<RegistrationResult&>(out.result) = run_scaling_icp(data, model, cfg);
            break;
        }
        case Algorithm::naive_ls: {
            cfg.initial_transform = make_init(data, model, init_scale);
            static_cast<RegistrationResult&>(out.result) = run_naive_ls_icp(data, model, cfg);
            break;
        }
        case Algorithm::strimmed: {
            cfg.initial_transform = make_init(data, model, init_scale);
            out.result = run_strimmed_icp(data, model, cfg);
            out.has_overlap = true;
            break;
        }
        case Algorithm::bounded_narrow:
        case Algorithm::bounded_wide: {
            // Bounds follow the comparison protocol: a tight and a loose
            // band around the spread-ratio estimate.
            const bool narrow = algorithm == Algorithm::bounded_narrow;
            const ScaleBounds bounds = narrow ? ScaleBounds{0.9 * pca_s, 1.1 * pca_s}
                                              : ScaleBounds{0.5 * pca_s, 2.0 * pca_s};
            cfg.initial_transform = make_init(data, model, pca_s);
            out.result = run_bounded_tricp(data, model, cfg, bounds);
            out.has_overlap = true;
            break;
        }
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double m = values[mid];
    if (values.size() % 2 == 0) {
        const double lo = *std::max_element(values.begin(), values.begin() + mid);
        m = 0.5 * (lo + m);
    }
    return m;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
    spec.validate();

    std::optional<PointSet> fixed_data, fixed_model;
    if (spec.data_path) {
        fixed_data = load_point_set(*spec.data_path);
        fixed_model = load_point_set(*spec.model_path);
    }

    ExperimentOutput out;
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
        std::optional<GeneratedCase> synthetic_case;
        const PointSet* data = nullptr;
        const PointSet* model = nullptr;
        if (fixed_data) {
            data = &*fixed_data;
            model = &*fixed_model;
        } else {
            synthetic_case = generate_case(spec.synthetic, spec.seed, trial);
            data = &synthetic_case->data;
            model = &synthetic_case->model;
        }
        const double diameter = bounding_diameter(*model);

        for (const Algorithm algorithm : spec.algorithms) {
            TrialRecord rec;
            rec.algorithm = algorithm;
            rec.trial = trial;
            try {
                const auto start = std::chrono::steady_clock::now();
                const SolveOutcome solved = dispatch(algorithm, spec, *data, *model);
                const auto stop = std::chrono::steady_clock::now();
                const TrimmedResult& r = solved.result;

                rec.wall_seconds = std::chrono::duration<double>(stop - start).count();
                rec.final_mse = r.final_mse;
                rec.iterations = r.iterations;
                rec.scale = r.transform.scale();
                rec.xi = solved.has_overlap ? r.overlap : 1.0;
                rec.termination = to_string(r.termination);
                rec.trace_monotone = trace_is_monotone(r.objective_trace) &&
                                     (r.psi_trace.empty() || trace_is_monotone(r.psi_trace));

                if (synthetic_case) {
                    const SimilarityTransform& truth = synthetic_case->truth;
                    rec.scale_rel_error =
                        std::abs(r.transform.scale() - truth.scale()) / truth.scale();
                    rec.rotation_error_rad =
                        rotation_angle_between(r.transform.rotation(), truth.rotation());
                    rec.translation_rel_error =
                        (r.transform.translation() - truth.translation()).norm() / diameter;
                    rec.xi_error = std::abs(rec.xi - synthetic_case->true_xi);
                }

                // One row per iteration of the solver's own objective.
                const std::vector<double>& primary =
                    r.psi_trace.empty() ? r.objective_trace : r.psi_trace;
                for (std::size_t it = 0; it < primary.size(); ++it)
                    out.traces.push_back(
                        {algorithm, trial, it + 1, primary[it], r.steps[it].scale});
            } catch (const Error& e) {
                rec.failed = true;
                rec.error = e.what();
            }
            out.records.push_back(std::move(rec));
        }
    }

    // Per-algorithm summaries.
    for (const Algorithm algorithm : spec.algorithms) {
        AlgorithmSummary s;
        s.algorithm = algorithm;
        std::vector<double> mses;
        for (const TrialRecord& rec : out.records) {
            if (rec.algorithm != algorithm) continue;
            if (rec.failed) {
                ++s.failed;
                continue;
            }
            ++s.completed;
            s.mean_mse += rec.final_mse;
            s.mean_seconds += rec.wall_seconds;
            s.mean_scale_rel_error += rec.scale_rel_error;
            mses.push_back(rec.final_mse);
            if (!rec.trace_monotone &&
                (algorithm == Algorithm::scaling_icp || algorithm == Algorithm::strimmed))
                ++s.monotonicity_violations;
        }
        if (s.completed > 0) {
            s.mean_mse /= static_cast<double>(s.completed);
            s.mean_seconds /= static_cast<double>(s.completed);
            s.mean_scale_rel_error /= static_cast<double>(s.completed);
        }
        s.median_mse = median(std::move(mses));
        out.summaries.push_back(s);
    }
    return out;
}

ExperimentSpec parse_experiment_config(std::istream& in) {
    ExperimentSpec spec;
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        const std::size_t line_offset = offset;
        offset += line.size() + 1;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ParseError("expected 'key = value'", line_offset);
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("empty key or value", line_offset);

        auto as_double = [&](const char* what) {
            try {
                return std::stod(value);
            } catch (const std::exception&) {
                throw ParseError(std::string("bad number for ") + what, line_offset);
            }
        };
        auto as_size = [&](const char* what) {
            const double v = as_double(what);
            if (v < 0 || v != std::floor(v))
                throw ParseError(std::string("expected a nonnegative integer for ") + what,
                                 line_offset);
            return static_cast<std::size_t>(v);
        };

        if (key == "dim") spec.synthetic.dim = static_cast<int>(as_size("dim"));
        else if (key == "shape") spec.synthetic.shape = value;
        else if (key == "points") spec.synthetic.points = as_size("points");
        else if (key == "scale_min") spec.synthetic.scale_min = as_double("scale_min");
        else if (key == "scale_max") spec.synthetic.scale_max = as_double("scale_max");
        else if (key == "rot_max") spec.synthetic.rotation_max = as_double("rot_max");
        else if (key == "trans_max") spec.synthetic.translation_max = as_double("trans_max");
        else if (key == "occlusion") spec.synthetic.occlusion = as_double("occlusion");
        else if (key == "noise_sigma") spec.synthetic.noise_sigma = as_double("noise_sigma");
        else if (key == "trials") spec.trials = as_size("trials");
        else if (key == "seed") spec.seed = as_size("seed");
        else if (key == "lambda") spec.solver.lambda = as_double("lambda");
        else if (key == "min_overlap") spec.solver.min_overlap = as_double("min_overlap");
        else if (key == "max_iters") spec.solver.max_iterations = as_size("max_iters");
        else if (key == "tol") spec.solver.objective_rel_tol = as_double("tol");
        else if (key == "init") spec.init_policy = value;
        else if (key == "data") spec.data_path = value;
        else if (key == "model") spec.model_path = value;
        else if (key == "algorithms") {
            spec.algorithms.clear();
            std::stringstream ss(value);
            std::string name;
            while (std::getline(ss, name, ',')) {
                name = trim(name);
                const auto a = algorithm_from_string(name);
                if (!a) throw ParseError("unknown algorithm '" + name + "'", line_offset);
                spec.algorithms.push_back(*a);
            }
        } else {
            throw ParseError("unknown config key '" + key + "'", line_offset);
        }
    }
    return spec;
}

ExperimentSpec load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return parse_experiment_config(in);
}

void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out, bool timing) {
    out << "algorithm,trial,status,error,final_mse,wall_seconds,iterations,scale,xi,"
           "termination,trace_monotone,scale_rel_error,rotation_error_rad,"
           "translation_rel_error,xi_error\n";
    for (const TrialRecord& r : records) {
        out << to_string(r.algorithm) << ',' << r.trial << ','
            << (r.failed ? "failed" : "ok") << ',' << '"' << r.error << '"' << ','
            << fmt(r.final_mse) << ',' << (timing ? fmt(r.wall_seconds) : std::string("0")) << ','
            << r.iterations << ',' << fmt(r.scale) << ',' << fmt(r.xi) << ',' << r.termination
            << ',' << (r.trace_monotone ? 1 : 0) << ',' << fmt(r.scale_rel_error) << ','
            << fmt(r.rotation_error_rad) << ',' << fmt(r.translation_rel_error) << ','
            << fmt(r.xi_error) << '\n';
    }
}

void write_traces_csv(const std::vector<TraceRow>& traces, std::ostream& out) {
    out << "algorithm,trial,iteration,objective,scale\n";
    for (const TraceRow& t : traces) {
        out << to_string(t.algorithm) << ',' << t.trial << ',' << t.iteration << ','
            << fmt(t.objective) << ',' << fmt(t.scale) << '\n';
    }
}

std::string summaries_to_json(const std::vector<AlgorithmSummary>& summaries) {
    nlohmann::json j = nlohmann::json::array();
    for (const AlgorithmSummary& s : summaries) {
        j.push_back({{"algorithm", to_string(s.algorithm)},
                     {"completed", s.completed},
                     {"failed", s.failed},
                     {"mean_mse", s.mean_mse},
                     {"median_mse", s.median_mse},
                     {"mean_seconds", s.mean_seconds},
                     {"mean_scale_rel_error", s.mean_scale_rel_error},
                     {"monotonicity_violations", s.monotonicity_violations}});
    }
    return j.dump(2);
}

}  // namespace sreg
