// sreg - scaling registration of point sets and occupancy-grid map merging.
//
// Subcommands:
//   register      full-overlap scaling ICP between two point-set files
//   trim-register partial-overlap (trimmed) variant, optionally bounded
//   merge-maps    align two PGM occupancy grids and composite them
//   bench         Monte-Carlo experiment runner driven by a config file
//
// Exit codes: 0 success, 2 parse error, 3 registration degeneracy,
// 4 merge rejected.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sreg/baselines.hpp"
#include "sreg/errors.hpp"
#include "sreg/experiment.hpp"
#include "sreg/map_merge.hpp"
#include "sreg/point_io.hpp"
#include "sreg/solver.hpp"
#include "sreg/trimmed.hpp"

namespace {

using namespace sreg;

struct InitSpec {
    std::vector<double> values;  // s, rot, tx, ty [, tz]
};

SimilarityTransform parse_init(const std::vector<double>& v, int dim) {
    if (dim == 2 && v.size() != 4)
        throw ParseError("--init for 2-D data needs s,rot,tx,ty", 0);
    if (dim == 3 && v.size() != 5)
        throw ParseError("--init for 3-D data needs s,rot,tx,ty,tz", 0);
    if (dim > 3) throw ParseError("--init supports dim 2 and 3", 0);
    const double s = v[0];
    const double angle = v[1];
    Eigen::MatrixXd rot;
    Eigen::VectorXd t(dim);
    if (dim == 2) {
        rot = rotation2d(angle);
        t << v[2], v[3];
    } else {
        rot = rotation3d(Eigen::Vector3d::UnitZ(), angle);  // single angle: about z
        t << v[2], v[3], v[4];
    }
    return {s, rot, t};
}

nlohmann::json transform_to_json(const SimilarityTransform& t) {
    nlohmann::json rot = nlohmann::json::array();
    for (int r = 0; r < t.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < t.dim(); ++c) row.push_back(t.rotation()(r, c));
        rot.push_back(row);
    }
    nlohmann::json trans = nlohmann::json::array();
    for (int c = 0; c < t.dim(); ++c) trans.push_back(t.translation()(c));
    return {{"dim", t.dim()}, {"scale", t.scale()}, {"rotation", rot}, {"translation", trans}};
}

void write_result_files(const RegistrationResult& result, const std::string& prefix,
                        const std::vector<double>* psi_trace, double overlap) {
    nlohmann::json j = {{"transform", transform_to_json(result.transform)},
                        {"iterations", result.iterations},
                        {"termination", to_string(result.termination)},
                        {"final_mse", result.final_mse},
                        {"objective", to_string(result.objective_kind)},
                        {"diagnostic", result.diagnostic}};
    if (psi_trace) j["overlap"] = overlap;
    {
        std::ofstream out(prefix + ".transform.json");
        if (!out) throw Error("cannot write " + prefix + ".transform.json");
        out << j.dump(2) << '\n';
    }
    {
        std::ofstream out(prefix + ".trace.csv");
        if (!out) throw Error("cannot write " + prefix + ".trace.csv");
        out << "iteration,objective,scale";
        if (psi_trace) out << ",psi";
        out << '\n';
        char buf[40];
        for (std::size_t i = 0; i < result.objective_trace.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", result.objective_trace[i]);
            out << (i + 1) << ',' << buf;
            std::snprintf(buf, sizeof buf, "%.17g", result.steps[i].scale);
            out << ',' << buf;
            if (psi_trace) {
                std::snprintf(buf, sizeof buf, "%.17g", (*psi_trace)[i]);
                out << ',' << buf;
            }
            out << '\n';
        }
    }
}

void print_summary(const RegistrationResult& result) {
    std::cout << "scale " << result.transform.scale() << ", iterations " << result.iterations
              << ", final mse " << result.final_mse << ", termination "
              << to_string(result.termination) << '\n';
}

struct CommonFlags {
    std::size_t max_iters = 100;
    double tol = 1e-10;
    std::vector<double> init;
    std::string output = "sreg_out";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--max-iters", flags.max_iters, "Iteration cap");
    cmd->add_option("--tol", flags.tol, "Relative objective-decrease tolerance");
    cmd->add_option("--init", flags.init,
                    "Initial transform s,rot,tx,ty[,tz] (rot in radians; about z for 3-D)")
        ->delimiter(',');
    cmd->add_option("-o,--output", flags.output, "Output file prefix");
}

SimilarityTransform resolve_init(const CommonFlags& flags, const PointSet& data,
                                 const PointSet& model) {
    if (flags.init.empty()) return centroid_prealignment(data, model);
    return parse_init(flags.init, data.dim());
}

int run_register(const std::string& data_path, const std::string& model_path,
                 const CommonFlags& flags, bool naive) {
    const PointSet data = load_point_set(data_path);
    const PointSet model = load_point_set(model_path);
    SolverConfig cfg;
    cfg.max_iterations = flags.max_iters;
    cfg.objective_rel_tol = flags.tol;
    cfg.initial_transform = resolve_init(flags, data, model);
    const RegistrationResult result =
        naive ? run_naive_ls_icp(data, model, cfg) : run_scaling_icp(data, model, cfg);
    write_result_files(result, flags.output, nullptr, 1.0);
    print_summary(result);
    return 0;
}

int run_trim_register(const std::string& data_path, const std::string& model_path,
                      const CommonFlags& flags, double lambda, double min_overlap,
                      const std::vector<double>& bounds) {
    const PointSet data = load_point_set(data_path);
    const PointSet model = load_point_set(model_path);
    TrimConfig cfg;
    cfg.max_iterations = flags.max_iters;
    cfg.objective_rel_tol = flags.tol;
    cfg.lambda = lambda;
    cfg.min_overlap = min_overlap;
    cfg.initial_transform = resolve_init(flags, data, model);

    TrimmedResult result;
    if (!bounds.empty()) {
        if (bounds.size() != 2) throw ParseError("--bounds needs exactly lo,hi", 0);
        result = run_bounded_tricp(data, model, cfg, ScaleBounds{bounds[0], bounds[1]});
    } else {
        result = run_strimmed_icp(data, model, cfg);
    }
    write_result_files(result, flags.output, &result.psi_trace, result.overlap);
    std::cout << "overlap " << result.overlap << ", ";
    print_summary(result);
    return 0;
}

int run_merge(const std::string& ref_path, const std::string& other_path,
              const CommonFlags& flags, double lambda, double min_overlap, int occ_thresh,
              int free_thresh, double ref_res, double other_res, double merge_bound) {
    GridThresholds thresholds{occ_thresh, free_thresh};
    const OccupancyGrid reference = load_pgm(ref_path, thresholds, ref_res);
    const OccupancyGrid other = load_pgm(other_path, thresholds, other_res);

    MergeConfig cfg;
    cfg.solver.max_iterations = flags.max_iters;
    cfg.solver.objective_rel_tol = flags.tol;
    cfg.solver.lambda = lambda;
    cfg.solver.min_overlap = min_overlap;
    cfg.mse_sanity_cells = merge_bound;

    const SimilarityTransform init = flags.init.empty()
                                         ? estimate_merge_init(reference, other)
                                         : parse_init(flags.init, 2);
    const auto [merged, report] = merge_maps(reference, other, cfg, init);
    save_pgm(merged, flags.output + ".merged.pgm");
    {
        std::ofstream out(flags.output + ".report.json");
        if (!out) throw Error("cannot write report");
        out << report.to_json() << '\n';
    }
    std::cout << "merged " << merged.width << "x" << merged.height << " @ "
              << report.output_resolution << " m/cell, scale " << report.scale << ", overlap "
              << report.overlap << '\n';
    return 0;
}

int run_bench(const std::string& config_path, const std::string& outdir,
              std::optional<std::uint64_t> seed_override) {
    ExperimentSpec spec = load_experiment_config(config_path);
    if (seed_override) spec.seed = *seed_override;
    const ExperimentOutput out = run_experiment(spec);

    std::filesystem::create_directories(outdir);
    {
        std::ofstream f(outdir + "/trials.csv");
        write_records_csv(out.records, f);
    }
    {
        std::ofstream f(outdir + "/traces.csv");
        write_traces_csv(out.traces, f);
    }
    {
        std::ofstream f(outdir + "/summary.json");
        f << summaries_to_json(out.summaries) << '\n';
    }
    std::size_t violations = 0;
    for (const auto& s : out.summaries) {
        std::cout << to_string(s.algorithm) << ": " << s.completed << " ok, " << s.failed
                  << " failed, mean mse " << s.mean_mse << ", mean time " << s.mean_seconds
                  << " s\n";
        violations += s.monotonicity_violations;
    }
    if (violations > 0) {
        std::cerr << "BUG: " << violations
                  << " monotonicity violation(s) in scaling/trimmed traces\n";
        return 1;
    }
    std::cout << "wrote " << outdir << "/trials.csv, traces.csv, summary.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scaling registration of m-D point sets and grid-map merging"};
    app.require_subcommand(1);

    // register
    auto* reg = app.add_subcommand("register", "Full-overlap scaling ICP");
    std::string data_path, model_path;
    CommonFlags reg_flags;
    bool naive = false;
    reg->add_option("data", data_path, "Data shape file")->required();
    reg->add_option("model", model_path, "Model shape file")->required();
    add_common(reg, reg_flags);
    reg->add_flag("--naive", naive, "Use the unregularized LS scale (collapse diagnostic)");

    // trim-register
    auto* trim = app.add_subcommand("trim-register", "Partial-overlap scaling ICP");
    std::string tdata, tmodel;
    CommonFlags trim_flags;
    double lambda = 2.0, min_overlap = 0.3;
    std::vector<double> bounds;
    trim->add_option("data", tdata, "Data shape file")->required();
    trim->add_option("model", tmodel, "Model shape file")->required();
    add_common(trim, trim_flags);
    trim->add_option("--lambda", lambda, "Overlap exponent weight");
    trim->add_option("--min-overlap", min_overlap, "Smallest admissible overlap fraction");
    trim->add_option("--bounds", bounds, "Clamp the scale to lo,hi (bounded baseline)")
        ->delimiter(',');

    // merge-maps
    auto* merge = app.add_subcommand("merge-maps", "Merge two PGM occupancy grids");
    std::string ref_path, other_path;
    CommonFlags merge_flags;
    double mlambda = 2.0, mmin_overlap = 0.3;
    int occ_thresh = 64, free_thresh = 192;
    double ref_res = 1.0, other_res = 1.0, merge_bound = 25.0;
    merge->add_option("reference", ref_path, "Reference map (PGM)")->required();
    merge->add_option("other", other_path, "Map to merge in (PGM)")->required();
    add_common(merge, merge_flags);
    merge->add_option("--lambda", mlambda, "Overlap exponent weight");
    merge->add_option("--min-overlap", mmin_overlap, "Smallest admissible overlap fraction");
    merge->add_option("--occ-thresh", occ_thresh, "Gray value at or below which a cell is occupied");
    merge->add_option("--free-thresh", free_thresh, "Gray value at or above which a cell is free");
    merge->add_option("--ref-res", ref_res, "Reference map resolution (m/cell)");
    merge->add_option("--other-res", other_res, "Other map resolution (m/cell)");
    merge->add_option("--merge-bound", merge_bound,
                      "Reject when final MSE exceeds this many squared reference cells");

    // bench
    auto* bench = app.add_subcommand("bench", "Monte-Carlo benchmark runner");
    std::string config_path, outdir = "bench_out";
    std::uint64_t bench_seed = 0;
    bool seed_set = false;
    bench->add_option("config", config_path, "Experiment config (key = value)")->required();
    bench->add_option("-o,--output", outdir, "Output directory");
    bench->add_option("--seed", bench_seed, "Override the config seed")
        ->each([&](const std::string&) { seed_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // CLI11 returns 0 for --help; anything else is a usage/parse error.
        return code == 0 ? 0 : 2;
    }

    try {
        if (reg->parsed()) return run_register(data_path, model_path, reg_flags, naive);
        if (trim->parsed())
            return run_trim_register(tdata, tmodel, trim_flags, lambda, min_overlap, bounds);
        if (merge->parsed())
            return run_merge(ref_path, other_path, merge_flags, mlambda, mmin_overlap, occ_thresh,
                             free_thresh, ref_res, other_res, merge_bound);
        if (bench->parsed())
            return run_bench(config_path, outdir,
                             seed_set ? std::optional<std::uint64_t>(bench_seed) : std::nullopt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const MergeRejectedError& e) {
        std::cerr << "merge rejected: " << e.what() << '\n';
        std::cerr << e.report.to_json() << '\n';
        return 4;
    } catch (const DegenerateScaleError& e) {
        std::cerr << "registration degeneracy: " << e.what() << '\n';
        return 3;
    } catch (const DegenerateShapeError& e) {
        std::cerr << "registration degeneracy: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
