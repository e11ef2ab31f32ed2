#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sreg/synthetic.hpp"
#include "sreg/trimmed.hpp"

namespace sreg {

enum class Algorithm { scaling_icp, strimmed, bounded_narrow, bounded_wide, naive_ls };

const char* to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(const std::string& name);

struct ExperimentSpec {
    SyntheticSpec synthetic;
    // When both are set, the shape pair is loaded from disk instead of
    // generated; the sampled transform/occlusion/noise still apply.
    std::optional<std::string> data_path;
    std::optional<std::string> model_path;

    std::size_t trials = 20;
    std::uint64_t seed = 1;
    std::vector<Algorithm> algorithms{Algorithm::scaling_icp, Algorithm::strimmed};

    TrimConfig solver;
    // "centroid": unit scale + centroid alignment.  "pca": spread-ratio
    // scale + centroid alignment.
    std::string init_policy = "centroid";

    void validate() const;
};

struct TrialRecord {
    Algorithm algorithm = Algorithm::scaling_icp;
    std::size_t trial = 0;
    bool failed = false;
    std::string error;        // nonempty iff failed
    double final_mse = 0.0;   // mean form
    double wall_seconds = 0.0;
    std::size_t iterations = 0;
    double scale = 1.0;
    double xi = 1.0;
    std::string termination;
    bool trace_monotone = true;
    // Ground-truth errors (meaningful for synthetic cases).
    double scale_rel_error = 0.0;
    double rotation_error_rad = 0.0;
    double translation_rel_error = 0.0;  // scaled by scene diameter
    double xi_error = 0.0;
};

struct AlgorithmSummary {
    Algorithm algorithm;
    std::size_t completed = 0;
    std::size_t failed = 0;
    double mean_mse = 0.0;
    double median_mse = 0.0;
    double mean_seconds = 0.0;
    double mean_scale_rel_error = 0.0;
    std::size_t monotonicity_violations = 0;
};

struct TraceRow {
    Algorithm algorithm;
    std::size_t trial;
    std::size_t iteration;
    double objective;  // the solver's own traced objective
    double scale;
};

struct ExperimentOutput {
    std::vector<TrialRecord> records;
    std::vector<AlgorithmSummary> summaries;
    std::vector<TraceRow> traces;
};

// Runs every configured algorithm on every trial; individual failures are
// recorded and the experiment continues.  Also checks each scaling-ICP and
// trimmed trace for monotonicity and flags violations in the records.
ExperimentOutput run_experiment(const ExperimentSpec& spec);

// Flat key = value config text; '#' starts a comment.  Unknown keys raise
// ParseError.
ExperimentSpec parse_experiment_config(std::istream& in);
ExperimentSpec load_experiment_config(const std::filesystem::path& path);

// timing=false zeroes the wall-clock column so byte-level determinism can
// be checked on the rest.
void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out,
                       bool timing = true);
void write_traces_csv(const std::vector<TraceRow>& traces, std::ostream& out);
std::string summaries_to_json(const std::vector<AlgorithmSummary>& summaries);

}  // namespace sreg
