#pragma once

#include "ddopt/algorithms/trajectory.hpp"
#include "ddopt/harness/config.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace ddopt {

struct RunRecord {
    std::string run_id;
    double sweep_value = 0.0;  // NaN without a sweep
    std::uint64_t seed = 0;
    Trajectory traj;
    std::string error;  // non-empty when the run threw
};

struct SummaryRow {
    double sweep_value = 0.0;
    std::int64_t t = 0;
    std::int64_t runs = 0;
    double dist_sq_mean = 0.0;
    double dist_sq_se = 0.0;
    double gap_mean = 0.0;
    double gap_se = 0.0;
    std::int64_t samples_total = 0;
    std::int64_t deployments_total = 0;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;  // sorted by (sweep index, seed)
    std::vector<SummaryRow> summary;
    std::vector<std::string> trajectory_files;
    std::string summary_file;
};

// Runs every (sweep point, seed) pair. When out_dir is non-empty, writes one trajectory CSV per run and
// summary.csv. Output is deterministic for a given config and seed offset.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, cfg.run.out_dir); }

// Reference for a problem: certified equilibrium when possible, otherwise the algebraic fixed point,
// then plain repeated minimization that settles without a certificate, otherwise null.
std::shared_ptr<const Reference> reference_for(const DecisionProblem& p, std::int64_t gap_samples);

void write_trajectory_csv(std::ostream& os, const std::string& run_id, const Trajectory& traj);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs);

// Parsed trajectory CSV row.
struct CsvRow {
    std::string run_id;
    std::string algo;
    std::int64_t t = 0;
    std::int64_t samples = 0;
    std::int64_t deployments = 0;
    double dist_sq = 0.0;
    double gap = 0.0;
    double gap_se = 0.0;
    double eta = 0.0;
};
std::vector<CsvRow> read_trajectory_csv(const std::string& path);

// Runs f(i) for i in [0, n) on up to `threads` workers (0 = hardware concurrency). Rethrows the first error.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

}  // namespace ddopt
