#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dopoq/config.hpp"
#include "dopoq/report.hpp"

namespace dopoq {

struct EnsembleResult {
    SpectraReport report;
    std::vector<TrajectoryOutcome> outcomes;
    std::uint64_t total_steps = 0;
    double wall_seconds = 0;
};

// Runs cfg.n_trajectories independent trajectories and merges their
// statistics in trajectory order, so the result is deterministic in
// (config, seed).  Stream j is the master seed advanced by j long-jumps.
// Rejected trajectories contribute no samples; throws
// AllTrajectoriesRejected when none complete.
EnsembleResult run_ensemble(const RunConfig& cfg);

// run_ensemble plus artifacts under cfg.out_dir: spectra.csv, report.json,
// run.log (timings live here only) and, when snapshot_stride > 0,
// trajectory<j>.ckpt snapshot records.
EnsembleResult run_ensemble_to_dir(const RunConfig& cfg);

} // namespace dopoq
