#include "dopoq/ensemble.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <memory>
#include <sstream>

#include "dopoq/checkpoint.hpp"
#include "dopoq/errors.hpp"

namespace dopoq {

namespace {

RngStream stream_for(std::uint64_t master_seed, int trajectory) {
    RngStream rng(master_seed);
    for (int j = 0; j < trajectory; ++j) rng.long_jump();
    return rng;
}

} // namespace

EnsembleResult run_ensemble_impl(const RunConfig& cfg, bool artifacts) {
    cfg.params.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Grid grid = build_grid(cfg.params);
    const auto& backend = kernels::select_backend(cfg.kernel);
    const Integrator integrator(cfg.params, grid, backend);
    ModeProjector project(cfg.params, grid, backend);

    namespace fs = std::filesystem;
    if (artifacts) fs::create_directories(cfg.out_dir);

    EnsembleResult result;
    MomentAccumulator total(cfg.params, grid);
    int completed = 0;

    for (int j = 0; j < cfg.n_trajectories; ++j) {
        RngStream rng = stream_for(cfg.params.seed, j);
        FieldState init = make_initial_condition(
            cfg.params.init_kind, cfg.params, grid,
            [&rng]() { return rng.next_normal(); });

        MomentAccumulator acc(cfg.params, grid);
        std::unique_ptr<CheckpointWriter> ckpt;
        if (artifacts && cfg.snapshot_stride > 0.0) {
            const std::string path = (fs::path(cfg.out_dir) /
                                      ("trajectory" + std::to_string(j) + ".ckpt"))
                                         .string();
            ckpt = std::make_unique<CheckpointWriter>(path, cfg.params);
        }
        double next_snapshot = 0.0;
        auto sampler = [&](const FieldState& state) {
            acc.accumulate(project(state));
            if (ckpt && state.time >= next_snapshot) {
                ckpt->append(state);
                next_snapshot = state.time + cfg.snapshot_stride;
            }
        };
        const TrajectoryOutcome outcome =
            integrator.run_trajectory(std::move(init), rng, sampler);
        result.outcomes.push_back(outcome);
        result.total_steps += outcome.steps_taken;
        if (outcome.status == TrajectoryStatus::completed) {
            acc.close_block();
            total.merge(acc);
            ++completed;
        }
    }

    const int rejected = cfg.n_trajectories - completed;
    if (completed == 0)
        throw AllTrajectoriesRejected(
            "all " + std::to_string(cfg.n_trajectories) +
            " trajectories hit the diffusion-positivity guard");

    result.report = build_report(total, cfg, cfg.n_trajectories, rejected);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    if (artifacts) {
        write_file((fs::path(cfg.out_dir) / "spectra.csv").string(),
                   spectra_csv(result.report));
        write_file((fs::path(cfg.out_dir) / "report.json").string(),
                   report_json(result.report));
        std::ostringstream log;
        log << "config_hash " << result.report.hash << '\n'
            << "trajectories " << cfg.n_trajectories << '\n'
            << "rejected " << rejected << '\n'
            << "samples " << result.report.samples << '\n'
            << "steps " << result.total_steps << '\n'
            << "wall_seconds " << result.wall_seconds << '\n'
            << "steps_per_second "
            << (result.wall_seconds > 0
                    ? static_cast<double>(result.total_steps) / result.wall_seconds
                    : 0.0)
            << '\n';
        if (std::isfinite(result.report.autocorr_time))
            log << "autocorr_time " << result.report.autocorr_time << '\n';
        write_file((fs::path(cfg.out_dir) / "run.log").string(), log.str());
    }
    return result;
}

EnsembleResult run_ensemble(const RunConfig& cfg) {
    return run_ensemble_impl(cfg, false);
}

EnsembleResult run_ensemble_to_dir(const RunConfig& cfg) {
    return run_ensemble_impl(cfg, true);
}

} // namespace dopoq
