// Batch front-end: run ensembles, reproduce figure presets, recompute
// spectra from checkpoint files, and calibrate the shot-noise normalization
// with a vacuum run.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dopoq/checkpoint.hpp"
#include "dopoq/ensemble.hpp"
#include "dopoq/errors.hpp"

namespace fs = std::filesystem;
using namespace dopoq;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trajectories;
    std::optional<std::string> out;
    std::optional<std::string> kernel;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_config = true) {
    if (with_config)
        cmd->add_option("--config", opts.config_path,
                        "Config file (key = value lines)");
    cmd->add_option("--seed", opts.seed, "Override the master RNG seed");
    cmd->add_option("--trajectories", opts.trajectories,
                    "Override the trajectory count");
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_option("--kernel", opts.kernel,
                    "Kernel backend: auto, scalar or avx2");
}

RunConfig resolve(const CommonOpts& opts) {
    RunConfig cfg = opts.config_path.empty() ? RunConfig{}
                                             : load_config(opts.config_path);
    if (opts.seed) cfg.params.seed = *opts.seed;
    if (opts.trajectories) cfg.n_trajectories = *opts.trajectories;
    if (opts.out) cfg.out_dir = *opts.out;
    if (opts.kernel) cfg.kernel = *opts.kernel;
    cfg.params.validate();
    return cfg;
}

void print_summary(const EnsembleResult& res) {
    const auto& rep = res.report;
    std::printf("wrote %s: %d trajectories (%d rejected), %llu samples, "
                "%.1f s\n",
                rep.config.out_dir.c_str(), rep.n_trajectories, rep.rejected,
                static_cast<unsigned long long>(rep.samples),
                res.wall_seconds);
    if (rep.partial)
        std::printf("warning: partial results (rejected trajectories "
                    "excluded from statistics)\n");
}

int cmd_run(const CommonOpts& opts) {
    const RunConfig cfg = resolve(opts);
    print_summary(run_ensemble_to_dir(cfg));
    return 0;
}

int cmd_preset(const std::string& name, bool list, const CommonOpts& opts) {
    if (list || name.empty()) {
        for (const auto& n : preset_names()) std::printf("%s\n", n.c_str());
        return 0;
    }
    const Preset ps = preset(name);
    std::printf("%s: %s\n", ps.name.c_str(), ps.note.c_str());
    const std::string root = opts.out.value_or(".");
    for (RunConfig cfg : ps.runs) {
        cfg.out_dir = (fs::path(root) / cfg.out_dir).string();
        if (opts.seed) cfg.params.seed = *opts.seed;
        if (opts.trajectories) cfg.n_trajectories = *opts.trajectories;
        if (opts.kernel) cfg.kernel = *opts.kernel;
        print_summary(run_ensemble_to_dir(cfg));
    }
    return 0;
}

int cmd_analyze(const std::vector<std::string>& files, const CommonOpts& opts) {
    RunConfig cfg = opts.config_path.empty() ? RunConfig{}
                                             : load_config(opts.config_path);
    if (opts.out) cfg.out_dir = *opts.out;

    std::optional<MomentAccumulator> total;
    std::optional<Grid> grid;
    for (const auto& path : files) {
        CheckpointReader reader(path);
        cfg.params = reader.params_from_header(cfg.params);
        cfg.params.validate();
        if (!grid) {
            grid = build_grid(cfg.params);
            total.emplace(cfg.params, *grid);
        } else if (static_cast<int>(reader.header().n) != grid->n) {
            throw InvalidParameter("checkpoint lattice size mismatch: " + path);
        }
        MomentAccumulator acc(cfg.params, *grid);
        ModeProjector project(cfg.params, *grid);
        FieldState state;
        while (reader.next(state)) acc.accumulate(project(state));
        acc.close_block();
        total->merge(acc);
    }
    if (!total || total->sample_count() == 0)
        throw NumericalFailure("no samples found in the given checkpoints");

    const SpectraReport rep =
        build_report(*total, cfg, static_cast<int>(files.size()), 0);
    fs::create_directories(cfg.out_dir);
    write_file((fs::path(cfg.out_dir) / "spectra.csv").string(),
               spectra_csv(rep));
    write_file((fs::path(cfg.out_dir) / "report.json").string(),
               report_json(rep));
    std::printf("wrote %s: %llu samples from %zu checkpoint file(s)\n",
                cfg.out_dir.c_str(),
                static_cast<unsigned long long>(rep.samples), files.size());
    return 0;
}

int cmd_calibrate(const CommonOpts& opts, double t_total) {
    RunConfig cfg = resolve(opts);
    cfg.params.pump_E = 0.0;
    cfg.params.init_kind = InitKind::noise;
    cfg.params.t_total = t_total;
    cfg.snapshot_stride = 0.0;
    const EnsembleResult res = run_ensemble_to_dir(cfg);

    // In vacuum every mode must sit at the shot-noise level <|beta_k|^2> = 1,
    // i.e. a normal-ordered occupation of 0.
    double worst = 0.0;
    for (const auto& row : res.report.rows) {
        worst = std::max(worst, std::abs(row.mean_n1_plus));
        worst = std::max(worst, std::abs(row.mean_n1_minus));
    }
    worst = std::max(worst, std::abs(res.report.mean_n1_zero));
    std::printf("vacuum calibration: max |<n(k)>| deviation from shot noise "
                "= %.4f over %llu samples\n",
                worst, static_cast<unsigned long long>(res.report.samples));
    print_summary(res);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic simulator of transverse quantum correlations in "
                 "a degenerate optical parametric oscillator"};
    app.require_subcommand(1);

    CommonOpts run_opts, preset_opts, analyze_opts, cal_opts;
    std::string preset_name;
    bool preset_list = false;
    std::vector<std::string> ckpt_files;
    double cal_time = 1e4;

    auto* run = app.add_subcommand("run", "Run a trajectory ensemble");
    add_common(run, run_opts);

    auto* pre = app.add_subcommand("preset", "Run a figure-reproduction preset");
    pre->add_option("name", preset_name, "Preset name (see --list)");
    pre->add_flag("--list", preset_list, "List preset names and exit");
    add_common(pre, preset_opts, /*with_config=*/false);

    auto* ana = app.add_subcommand("analyze",
                                   "Recompute spectra from checkpoint files");
    ana->add_option("files", ckpt_files, "Checkpoint files (.ckpt)")
        ->required();
    add_common(ana, analyze_opts);

    auto* cal = app.add_subcommand(
        "calibrate", "Vacuum run (E=0) checking the shot-noise normalization");
    cal->add_option("--time", cal_time, "Averaged time per trajectory");
    add_common(cal, cal_opts);

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_opts);
        if (pre->parsed()) return cmd_preset(preset_name, preset_list, preset_opts);
        if (ana->parsed()) return cmd_analyze(ckpt_files, analyze_opts);
        if (cal->parsed()) return cmd_calibrate(cal_opts, cal_time);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const AllTrajectoriesRejected& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const InvalidParameter& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
