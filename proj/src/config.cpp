#include "dopoq/config.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dopoq/errors.hpp"

namespace dopoq {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw InvalidParameter("line " + std::to_string(line) + ": key '" +
                               key + "' expects a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw InvalidParameter("line " + std::to_string(line) + ": key '" +
                               key + "' expects an integer, got '" + v + "'");
    }
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& val,
               int line) {
    Params& p = cfg.params;
    if (key == "delta0") p.delta0 = parse_double(val, key, line);
    else if (key == "delta1") p.delta1 = parse_double(val, key, line);
    else if (key == "pump_E") p.pump_E = parse_double(val, key, line);
    else if (key == "noise_c") p.noise_c = parse_double(val, key, line);
    else if (key == "n_points") p.n_points = static_cast<int>(parse_int(val, key, line));
    else if (key == "length_L") p.length_L = parse_double(val, key, line);
    else if (key == "dt") p.dt = parse_double(val, key, line);
    else if (key == "t_total") p.t_total = parse_double(val, key, line);
    else if (key == "t_transient") p.t_transient = parse_double(val, key, line);
    else if (key == "sample_stride") p.sample_stride = parse_double(val, key, line);
    else if (key == "block_time") p.block_time = parse_double(val, key, line);
    else if (key == "seed") p.seed = static_cast<std::uint64_t>(parse_int(val, key, line));
    else if (key == "init") {
        try {
            p.init_kind = init_kind_from_string(val);
        } catch (const InvalidParameter& e) {
            throw InvalidParameter("line " + std::to_string(line) + ": " + e.what());
        }
    }
    else if (key == "rolls_amplitude") p.rolls_amplitude = parse_double(val, key, line);
    else if (key == "n_trajectories") cfg.n_trajectories = static_cast<int>(parse_int(val, key, line));
    else if (key == "out_dir") cfg.out_dir = val;
    else if (key == "snapshot_stride") cfg.snapshot_stride = parse_double(val, key, line);
    else if (key == "kernel") cfg.kernel = val;
    else if (key == "preset") cfg.preset_name = val;
    else
        throw InvalidParameter("line " + std::to_string(line) +
                               ": unknown key '" + key + "'");
}

void validate_run(const RunConfig& cfg) {
    cfg.params.validate();
    if (cfg.n_trajectories < 1)
        throw InvalidParameter("n_trajectories must be >= 1");
    if (cfg.snapshot_stride < 0.0)
        throw InvalidParameter("snapshot_stride must be >= 0");
    if (cfg.out_dir.empty())
        throw InvalidParameter("out_dir must not be empty");
    if (cfg.kernel != "auto" && cfg.kernel != "scalar" && cfg.kernel != "avx2")
        throw InvalidParameter("kernel must be auto, scalar or avx2");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParameter("line " + std::to_string(lineno) +
                                   ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw InvalidParameter("line " + std::to_string(lineno) +
                                   ": empty key");
        apply_key(cfg, key, val, lineno);
    }
    validate_run(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidParameter("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    const Params& p = cfg.params;
    std::ostringstream out;
    out << "delta0 = " << fmt_double(p.delta0) << '\n'
        << "delta1 = " << fmt_double(p.delta1) << '\n'
        << "pump_E = " << fmt_double(p.pump_E) << '\n'
        << "noise_c = " << fmt_double(p.noise_c) << '\n'
        << "n_points = " << p.n_points << '\n'
        << "length_L = " << fmt_double(p.length_L) << '\n'
        << "dt = " << fmt_double(p.dt) << '\n'
        << "t_total = " << fmt_double(p.t_total) << '\n'
        << "t_transient = " << fmt_double(p.t_transient) << '\n'
        << "sample_stride = " << fmt_double(p.sample_stride) << '\n'
        << "block_time = " << fmt_double(p.block_time) << '\n'
        << "seed = " << p.seed << '\n'
        << "init = " << to_string(p.init_kind) << '\n'
        << "rolls_amplitude = " << fmt_double(p.rolls_amplitude) << '\n'
        << "n_trajectories = " << cfg.n_trajectories << '\n'
        << "out_dir = " << cfg.out_dir << '\n'
        << "snapshot_stride = " << fmt_double(cfg.snapshot_stride) << '\n'
        << "kernel = " << cfg.kernel << '\n';
    if (!cfg.preset_name.empty())
        out << "preset = " << cfg.preset_name << '\n';
    return out.str();
}

std::string config_hash(const RunConfig& cfg) {
    const std::string canon = serialize_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

namespace {

RunConfig base_run(double pump_E, double dt, double t_total, int n_traj,
                   InitKind init, const std::string& out_dir) {
    RunConfig cfg;
    cfg.params.pump_E = pump_E;
    cfg.params.dt = dt;
    cfg.params.t_total = t_total;
    cfg.params.init_kind = init;
    cfg.n_trajectories = n_traj;
    cfg.out_dir = out_dir;
    return cfg;
}

std::string etag(double e) {
    std::ostringstream s;
    s << "E" << e;
    return s.str();
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6",
            "fig7", "fig8", "fig9a", "fig9b", "fig10", "fig11"};
}

Preset preset(const std::string& name) {
    Preset ps;
    ps.name = name;
    if (name == "fig2" || name == "fig3") {
        ps.note = name == "fig2"
                      ? "X-(k_c) squeezing below threshold vs pump; original "
                        "averaging time 1e7 per point scaled to 8 x 5e4."
                      : "X+(k_c) anti-squeezing below threshold vs pump; "
                        "divergence near E=1 needs the longest averaging.";
        for (double e : {0.5, 0.9, 0.99}) {
            auto run = base_run(e, 1e-3, 5e4, 8, InitKind::paper_modulated,
                                name + "_" + etag(e));
            ps.runs.push_back(run);
        }
    } else if (name == "fig4") {
        ps.note = "Twin variance V(k) across the band at E=0.99 plus the "
                  "mean far-field spectrum; 1e7 averaging scaled to 8 x 1e5.";
        ps.runs.push_back(base_run(0.99, 1e-3, 1e5, 8,
                                   InitKind::paper_modulated, "fig4"));
    } else if (name == "fig5") {
        ps.note = "V(k_c) scan across threshold; one run per pump value. "
                  "dt=1e-3 throughout (the coarse 0.01 step biases the "
                  "near-threshold twin variance); above threshold the rolls "
                  "initial condition stimulates the reflection-symmetric "
                  "k_c structure in every trajectory.";
        for (double e : {0.9, 0.99, 1.0, 1.1, 1.3, 1.5}) {
            const bool above = e > 1.05;
            ps.runs.push_back(base_run(e, 1e-3, above ? 2e4 : 5e4, 8,
                                       above ? InitKind::rolls
                                             : InitKind::paper_modulated,
                                       "fig5_" + etag(e)));
        }
    } else if (name == "fig6") {
        ps.note = "Phase sum theta_+ + theta_- above threshold; circular "
                  "mean per pump value.";
        for (double e : {1.02, 1.05, 1.1, 1.2})
            ps.runs.push_back(base_run(e, 0.01, 5e4, 8,
                                       InitKind::paper_modulated,
                                       "fig6_" + etag(e)));
    } else if (name == "fig7" || name == "fig8") {
        ps.note = "Stripe regime at E=1.1: far-field spectra with odd signal "
                  "/ even pump harmonics (fig7) and V(k) with depleted-mode "
                  "peaks (fig8).";
        auto run = base_run(1.1, 0.01, 1e5, 8, InitKind::paper_modulated, name);
        run.snapshot_stride = name == "fig7" ? 100.0 : 0.0;
        ps.runs.push_back(run);
    } else if (name == "fig9a" || name == "fig9b") {
        ps.note = "Stationary structures at E=1.5: near/far-field snapshots "
                  "from a rolls (9a) or step (9b) initial condition.";
        auto run = base_run(1.5, 0.01, 1e4, 1,
                            name == "fig9a" ? InitKind::rolls : InitKind::step,
                            name);
        run.snapshot_stride = 10.0;
        ps.runs.push_back(run);
    } else if (name == "fig10") {
        ps.note = "V(k) at E=1.5 for rolls and step structures, plus the "
                  "128-point grid variant showing the large-k asymptote.";
        ps.runs.push_back(base_run(1.5, 0.01, 5e4, 8, InitKind::rolls,
                                   "fig10_rolls"));
        ps.runs.push_back(base_run(1.5, 0.01, 5e4, 8, InitKind::step,
                                   "fig10_step"));
        auto fine = base_run(1.5, 0.01, 5e4, 8, InitKind::rolls, "fig10_n128");
        fine.params.n_points = 128;
        ps.runs.push_back(fine);
    } else if (name == "fig11") {
        ps.note = "V(k) and spectra at E=1.3 for three structures: step, "
                  "noise and rolls initial conditions.";
        ps.runs.push_back(base_run(1.3, 0.01, 5e4, 8, InitKind::step,
                                   "fig11_step"));
        ps.runs.push_back(base_run(1.3, 0.01, 5e4, 8, InitKind::noise,
                                   "fig11_noise"));
        ps.runs.push_back(base_run(1.3, 0.01, 5e4, 8, InitKind::rolls,
                                   "fig11_rolls"));
    } else {
        throw InvalidParameter("unknown preset '" + name + "'");
    }
    for (auto& run : ps.runs) {
        run.preset_name = name;
        run.params.validate();
    }
    return ps;
}

} // namespace dopoq
