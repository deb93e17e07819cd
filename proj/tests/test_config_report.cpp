#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "dopoq/checkpoint.hpp"
#include "dopoq/config.hpp"
#include "dopoq/errors.hpp"
#include "dopoq/report.hpp"

using namespace dopoq;

TEST_CASE("empty config yields the full defaults") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.params.delta0 == 0.0);
    CHECK(cfg.params.delta1 == -0.18);
    CHECK(cfg.params.noise_c == 1e-4);
    CHECK(cfg.params.n_points == 64);
    CHECK(cfg.params.dk() == doctest::Approx(0.075));
    CHECK(cfg.params.init_kind == InitKind::paper_modulated);
    CHECK(cfg.n_trajectories == 8);
}

TEST_CASE("single override and comments") {
    const RunConfig cfg = parse_config(
        "# production point\npump_E = 1.1  # just above threshold\n\n"
        "init = rolls\n");
    CHECK(cfg.params.pump_E == 1.1);
    CHECK(cfg.params.init_kind == InitKind::rolls);
    CHECK(cfg.params.delta1 == -0.18); // untouched default
}

TEST_CASE("config errors carry line numbers and key names") {
    try {
        parse_config("pump_E = 1.0\ndt = -0.01\n");
        FAIL("expected InvalidParameter");
    } catch (const InvalidParameter& e) {
        CHECK(std::string(e.what()).find("dt") != std::string::npos);
    }
    try {
        parse_config("\n\nbogus_key = 3\n");
        FAIL("expected InvalidParameter");
    } catch (const InvalidParameter& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("bogus_key") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("pump_E 1.0\n"), InvalidParameter);
    CHECK_THROWS_AS(parse_config("dt = fast\n"), InvalidParameter);
    CHECK_THROWS_AS(parse_config("init = vortex\n"), InvalidParameter);
    CHECK_THROWS_AS(parse_config("kernel = sse2\n"), InvalidParameter);
}

TEST_CASE("canonical serialization round-trips losslessly") {
    RunConfig cfg;
    cfg.params.pump_E = 0.99;
    cfg.params.dt = 1e-3;
    cfg.params.seed = 987654321;
    cfg.params.init_kind = InitKind::step;
    cfg.n_trajectories = 16;
    cfg.out_dir = "somewhere/else";
    cfg.snapshot_stride = 12.5;
    cfg.kernel = "scalar";

    const std::string text = serialize_config(cfg);
    const RunConfig back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(config_hash(back) == config_hash(cfg));
    CHECK(config_hash(cfg).size() == 16);

    RunConfig other = cfg;
    other.params.seed = 987654322;
    CHECK(config_hash(other) != config_hash(cfg));
}

TEST_CASE("presets cover the documented recipes") {
    CHECK(preset_names().size() == 11);
    for (const auto& name : preset_names()) {
        const Preset ps = preset(name);
        CHECK_FALSE(ps.runs.empty());
        CHECK_FALSE(ps.note.empty());
        for (const auto& run : ps.runs) CHECK(run.preset_name == name);
    }

    const Preset fig4 = preset("fig4");
    REQUIRE(fig4.runs.size() == 1);
    CHECK(fig4.runs[0].params.pump_E == 0.99);
    CHECK(fig4.runs[0].params.dt == 1e-3);

    const Preset fig9b = preset("fig9b");
    CHECK(fig9b.runs[0].params.pump_E == 1.5);
    CHECK(fig9b.runs[0].params.init_kind == InitKind::step);
    CHECK(fig9b.runs[0].snapshot_stride > 0.0);

    const Preset fig10 = preset("fig10");
    bool has_fine = false;
    for (const auto& run : fig10.runs)
        has_fine = has_fine || run.params.n_points == 128;
    CHECK(has_fine);

    CHECK_THROWS_AS(preset("fig99"), InvalidParameter);
}

TEST_CASE("report CSV is deterministic and complete") {
    Params p;
    p.block_time = 10.0;
    const Grid g = build_grid(p);
    MomentAccumulator acc(p, g);
    std::mt19937_64 gen(17);
    std::normal_distribution<double> nd;
    ModeAmplitudes frame;
    frame.signal.resize(g.n);
    frame.pump.resize(g.n);
    for (int i = 0; i < 500; ++i) {
        for (int m = 0; m < g.n; ++m) {
            frame.signal[m] = {nd(gen) / std::sqrt(2.0), nd(gen) / std::sqrt(2.0)};
            frame.pump[m] = {nd(gen) / std::sqrt(2.0), nd(gen) / std::sqrt(2.0)};
        }
        acc.accumulate(frame);
    }
    acc.close_block();

    RunConfig cfg;
    const SpectraReport rep = build_report(acc, cfg, 1, 0);
    CHECK(rep.rows.size() == 31);
    CHECK(rep.samples == 500);
    CHECK_FALSE(rep.partial);
    CHECK(rep.critical_k == doctest::Approx(0.3));

    const std::string csv = spectra_csv(rep);
    CHECK(csv.find("k,mean_N1_plus") == 0);
    // header + one line per pair
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 32);
    CHECK(csv == spectra_csv(build_report(acc, cfg, 1, 0)));

    const std::string json = report_json(rep);
    CHECK(json.find("\"config_hash\"") != std::string::npos);
    CHECK(json.find("\"rejected_trajectories\": 0") != std::string::npos);
    CHECK(json.find("\"code_version\"") != std::string::npos);
    CHECK(json.find("wall") == std::string::npos); // timings live in run.log
}

TEST_CASE("checkpoint files round-trip exactly") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dopoq_ckpt_test";
    fs::create_directories(dir);
    const std::string path = (dir / "t.ckpt").string();

    Params p;
    p.n_points = 16;
    p.pump_E = 1.23;
    std::mt19937_64 gen(21);
    std::normal_distribution<double> nd;

    std::vector<FieldState> states(3);
    {
        CheckpointWriter w(path, p);
        double t = 0;
        for (auto& st : states) {
            st.time = (t += 7.5);
            st.alpha0.resize(16);
            st.alpha1.resize(16);
            for (int j = 0; j < 16; ++j) {
                st.alpha0[j] = {nd(gen), nd(gen)};
                st.alpha1[j] = {nd(gen), nd(gen)};
            }
            w.append(st);
        }
    }

    CheckpointReader r(path);
    CHECK(r.header().n == 16);
    CHECK(r.header().pump_E == 1.23);
    const Params restored = r.params_from_header(Params{});
    CHECK(restored.n_points == 16);
    CHECK(restored.pump_E == 1.23);

    FieldState st;
    for (const auto& expect : states) {
        REQUIRE(r.next(st));
        CHECK(st.time == expect.time);
        for (int j = 0; j < 16; ++j) {
            CHECK(st.alpha0[j] == expect.alpha0[j]);
            CHECK(st.alpha1[j] == expect.alpha1[j]);
        }
    }
    CHECK_FALSE(r.next(st));

    // corrupt magic is refused
    const std::string bad = (dir / "bad.ckpt").string();
    write_file(bad, "NOTACKPTxxxxxxxxxxxxxxxx");
    CHECK_THROWS_AS(CheckpointReader{bad}, NumericalFailure);
    fs::remove_all(dir);
}
