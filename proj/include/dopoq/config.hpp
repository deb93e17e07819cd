#pragma once

#include <string>
#include <vector>

#include "dopoq/params.hpp"

namespace dopoq {

// A full batch-run description: physics/integration parameters plus
// orchestration knobs.  Round-trips losslessly through serialize_config /
// parse_config; every output embeds config_hash() of the canonical form.
struct RunConfig {
    Params params;
    int n_trajectories = 8;
    std::string out_dir = "out";
    // near/far-field snapshot record cadence in time units; 0 disables
    double snapshot_stride = 0.0;
    std::string kernel = "auto"; // auto | scalar | avx2
    std::string preset_name;     // informational
};

// Flat `key = value` text, one per line, '#' comments.  Unknown keys and
// malformed lines raise InvalidParameter with the line number; values are
// validated via Params::validate().
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical serialization: fixed key order, %.17g numbers; parse round-trip
// is lossless.
std::string serialize_config(const RunConfig& cfg);

// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

// A figure-reproduction recipe: one or more runs (parameter scans and grid
// variants are separate runs) at desk scale, i.e. much shorter averaging
// than the original single-trajectory runs, compensated with parallel
// trajectories.
struct Preset {
    std::string name;
    std::string note; // what it reproduces and how it was scaled down
    std::vector<RunConfig> runs;
};

std::vector<std::string> preset_names();
Preset preset(const std::string& name); // throws InvalidParameter if unknown

} // namespace dopoq
