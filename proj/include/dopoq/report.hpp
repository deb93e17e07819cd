#pragma once

#include <string>
#include <vector>

#include "dopoq/config.hpp"
#include "dopoq/moments.hpp"

namespace dopoq {

inline constexpr const char* kCodeVersion = "1.0.0";

// One row per +-k mode pair; quantities undefined at the statistical floor
// (e.g. the twin variance of a vacuum pair) are NaN in the table.
struct SpectraRow {
    double k = 0;
    double mean_n1_plus = 0, mean_n1_plus_err = 0;
    double mean_n1_minus = 0, mean_n1_minus_err = 0;
    double mean_n0_plus = 0, mean_n0_minus = 0;
    double v_twin = 0, v_twin_err = 0;
    double v_twin_pump = 0, v_twin_pump_err = 0;
    double xminus_var = 0, xminus_var_err = 0;
    double xplus_var = 0, xplus_var_err = 0;
    double phase_sum_mean = 0, phase_resultant = 0;
    bool phase_defined = false;
};

struct SpectraReport {
    std::vector<SpectraRow> rows;
    double mean_n1_zero = 0, mean_n0_zero = 0; // homogeneous (k=0) bin
    double critical_k = 0;                     // 0 when no critical pair
    double autocorr_time = 0;                  // time units, NaN if unknown
    std::uint64_t samples = 0;
    int n_trajectories = 0;
    int rejected = 0;
    bool partial = false; // true iff rejected > 0
    RunConfig config;
    std::string hash;
};

SpectraReport build_report(const MomentAccumulator& acc, const RunConfig& cfg,
                           int n_trajectories, int rejected);

// Deterministic CSV: fixed column set, %.17g numbers, "nan" for undefined.
std::string spectra_csv(const SpectraReport& rep);
// JSON metadata sidecar: config, hash, counts, autocorrelation time and code
// version.  Wall-clock timings belong in the run log, not here.
std::string report_json(const SpectraReport& rep);

void write_file(const std::string& path, const std::string& content);

} // namespace dopoq
