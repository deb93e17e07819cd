#include "dopoq/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dopoq/errors.hpp"
#include "dopoq/linear_analysis.hpp"

#include <json.hpp>

namespace dopoq {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
} // namespace

SpectraReport build_report(const MomentAccumulator& acc, const RunConfig& cfg,
                           int n_trajectories, int rejected) {
    SpectraReport rep;
    rep.config = cfg;
    rep.hash = config_hash(cfg);
    rep.n_trajectories = n_trajectories;
    rep.rejected = rejected;
    rep.partial = rejected > 0;
    rep.samples = acc.sample_count();
    if (cfg.params.delta1 < 0.0)
        rep.critical_k = linear::critical_wavenumber(cfg.params.delta1);

    const auto spectra = mean_intensity_spectra(acc);
    rep.mean_n1_zero = spectra.mean_n1[0];
    rep.mean_n0_zero = spectra.mean_n0[0];

    const int n = 2 * (acc.n_pairs() + 1);
    for (int p = 0; p < acc.n_pairs(); ++p) {
        SpectraRow row;
        row.k = acc.pair_k(p);
        const int bp = p + 1, bm = n - bp;
        row.mean_n1_plus = spectra.mean_n1[bp];
        row.mean_n1_plus_err = spectra.mean_n1_err[bp];
        row.mean_n1_minus = spectra.mean_n1[bm];
        row.mean_n1_minus_err = spectra.mean_n1_err[bm];
        row.mean_n0_plus = spectra.mean_n0[bp];
        row.mean_n0_minus = spectra.mean_n0[bm];
        try {
            const auto v = twin_variance(acc, p);
            row.v_twin = v.value;
            row.v_twin_err = v.std_err;
        } catch (const DomainError&) {
            row.v_twin = row.v_twin_err = kNaN;
        }
        try {
            const auto v = twin_variance(acc, p, /*pump=*/true);
            row.v_twin_pump = v.value;
            row.v_twin_pump_err = v.std_err;
        } catch (const DomainError&) {
            row.v_twin_pump = row.v_twin_pump_err = kNaN;
        }
        try {
            const auto [xm, xp] = quadrature_variances(acc, p);
            row.xminus_var = xm.value;
            row.xminus_var_err = xm.std_err;
            row.xplus_var = xp.value;
            row.xplus_var_err = xp.std_err;
        } catch (const DomainError&) {
            row.xminus_var = row.xminus_var_err = kNaN;
            row.xplus_var = row.xplus_var_err = kNaN;
        }
        const auto ph = phase_sum(acc, p);
        row.phase_defined = ph.defined;
        row.phase_resultant = ph.resultant;
        row.phase_sum_mean = ph.defined ? ph.mean : kNaN;
        rep.rows.push_back(row);
    }

    const auto& series = acc.critical_intensity_series();
    const double tau = estimate_autocorr_time(series);
    rep.autocorr_time = std::isfinite(tau)
                            ? tau * acc.series_decimation() *
                                  cfg.params.sample_stride
                            : kNaN;
    return rep;
}

std::string spectra_csv(const SpectraReport& rep) {
    std::ostringstream out;
    out << "k,mean_N1_plus,mean_N1_plus_err,mean_N1_minus,mean_N1_minus_err,"
           "mean_N0_plus,mean_N0_minus,v_twin,v_twin_err,v_twin_pump,"
           "v_twin_pump_err,xminus_var,xminus_var_err,xplus_var,"
           "xplus_var_err,phase_sum_mean,phase_resultant\n";
    for (const auto& r : rep.rows) {
        out << g17(r.k) << ',' << g17(r.mean_n1_plus) << ','
            << g17(r.mean_n1_plus_err) << ',' << g17(r.mean_n1_minus) << ','
            << g17(r.mean_n1_minus_err) << ',' << g17(r.mean_n0_plus) << ','
            << g17(r.mean_n0_minus) << ',' << g17(r.v_twin) << ','
            << g17(r.v_twin_err) << ',' << g17(r.v_twin_pump) << ','
            << g17(r.v_twin_pump_err) << ',' << g17(r.xminus_var) << ','
            << g17(r.xminus_var_err) << ',' << g17(r.xplus_var) << ','
            << g17(r.xplus_var_err) << ',' << g17(r.phase_sum_mean) << ','
            << g17(r.phase_resultant) << '\n';
    }
    return out.str();
}

std::string report_json(const SpectraReport& rep) {
    nlohmann::ordered_json j;
    j["code_version"] = kCodeVersion;
    j["config_hash"] = rep.hash;
    j["config"] = serialize_config(rep.config);
    j["seed"] = rep.config.params.seed;
    j["n_trajectories"] = rep.n_trajectories;
    j["rejected_trajectories"] = rep.rejected;
    j["partial_results"] = rep.partial;
    j["samples"] = rep.samples;
    j["critical_k"] = rep.critical_k;
    j["mean_n1_k0"] = rep.mean_n1_zero;
    j["mean_n0_k0"] = rep.mean_n0_zero;
    if (std::isfinite(rep.autocorr_time))
        j["autocorr_time"] = rep.autocorr_time;
    else
        j["autocorr_time"] = nullptr;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw NumericalFailure("cannot open output file: " + path);
    out << content;
    if (!out)
        throw NumericalFailure("failed writing output file: " + path);
}

} // namespace dopoq
