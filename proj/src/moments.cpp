#include "dopoq/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dopoq/errors.hpp"
#include "dopoq/linear_analysis.hpp"

namespace dopoq {

namespace {
constexpr int kBinSlots = 4;   // n1, n1^2, n0, n0^2 (shifted)
constexpr int kPairSlots = 11; // d, d^2, m11, xm, xm^2, xp, xp^2, pd, pd^2, cos, sin
constexpr std::size_t kSeriesCap = 1u << 16;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum PairSlot { SD = 0, SD2, SM11, SXM, SXM2, SXP, SXP2, SPD, SPD2, SCOS, SSIN };
} // namespace

ModeProjector::ModeProjector(const Params& params, const Grid& grid,
                             const kernels::Backend& backend)
    : fft_(grid.n, backend), scale_(std::sqrt(grid.dx) / params.noise_c) {
    amps_.signal.resize(grid.n);
    amps_.pump.resize(grid.n);
}

const ModeAmplitudes& ModeProjector::operator()(const FieldState& state) {
    fft_.forward(std::span<const cplx>(state.alpha1), std::span<cplx>(amps_.signal));
    fft_.forward(std::span<const cplx>(state.alpha0), std::span<cplx>(amps_.pump));
    for (auto& v : amps_.signal) v *= scale_;
    for (auto& v : amps_.pump) v *= scale_;
    return amps_;
}

ModeAmplitudes mode_amplitudes(const FieldState& state, const Params& params,
                               const Grid& grid) {
    ModeProjector proj(params, grid);
    return proj(state);
}

MomentAccumulator::MomentAccumulator(const Params& params, const Grid& grid)
    : n_(grid.n), dk_(grid.dk) {
    samples_per_block_ = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(
               std::llround(params.block_time / params.sample_stride)));
    if (params.delta1 < 0.0) {
        const double kc = linear::critical_wavenumber(params.delta1);
        const int p = static_cast<int>(std::lround(kc / dk_)) - 1;
        if (p >= 0 && p < n_pairs()) kc_pair_ = p;
    }
    scratch_sig_.resize(n_);
    scratch_pump_.resize(n_);
    reset_partial();
}

void MomentAccumulator::reset_partial() {
    partial_.count = 0;
    partial_.shift_sig.assign(n_, 0.0);
    partial_.shift_pump.assign(n_, 0.0);
    partial_.q.assign(kBinSlots * n_ + kPairSlots * n_pairs(), 0.0);
}

int MomentAccumulator::pair_of_k(double k) const {
    int p = static_cast<int>(std::lround(std::abs(k) / dk_)) - 1;
    return std::clamp(p, 0, n_pairs() - 1);
}

void MomentAccumulator::accumulate(const ModeAmplitudes& amps) {
    for (int bin = 0; bin < n_; ++bin) {
        scratch_sig_[bin] = std::norm(amps.signal[bin]);
        scratch_pump_[bin] = std::norm(amps.pump[bin]);
    }
    if (partial_.count == 0) {
        partial_.shift_sig = scratch_sig_;
        partial_.shift_pump = scratch_pump_;
    }
    double* q = partial_.q.data();
    for (int bin = 0; bin < n_; ++bin) {
        const double v1 = scratch_sig_[bin] - partial_.shift_sig[bin];
        const double v0 = scratch_pump_[bin] - partial_.shift_pump[bin];
        q[kBinSlots * bin + 0] += v1;
        q[kBinSlots * bin + 1] += v1 * v1;
        q[kBinSlots * bin + 2] += v0;
        q[kBinSlots * bin + 3] += v0 * v0;
    }
    double* qp = q + kBinSlots * n_;
    for (int p = 0; p < n_pairs(); ++p, qp += kPairSlots) {
        const int bp = p + 1;
        const int bm = n_ - bp;
        const double d = scratch_sig_[bp] - scratch_sig_[bm];
        qp[SD] += d;
        qp[SD2] += d * d;
        qp[SM11] += scratch_sig_[bp] * scratch_sig_[bm];
        const double xa = 2.0 * amps.signal[bp].real();
        const double xb = 2.0 * amps.signal[bm].real();
        const double xm = xa - xb;
        const double xp = xa + xb;
        qp[SXM] += xm;
        qp[SXM2] += xm * xm;
        qp[SXP] += xp;
        qp[SXP2] += xp * xp;
        const double pd = scratch_pump_[bp] - scratch_pump_[bm];
        qp[SPD] += pd;
        qp[SPD2] += pd * pd;
        const double ang =
            std::atan2(amps.signal[bp].imag(), amps.signal[bp].real()) +
            std::atan2(amps.signal[bm].imag(), amps.signal[bm].real());
        qp[SCOS] += std::cos(ang);
        qp[SSIN] += std::sin(ang);
    }

    if (kc_pair_) {
        if (series_phase_ == 0) {
            series_.push_back(scratch_sig_[*kc_pair_ + 1]);
            if (series_.size() >= kSeriesCap) {
                for (std::size_t i = 0; 2 * i < series_.size(); ++i)
                    series_[i] = series_[2 * i];
                series_.resize(series_.size() / 2);
                series_decim_ *= 2;
            }
        }
        series_phase_ = (series_phase_ + 1) % series_decim_;
    }

    ++partial_.count;
    ++total_count_;
    if (partial_.count == samples_per_block_) {
        blocks_.push_back(std::move(partial_));
        reset_partial();
    }
}

void MomentAccumulator::close_block() {
    if (partial_.count > 0) {
        blocks_.push_back(std::move(partial_));
        reset_partial();
    }
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.partial_.count > 0)
        throw NumericalFailure("merge requires closed accumulators "
                               "(call close_block first)");
    blocks_.insert(blocks_.end(), other.blocks_.begin(), other.blocks_.end());
    total_count_ += other.total_count_;
    if (series_.empty()) {
        series_ = other.series_;
        series_decim_ = other.series_decim_;
    }
}

void MomentAccumulator::fill_bin(BinAggregate& agg, const Block& blk,
                                 int bin) const {
    const double c = static_cast<double>(blk.count);
    const double* q = blk.q.data() + kBinSlots * bin;
    const double s1 = blk.shift_sig[bin];
    const double s0 = blk.shift_pump[bin];
    const double mean1c = q[0] / c, mean0c = q[2] / c;
    // weighted (by count) running combination across blocks
    const double w = c / static_cast<double>(agg.count + blk.count);
    agg.m1_sig += w * (s1 + mean1c - agg.m1_sig);
    agg.m2_sig += w * (q[1] / c + 2.0 * s1 * mean1c + s1 * s1 - agg.m2_sig);
    agg.m1_pump += w * (s0 + mean0c - agg.m1_pump);
    agg.m2_pump += w * (q[3] / c + 2.0 * s0 * mean0c + s0 * s0 - agg.m2_pump);
    agg.count += blk.count;
}

void MomentAccumulator::fill_pair(PairAggregate& agg, const Block& blk,
                                  int pair) const {
    const double c = static_cast<double>(blk.count);
    const double w = c / static_cast<double>(agg.count + blk.count);
    const int bp = pair + 1;
    const int bm = n_ - bp;
    const double* q = blk.q.data() + kBinSlots * n_ + kPairSlots * pair;

    auto bin_m1m2 = [&](int bin, bool pump) {
        const double* bq = blk.q.data() + kBinSlots * bin;
        const double s = pump ? blk.shift_pump[bin] : blk.shift_sig[bin];
        const double m = (pump ? bq[2] : bq[0]) / c;
        const double m2c = (pump ? bq[3] : bq[1]) / c;
        return std::pair<double, double>(s + m, m2c + 2.0 * s * m + s * s);
    };
    const auto [m1p, m2p] = bin_m1m2(bp, false);
    const auto [m1m, m2m] = bin_m1m2(bm, false);
    const auto [pm1p, pm2p] = bin_m1m2(bp, true);
    const auto [pm1m, pm2m] = bin_m1m2(bm, true);

    agg.m1_plus += w * (m1p - agg.m1_plus);
    agg.m2_plus += w * (m2p - agg.m2_plus);
    agg.m1_minus += w * (m1m - agg.m1_minus);
    agg.m2_minus += w * (m2m - agg.m2_minus);
    agg.pump_m1_plus += w * (pm1p - agg.pump_m1_plus);
    agg.pump_m1_minus += w * (pm1m - agg.pump_m1_minus);
    agg.m11 += w * (q[SM11] / c - agg.m11);
    agg.d_mean += w * (q[SD] / c - agg.d_mean);
    agg.d2_mean += w * (q[SD2] / c - agg.d2_mean);
    agg.xm_mean += w * (q[SXM] / c - agg.xm_mean);
    agg.xm2_mean += w * (q[SXM2] / c - agg.xm2_mean);
    agg.xp_mean += w * (q[SXP] / c - agg.xp_mean);
    agg.xp2_mean += w * (q[SXP2] / c - agg.xp2_mean);
    agg.pump_d_mean += w * (q[SPD] / c - agg.pump_d_mean);
    agg.pump_d2_mean += w * (q[SPD2] / c - agg.pump_d2_mean);
    agg.cos_mean += w * (q[SCOS] / c - agg.cos_mean);
    agg.sin_mean += w * (q[SSIN] / c - agg.sin_mean);
    agg.count += blk.count;
}

MomentAccumulator::PairAggregate MomentAccumulator::aggregate(int pair) const {
    PairAggregate agg;
    for (const Block& blk : blocks_)
        if (blk.count > 0) fill_pair(agg, blk, pair);
    if (partial_.count > 0) fill_pair(agg, partial_, pair);
    return agg;
}

MomentAccumulator::PairAggregate
MomentAccumulator::block_aggregate(int pair, int b) const {
    PairAggregate agg;
    fill_pair(agg, blocks_.at(static_cast<std::size_t>(b)), pair);
    return agg;
}

MomentAccumulator::BinAggregate MomentAccumulator::bin_aggregate(int bin) const {
    BinAggregate agg;
    for (const Block& blk : blocks_)
        if (blk.count > 0) fill_bin(agg, blk, bin);
    if (partial_.count > 0) fill_bin(agg, partial_, bin);
    return agg;
}

MomentAccumulator::BinAggregate
MomentAccumulator::block_bin_aggregate(int bin, int b) const {
    BinAggregate agg;
    fill_bin(agg, blocks_.at(static_cast<std::size_t>(b)), bin);
    return agg;
}

namespace {

// batch-means standard error from per-block estimates
double block_stderr(const std::vector<double>& vals) {
    std::vector<double> good;
    good.reserve(vals.size());
    for (double v : vals)
        if (std::isfinite(v)) good.push_back(v);
    if (good.size() < 4) return kNaN;
    double mean = 0;
    for (double v : good) mean += v;
    mean /= static_cast<double>(good.size());
    double var = 0;
    for (double v : good) var += (v - mean) * (v - mean);
    var /= static_cast<double>(good.size() - 1);
    return std::sqrt(var / static_cast<double>(good.size()));
}

} // namespace

Reordered reorder_number_moments(double m1, double m2, double m1_stderr) {
    if (m1 < 1.0 - 5.0 * m1_stderr)
        throw DomainError("unphysical Q-number moments: m1 < 1 beyond the "
                          "statistical clip");
    const double mean_n = m1 - 1.0;
    const double var_q = m2 - m1 * m1;
    return {mean_n, var_q - 2.0 * mean_n - 1.0};
}

Estimate twin_variance(const MomentAccumulator& acc, int pair, bool pump) {
    auto estimator = [pump](const MomentAccumulator::PairAggregate& a) {
        const double m1p = pump ? a.pump_m1_plus : a.m1_plus;
        const double m1m = pump ? a.pump_m1_minus : a.m1_minus;
        const double dm = pump ? a.pump_d_mean : a.d_mean;
        const double d2 = pump ? a.pump_d2_mean : a.d2_mean;
        const double denom = (m1p - 1.0) + (m1m - 1.0);
        const double var_d = d2 - dm * dm;
        return std::pair<double, double>((var_d - 2.0 * denom - 2.0) / denom,
                                         denom);
    };
    const auto agg = acc.aggregate(pair);
    if (agg.count == 0)
        throw DomainError("twin_variance: no samples accumulated");
    const auto [value, denom] = estimator(agg);

    std::vector<double> block_vals, block_denoms;
    for (int b = 0; b < acc.completed_blocks(); ++b) {
        const auto [v, dn] = estimator(acc.block_aggregate(pair, b));
        block_vals.push_back(v);
        block_denoms.push_back(dn);
    }
    const double denom_err = block_stderr(block_denoms);
    const double floor =
        std::isfinite(denom_err) ? 3.0 * denom_err : 1e-6;
    if (!(denom > floor))
        throw DomainError("twin_variance undefined: mode pair is at the "
                          "vacuum/statistical floor");
    return {value, block_stderr(block_vals)};
}

std::pair<Estimate, Estimate>
quadrature_variances(const MomentAccumulator& acc, int pair,
                     std::uint64_t min_samples) {
    const auto agg = acc.aggregate(pair);
    if (agg.count < min_samples)
        throw DomainError("quadrature_variances: insufficient samples");
    auto est = [](double m, double m2) { return ((m2 - m * m) - 4.0) / 2.0; };
    std::vector<double> bm_xm, bm_xp;
    for (int b = 0; b < acc.completed_blocks(); ++b) {
        const auto a = acc.block_aggregate(pair, b);
        bm_xm.push_back(est(a.xm_mean, a.xm2_mean));
        bm_xp.push_back(est(a.xp_mean, a.xp2_mean));
    }
    return {Estimate{est(agg.xm_mean, agg.xm2_mean), block_stderr(bm_xm)},
            Estimate{est(agg.xp_mean, agg.xp2_mean), block_stderr(bm_xp)}};
}

PhaseSum phase_sum(const MomentAccumulator& acc, int pair) {
    const auto agg = acc.aggregate(pair);
    PhaseSum out;
    if (agg.count == 0) return out;
    out.resultant = std::hypot(agg.cos_mean, agg.sin_mean);
    out.defined = out.resultant >= 0.2;
    out.mean = std::atan2(agg.sin_mean, agg.cos_mean);
    return out;
}

IntensitySpectra mean_intensity_spectra(const MomentAccumulator& acc) {
    IntensitySpectra out;
    // infer bin count from pair layout: n = 2*(n_pairs+1)
    const int n = 2 * (acc.n_pairs() + 1);
    out.mean_n1.resize(n);
    out.mean_n1_err.resize(n);
    out.mean_n0.resize(n);
    out.mean_n0_err.resize(n);
    for (int bin = 0; bin < n; ++bin) {
        const auto agg = acc.bin_aggregate(bin);
        out.mean_n1[bin] = agg.m1_sig - 1.0;
        out.mean_n0[bin] = agg.m1_pump - 1.0;
        std::vector<double> b1, b0;
        for (int b = 0; b < acc.completed_blocks(); ++b) {
            const auto a = acc.block_bin_aggregate(bin, b);
            b1.push_back(a.m1_sig - 1.0);
            b0.push_back(a.m1_pump - 1.0);
        }
        out.mean_n1_err[bin] = block_stderr(b1);
        out.mean_n0_err[bin] = block_stderr(b0);
    }
    return out;
}

double estimate_autocorr_time(const std::vector<double>& series) {
    const std::size_t n = series.size();
    if (n < 16) return kNaN;
    double mean = 0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0;
    for (double v : series) c0 += (v - mean) * (v - mean);
    c0 /= static_cast<double>(n);
    if (!(c0 > 0)) return 0.5;

    double tau = 0.5;
    const std::size_t max_lag = n / 4;
    for (std::size_t t = 1; t <= max_lag; ++t) {
        double ct = 0;
        for (std::size_t i = 0; i + t < n; ++i)
            ct += (series[i] - mean) * (series[i + t] - mean);
        ct /= static_cast<double>(n - t);
        tau += ct / c0;
        if (static_cast<double>(t) >= 5.0 * tau) break; // Sokal window
    }
    return std::max(tau, 0.5);
}

} // namespace dopoq
