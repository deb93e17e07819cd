#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dopoq/engine.hpp"
#include "dopoq/fft.hpp"
#include "dopoq/grid.hpp"

namespace dopoq {

// Far-field amplitudes in unit-commutator (shot-noise) units:
// beta_k = (sqrt(dx)/c) * F[alpha]_k with the unitary transform, so a vacuum
// mode has <|beta_k|^2>_Q = 1.  Natural DFT bin order.
struct ModeAmplitudes {
    std::vector<cplx> signal;
    std::vector<cplx> pump;
};

// Buffer-reusing projector for the sampling hot path.
class ModeProjector {
  public:
    ModeProjector(const Params& params, const Grid& grid,
                  const kernels::Backend& backend = kernels::select_backend());
    const ModeAmplitudes& operator()(const FieldState& state);

  private:
    Fft fft_;
    double scale_;
    ModeAmplitudes amps_;
};

ModeAmplitudes mode_amplitudes(const FieldState& state, const Params& params,
                               const Grid& grid);

// Streaming Q-moment statistics per +-k mode pair, mergeable across
// trajectories.  Sums are accumulated blockwise (batch means) with a
// per-block shift captured from the block's first sample, which keeps the
// fourth-moment sums stable for macroscopic mode intensities.  merge()
// concatenates closed blocks, so folding per-trajectory accumulators in
// canonical order reproduces single-stream accumulation bit for bit.
class MomentAccumulator {
  public:
    struct PairAggregate {
        std::uint64_t count = 0;
        double m1_plus = 0, m2_plus = 0;   // <|b_k|^2>, <|b_k|^4>
        double m1_minus = 0, m2_minus = 0;
        double m11 = 0;                    // <|b_k|^2 |b_-k|^2>
        double d_mean = 0, d2_mean = 0;    // intensity difference moments
        double xm_mean = 0, xm2_mean = 0;  // X_-(k) quadrature
        double xp_mean = 0, xp2_mean = 0;  // X_+(k)
        double pump_m1_plus = 0, pump_m1_minus = 0;
        double pump_d_mean = 0, pump_d2_mean = 0;
        double cos_mean = 0, sin_mean = 0; // resultant of theta_+ + theta_-
    };
    struct BinAggregate {
        std::uint64_t count = 0;
        double m1_sig = 0, m2_sig = 0;
        double m1_pump = 0, m2_pump = 0;
    };

    MomentAccumulator(const Params& params, const Grid& grid);

    void accumulate(const ModeAmplitudes& amps);
    // Flushes the current partial block; call at end of a trajectory.
    void close_block();
    // Appends other's closed blocks (other must have no partial block).
    void merge(const MomentAccumulator& other);

    std::uint64_t sample_count() const { return total_count_; }
    int completed_blocks() const { return static_cast<int>(blocks_.size()); }
    int n_pairs() const { return n_ / 2 - 1; }
    // pair index 0..n_pairs-1 has k = (p+1)*dk
    double pair_k(int pair) const { return (pair + 1) * dk_; }
    int pair_bin_plus(int pair) const { return pair + 1; }
    // pair whose k is closest to the given wavenumber
    int pair_of_k(double k) const;
    std::optional<int> critical_pair() const { return kc_pair_; }

    PairAggregate aggregate(int pair) const;            // over all samples
    PairAggregate block_aggregate(int pair, int b) const;
    BinAggregate bin_aggregate(int bin) const;
    BinAggregate block_bin_aggregate(int bin, int b) const;

    // raw per-sample series of |beta_kc|^2 (decimated), for the
    // autocorrelation-time diagnostic
    const std::vector<double>& critical_intensity_series() const { return series_; }
    int series_decimation() const { return series_decim_; }

  private:
    struct Block {
        std::uint64_t count = 0;
        std::vector<double> shift_sig, shift_pump; // per bin
        std::vector<double> q;                     // flattened sums
    };

    void reset_partial();
    void fill_pair(PairAggregate& agg, const Block& blk, int pair) const;
    void fill_bin(BinAggregate& agg, const Block& blk, int bin) const;

    int n_ = 0;
    double dk_ = 0;
    std::uint64_t samples_per_block_ = 1;
    std::optional<int> kc_pair_;
    std::uint64_t total_count_ = 0;
    Block partial_;
    std::vector<Block> blocks_;
    std::vector<double> scratch_sig_, scratch_pump_; // |beta|^2 per bin
    std::vector<double> series_;
    int series_decim_ = 1;
    int series_phase_ = 0;
};

struct Estimate {
    double value = 0;
    double std_err = 0; // NaN when too few blocks
};

struct Reordered {
    double mean_n;
    double var_n_normal;
};

// Antinormal -> normal reordering of number moments; m1_stderr widens the
// physical-state clip.  Throws DomainError on unphysical m1.
Reordered reorder_number_moments(double m1, double m2, double m1_stderr = 0.0);

// Normal-ordered variance of the +-k intensity difference normalized to the
// shot noise N_N = <:N(k):> + <:N(-k):>.  Throws DomainError when the
// denominator is at or below the statistical floor.
Estimate twin_variance(const MomentAccumulator& acc, int pair, bool pump = false);

// Shot-noise normalized normal-ordered quadrature variances (X_-, X_+).
// Throws DomainError when fewer than min_samples were accumulated.
std::pair<Estimate, Estimate>
quadrature_variances(const MomentAccumulator& acc, int pair,
                     std::uint64_t min_samples = 100);

struct PhaseSum {
    double mean = 0;      // arg <e^{i(theta_+ + theta_-)}>, radians
    double resultant = 0; // |<e^{i(...)}>|, 1 = fully locked
    bool defined = false; // false below threshold (near-uniform phases)
};

PhaseSum phase_sum(const MomentAccumulator& acc, int pair);

// Normal-ordered mean occupations per bin: m1 - 1 for both fields.
struct IntensitySpectra {
    std::vector<double> mean_n1, mean_n1_err;
    std::vector<double> mean_n0, mean_n0_err;
};
IntensitySpectra mean_intensity_spectra(const MomentAccumulator& acc);

// Integrated autocorrelation time (in sample strides) with Sokal windowing.
double estimate_autocorr_time(const std::vector<double>& series);

} // namespace dopoq
