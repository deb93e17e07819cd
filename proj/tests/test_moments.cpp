#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dopoq/errors.hpp"
#include "dopoq/moments.hpp"

using namespace dopoq;

namespace {

Params small_params() {
    Params p;
    p.block_time = 50.0;   // 50 samples per block at unit stride
    p.sample_stride = 1.0;
    return p;
}

struct Synth {
    std::mt19937_64 gen;
    std::normal_distribution<double> nd;
    explicit Synth(unsigned seed) : gen(seed) {}
    // circular complex Gaussian with <|z|^2> = var around mu
    cplx mode(cplx mu, double var) {
        const double s = std::sqrt(var / 2.0);
        return mu + cplx(s * nd(gen), s * nd(gen));
    }
};

ModeAmplitudes vacuum_frame(Synth& sy, int n) {
    ModeAmplitudes a;
    a.signal.resize(n);
    a.pump.resize(n);
    for (int m = 0; m < n; ++m) {
        a.signal[m] = sy.mode(0.0, 1.0);
        a.pump[m] = sy.mode(0.0, 1.0);
    }
    return a;
}

} // namespace

TEST_CASE("reordering identities on closed-form moments") {
    const auto vac = reorder_number_moments(1.0, 2.0);
    CHECK(vac.mean_n == doctest::Approx(0.0));
    CHECK(vac.var_n_normal == doctest::Approx(0.0));

    const auto coh = reorder_number_moments(5.0, 34.0); // |mu|^2 = 4
    CHECK(coh.mean_n == doctest::Approx(4.0));
    CHECK(coh.var_n_normal == doctest::Approx(0.0));

    const auto th = reorder_number_moments(2.0, 8.0); // thermal nbar = 1
    CHECK(th.mean_n == doctest::Approx(1.0));
    CHECK(th.var_n_normal == doctest::Approx(1.0));

    CHECK_THROWS_AS(reorder_number_moments(0.9, 2.0), DomainError);
    CHECK_NOTHROW(reorder_number_moments(0.99, 2.0, 0.01));
}

TEST_CASE("pair bookkeeping and the critical pair") {
    const Params p = small_params();
    const Grid g = build_grid(p);
    MomentAccumulator acc(p, g);
    CHECK(acc.n_pairs() == 31);
    CHECK(acc.pair_k(0) == doctest::Approx(0.075));
    CHECK(acc.pair_k(3) == doctest::Approx(0.3));
    CHECK(acc.pair_bin_plus(3) == 4);
    CHECK(acc.pair_of_k(0.3) == 3);
    CHECK(acc.pair_of_k(-0.3) == 3);
    CHECK(acc.pair_of_k(0.0) == 0);
    CHECK(acc.pair_of_k(100.0) == 30);
    REQUIRE(acc.critical_pair().has_value());
    CHECK(*acc.critical_pair() == 3);
}

TEST_CASE("vacuum synthetic samples: zero normal-ordered statistics") {
    const Params p = small_params();
    const Grid g = build_grid(p);
    MomentAccumulator acc(p, g);
    Synth sy(1);
    const int n_samp = 20000;
    for (int i = 0; i < n_samp; ++i) acc.accumulate(vacuum_frame(sy, g.n));
    acc.close_block();
    CHECK(acc.sample_count() == static_cast<std::uint64_t>(n_samp));
    CHECK(acc.completed_blocks() == n_samp / 50);

    const auto agg = acc.bin_aggregate(5);
    const auto re = reorder_number_moments(agg.m1_sig, agg.m2_sig, 0.02);
    CHECK(std::abs(re.mean_n) < 0.05);
    CHECK(std::abs(re.var_n_normal) < 0.1);

    const auto [xm, xp] = quadrature_variances(acc, 3);
    CHECK(std::abs(xm.value) < 5.0 * xm.std_err);
    CHECK(std::abs(xp.value) < 5.0 * xp.std_err);
    CHECK(xm.std_err < 0.1);

    // both modes at vacuum: twin variance is the 0/0 degenerate case
    CHECK_THROWS_AS(twin_variance(acc, 3), DomainError);

    // phases are unlocked
    const auto ph = phase_sum(acc, 3);
    CHECK_FALSE(ph.defined);
}

TEST_CASE("independent coherent modes: twin variance converges to zero") {
    const Params p = small_params();
    const Grid g = build_grid(p);
    MomentAccumulator acc(p, g);
    Synth sy(2);
    const cplx mu(2.0, 0.0); // <:n:> = 4 per mode
    for (int i = 0; i < 40000; ++i) {
        auto frame = vacuum_frame(sy, g.n);
        frame.signal[4] = sy.mode(mu, 1.0);
        frame.signal[60] = sy.mode(mu, 1.0);
        acc.accumulate(frame);
    }
    acc.close_block();

    const auto agg = acc.aggregate(3);
    CHECK(agg.m1_plus == doctest::Approx(5.0).epsilon(0.02));
    const auto v = twin_variance(acc, 3);
    CHECK(std::abs(v.value) < 4.0 * v.std_err);
    CHECK(v.std_err < 0.05);
}

TEST_CASE("duplicated intensity draws: perfectly correlated pair") {
    // |beta(-k)|^2 duplicates |beta(k)|^2 exactly, so Var_Q(d) = 0 and the
    // estimator must return -2 - 2/S with S the summed mean occupation.
    const Params p = small_params();
    const Grid g = build_grid(p);
    MomentAccumulator acc(p, g);
    Synth sy(3);
    for (int i = 0; i < 30000; ++i) {
        auto frame = vacuum_frame(sy, g.n);
        const cplx z = sy.mode(0.0, 6.0); // thermal-like, <|z|^2> = 6
        frame.signal[4] = z;
        const double phase = sy.nd(sy.gen);
        frame.signal[60] = std::abs(z) * std::exp(cplx(0.0, phase));
        acc.accumulate(frame);
    }
    acc.close_block();
    const auto agg = acc.aggregate(3);
    const double s = (agg.m1_plus - 1.0) + (agg.m1_minus - 1.0);
    const auto v = twin_variance(acc, 3);
    CHECK(v.value == doctest::Approx(-2.0 - 2.0 / s).epsilon(0.02));
}

TEST_CASE("thermal occupation reordering from samples") {
    const Params p = small_params();
    const Grid g = build_grid(p);
    MomentAccumulator acc(p, g);
    Synth sy(4);
    for (int i = 0; i < 60000; ++i) {
        auto frame = vacuum_frame(sy, g.n);
        frame.signal[4] = sy.mode(0.0, 2.0); // nbar = 1
        acc.accumulate(frame);
    }
    acc.close_block();
    const auto agg = acc.bin_aggregate(4);
    const auto re = reorder_number_moments(agg.m1_sig, agg.m2_sig);
    CHECK(re.mean_n == doctest::Approx(1.0).epsilon(0.03));
    CHECK(re.var_n_normal == doctest::Approx(1.0).epsilon(0.12));
}

TEST_CASE("synthetic stripe: phase sum returns twice the common phase") {
    const Params p = small_params();
    const Grid g = build_grid(p);
    MomentAccumulator acc(p, g);
    Synth sy(5);
    const double chi = 0.7;
    for (int i = 0; i < 2000; ++i) {
        auto frame = vacuum_frame(sy, g.n);
        frame.signal[4] = sy.mode(5.0 * std::exp(cplx(0.0, chi)), 1.0);
        frame.signal[60] = sy.mode(5.0 * std::exp(cplx(0.0, chi)), 1.0);
        acc.accumulate(frame);
    }
    acc.close_block();
    const auto ph = phase_sum(acc, 3);
    REQUIRE(ph.defined);
    CHECK(ph.resultant > 0.9);
    CHECK(ph.mean == doctest::Approx(2.0 * chi).epsilon(0.03));
}

TEST_CASE("merge of per-trajectory accumulators is bit-identical") {
    const Params p = small_params();
    const Grid g = build_grid(p);

    MomentAccumulator whole(p, g);
    std::vector<MomentAccumulator> parts;
    Synth sy_a(6), sy_b(6);
    for (int traj = 0; traj < 3; ++traj) {
        MomentAccumulator part(p, g);
        const int len = 120 + 17 * traj; // not a block multiple
        for (int i = 0; i < len; ++i) {
            // identical streams feed both paths
            const auto fa = vacuum_frame(sy_a, g.n);
            const auto fb = vacuum_frame(sy_b, g.n);
            whole.accumulate(fa);
            part.accumulate(fb);
        }
        whole.close_block();
        part.close_block();
        parts.push_back(std::move(part));
    }
    MomentAccumulator merged(p, g);
    for (const auto& part : parts) merged.merge(part);

    CHECK(merged.sample_count() == whole.sample_count());
    CHECK(merged.completed_blocks() == whole.completed_blocks());
    for (int pair : {0, 3, 17}) {
        const auto a = whole.aggregate(pair);
        const auto b = merged.aggregate(pair);
        CHECK(a.m1_plus == b.m1_plus);
        CHECK(a.m2_plus == b.m2_plus);
        CHECK(a.d2_mean == b.d2_mean);
        CHECK(a.xm2_mean == b.xm2_mean);
        CHECK(a.cos_mean == b.cos_mean);
    }

    // merging an accumulator with a dangling partial block is refused
    MomentAccumulator open_acc(p, g);
    open_acc.accumulate(vacuum_frame(sy_a, g.n));
    MomentAccumulator target(p, g);
    CHECK_THROWS_AS(target.merge(open_acc), NumericalFailure);
}

TEST_CASE("insufficient samples raise for quadratures") {
    const Params p = small_params();
    const Grid g = build_grid(p);
    MomentAccumulator acc(p, g);
    Synth sy(8);
    for (int i = 0; i < 10; ++i) acc.accumulate(vacuum_frame(sy, g.n));
    acc.close_block();
    CHECK_THROWS_AS(quadrature_variances(acc, 3), DomainError);
}

TEST_CASE("autocorrelation time of white and correlated series") {
    std::mt19937_64 gen(9);
    std::normal_distribution<double> nd;
    std::vector<double> white(20000);
    for (auto& v : white) v = nd(gen);
    const double tau_white = estimate_autocorr_time(white);
    CHECK(tau_white == doctest::Approx(0.5).epsilon(0.1));

    // AR(1) with coefficient a: tau = 0.5 * (1+a)/(1-a)
    const double a = 0.9;
    std::vector<double> ar(200000);
    double x = 0;
    for (auto& v : ar) {
        x = a * x + nd(gen);
        v = x;
    }
    const double tau_ar = estimate_autocorr_time(ar);
    CHECK(tau_ar == doctest::Approx(0.5 * (1 + a) / (1 - a)).epsilon(0.15));
}
