#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dopoq/errors.hpp"
#include "dopoq/fft.hpp"
#include "dopoq/grid.hpp"

using namespace dopoq;
using std::numbers::pi;

namespace {

// quadratic-time DFT used as the oracle for the FFT
std::vector<cplx> direct_dft(const std::vector<cplx>& f, bool inverse) {
    const int n = static_cast<int>(f.size());
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cplx> out(n);
    for (int m = 0; m < n; ++m) {
        cplx acc = 0;
        for (int j = 0; j < n; ++j)
            acc += f[j] * std::exp(cplx(0.0, sign * 2.0 * pi * m * j / n));
        out[m] = acc / std::sqrt(static_cast<double>(n));
    }
    return out;
}

std::vector<cplx> random_field(int n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> f(n);
    for (auto& v : f) v = {nd(gen), nd(gen)};
    return f;
}

} // namespace

TEST_CASE("default grid matches the four-critical-wavelength geometry") {
    Params p;
    const Grid g = build_grid(p);
    CHECK(g.n == 64);
    CHECK(g.dk == doctest::Approx(0.075).epsilon(1e-14));
    CHECK(g.dx == doctest::Approx(g.length / 64).epsilon(1e-14));
    // k_c = 0.3 sits exactly on the 4th mode
    CHECK(g.k[4] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(g.k[60] == doctest::Approx(-0.3).epsilon(1e-14));
    // ladder covers [-2.4, 2.325]
    double kmin = 1e9, kmax = -1e9;
    for (double k : g.k) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    CHECK(kmin == doctest::Approx(-2.4).epsilon(1e-14));
    CHECK(kmax == doctest::Approx(2.325).epsilon(1e-14));
    CHECK(g.bin_of_mode(4) == 4);
    CHECK(g.bin_of_mode(-4) == 60);
    CHECK(g.pair_bin(4) == 60);
    CHECK(g.nyquist_bin() == 32);
    CHECK_FALSE(g.is_paired(0));
    CHECK_FALSE(g.is_paired(32));
    CHECK(g.is_paired(1));
}

TEST_CASE("small grid wavenumber ladder") {
    Params p;
    p.n_points = 8;
    p.length_L = 2.0 * pi;
    const Grid g = build_grid(p);
    const double expect[8] = {0, 1, 2, 3, -4, -3, -2, -1};
    for (int m = 0; m < 8; ++m)
        CHECK(g.k[m] == doctest::Approx(expect[m]).epsilon(1e-14));
    for (int j = 0; j < 8; ++j)
        CHECK(g.x[j] == doctest::Approx(j * g.dx).epsilon(1e-14));
}

TEST_CASE("parameter validation rejects degenerate inputs") {
    auto bad = [](auto&& mutate) {
        Params p;
        mutate(p);
        CHECK_THROWS_AS(p.validate(), InvalidParameter);
    };
    bad([](Params& p) { p.length_L = 0.0; });
    bad([](Params& p) { p.n_points = 4; });
    bad([](Params& p) { p.n_points = 48; });
    bad([](Params& p) { p.dt = -0.01; });
    bad([](Params& p) { p.noise_c = 0.0; });
    bad([](Params& p) { p.t_transient = 2e4; });
    bad([](Params& p) { p.sample_stride = 0.0; });
    Params ok;
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("unitary FFT against the direct DFT oracle") {
    for (int n : {8, 64, 128}) {
        const Fft fft(n);
        const auto f = random_field(n, 7u + static_cast<unsigned>(n));
        const auto oracle = direct_dft(f, false);
        std::vector<cplx> out(n);
        fft.forward(std::span<const cplx>(f), std::span<cplx>(out));
        double err = 0, norm = 0;
        for (int m = 0; m < n; ++m) {
            err += std::norm(out[m] - oracle[m]);
            norm += std::norm(oracle[m]);
        }
        CHECK(std::sqrt(err / norm) < 1e-12);

        const auto back = direct_dft(oracle, true);
        std::vector<cplx> out2(out);
        fft.inverse(std::span<cplx>(out2));
        err = 0;
        for (int m = 0; m < n; ++m) err += std::norm(out2[m] - f[m]);
        CHECK(std::sqrt(err / norm) < 1e-12);
        (void)back;
    }
}

TEST_CASE("Parseval identity and round trip") {
    const int n = 64;
    const Fft fft(n);
    auto f = random_field(n, 99);
    double near = 0;
    for (const auto& v : f) near += std::norm(v);
    std::vector<cplx> modes(n);
    fft.forward(std::span<const cplx>(f), std::span<cplx>(modes));
    double far = 0;
    for (const auto& v : modes) far += std::norm(v);
    CHECK(far == doctest::Approx(near).epsilon(1e-12));

    auto g = f;
    fft.forward(std::span<cplx>(g));
    fft.inverse(std::span<cplx>(g));
    double err = 0;
    for (int j = 0; j < n; ++j) err += std::norm(g[j] - f[j]);
    CHECK(std::sqrt(err / near) < 1e-12);
}

TEST_CASE("constant and plane-wave transforms") {
    Params p;
    const Grid grid = build_grid(p);
    const Fft fft(grid.n);

    std::vector<cplx> c(grid.n, cplx(0.7, -0.2));
    std::vector<cplx> modes(grid.n);
    fft.forward(std::span<const cplx>(c), std::span<cplx>(modes));
    CHECK(std::abs(modes[0] - std::sqrt(64.0) * cplx(0.7, -0.2)) < 1e-12);
    for (int m = 1; m < grid.n; ++m) CHECK(std::abs(modes[m]) < 1e-12);

    // plane wave exp(+i k_4 x_j) lands in bin 4 with amplitude sqrt(N)
    std::vector<cplx> wave(grid.n);
    for (int j = 0; j < grid.n; ++j)
        wave[j] = std::exp(cplx(0.0, grid.k[4] * grid.x[j]));
    fft.forward(std::span<const cplx>(wave), std::span<cplx>(modes));
    CHECK(std::abs(modes[4] - std::sqrt(64.0)) < 1e-10);
    for (int m = 0; m < grid.n; ++m)
        if (m != 4) CHECK(std::abs(modes[m]) < 1e-10);
}

TEST_CASE("FFT argument errors") {
    CHECK_THROWS_AS(Fft(48), InvalidParameter);
    CHECK_THROWS_AS(Fft(0), InvalidParameter);
    const Fft fft(16);
    std::vector<cplx> small(8), out(16);
    CHECK_THROWS_AS(fft.forward(std::span<cplx>(small)), InvalidParameter);
    CHECK_THROWS_AS(
        fft.forward(std::span<const cplx>(small), std::span<cplx>(out)),
        InvalidParameter);
}
