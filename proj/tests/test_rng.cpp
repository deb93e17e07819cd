#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "dopoq/rng.hpp"

using namespace dopoq;

TEST_CASE("streams are deterministic in the seed") {
    RngStream a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        all_equal = all_equal && (x == b.next_u64());
        any_diff = any_diff || (x != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("long_jump produces disjoint-looking streams") {
    RngStream a(7);
    RngStream b(7);
    b.long_jump();
    RngStream c(7);
    c.long_jump();
    c.long_jump();
    int collisions = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
        if (x == y || x == z || y == z) ++collisions;
    }
    CHECK(collisions == 0);
}

TEST_CASE("uniform values lie in (0, 1]") {
    RngStream rng(123);
    double lo = 2.0, hi = -1.0;
    for (int i = 0; i < 200000; ++i) {
        const double u = rng.next_uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
    CHECK(lo < 1e-4);
    CHECK(hi > 1.0 - 1e-4);
}

TEST_CASE("ziggurat normals have Gaussian moments and tails") {
    RngStream rng(2024);
    const std::int64_t n = 4'000'000;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    std::int64_t tail3 = 0, tail4 = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
        if (std::abs(x) > 3.0) ++tail3;
        if (std::abs(x) > 4.0) ++tail4;
    }
    const double nd = static_cast<double>(n);
    const double mean = s1 / nd;
    const double var = s2 / nd - mean * mean;
    const double skew = s3 / nd;
    const double kurt = s4 / nd;
    // ~6.7 sigma bands at 4e6 samples
    CHECK(std::abs(mean) < 0.0034);
    CHECK(std::abs(var - 1.0) < 0.0048);
    CHECK(std::abs(skew) < 0.013);
    CHECK(std::abs(kurt - 3.0) < 0.033);
    // P(|x|>3) = 2.6998e-3, P(|x|>4) = 6.334e-5
    CHECK(std::abs(tail3 / nd - 2.6998e-3) < 2.0e-4);
    CHECK(std::abs(tail4 / nd - 6.334e-5) < 3.5e-5);
}
