#include "dopoq/rng.hpp"

#include <cmath>

namespace dopoq {
namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Marsaglia/Doornik 128-box ziggurat tables for the standard normal.
constexpr int kZigBoxes = 128;
constexpr double kZigR = 3.442619855899;
constexpr double kZigV = 9.91256303526217e-3;

struct ZigTables {
    double x[kZigBoxes + 1];
    double ratio[kZigBoxes];
    ZigTables() {
        const double f = std::exp(-0.5 * kZigR * kZigR);
        x[0] = kZigV / f;
        x[1] = kZigR;
        x[kZigBoxes] = 0.0;
        for (int i = 2; i < kZigBoxes; ++i)
            x[i] = std::sqrt(-2.0 * std::log(kZigV / x[i - 1] +
                                             std::exp(-0.5 * x[i - 1] * x[i - 1])));
        for (int i = 0; i < kZigBoxes; ++i) ratio[i] = x[i + 1] / x[i];
    }
};

const ZigTables& zig() {
    static const ZigTables tables;
    return tables;
}

} // namespace

RngStream::RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

void RngStream::long_jump() {
    static const std::uint64_t kJump[] = {
        0x76e15d3efefdcbbfULL, 0xc5004e441c522fb3ULL,
        0x77710069854ee241ULL, 0x39109bb02acbe635ULL};
    std::uint64_t s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    for (std::uint64_t jump : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (jump & (1ULL << b)) {
                s0 ^= s_[0];
                s1 ^= s_[1];
                s2 ^= s_[2];
                s3 ^= s_[3];
            }
            next_u64();
        }
    }
    s_ = {s0, s1, s2, s3};
}

double RngStream::normal_tail(bool negative) {
    double x, y;
    do {
        x = std::log(next_uniform()) / kZigR;
        y = std::log(next_uniform());
    } while (-2.0 * y < x * x);
    return negative ? x - kZigR : kZigR - x;
}

double RngStream::next_normal() {
    const ZigTables& t = zig();
    for (;;) {
        const std::uint64_t bits = next_u64();
        const int i = static_cast<int>(bits & 0x7F);
        // signed uniform in (-1, 1) from the top 53 bits
        const double u =
            2.0 * ((static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53) - 1.0;
        if (std::fabs(u) < t.ratio[i]) return u * t.x[i];
        if (i == 0) return normal_tail(u < 0.0);
        const double x = u * t.x[i];
        const double f0 = std::exp(-0.5 * (t.x[i] * t.x[i] - x * x));
        const double f1 = std::exp(-0.5 * (t.x[i + 1] * t.x[i + 1] - x * x));
        if (f1 + next_uniform() * (f0 - f1) < 1.0) return x;
    }
}

} // namespace dopoq
