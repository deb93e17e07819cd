#pragma once

#include <array>
#include <cstdint>

namespace dopoq {

// xoshiro256++ with splitmix64 seeding.  long_jump() advances 2^192 states,
// giving per-trajectory streams that are independent of scheduling.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t next_u64();
    // uniform in (0, 1]
    double next_uniform();
    // standard normal via the 128-box ziggurat
    double next_normal();

    void long_jump();

  private:
    double normal_tail(bool negative);

    std::array<std::uint64_t, 4> s_{};
};

} // namespace dopoq
