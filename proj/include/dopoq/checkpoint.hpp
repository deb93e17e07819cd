#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "dopoq/engine.hpp"
#include "dopoq/params.hpp"

namespace dopoq {

// Trajectory snapshot file, little-endian binary:
//   magic   8 bytes  "DOPQCKP1"
//   version u32      (currently 1)
//   n       u32      lattice points
//   f64 x5           delta0, delta1, pump_E, noise_c, length_L
// followed by records until end of file, each:
//   f64              time
//   f64 x 2n         alpha0 (re, im interleaved)
//   f64 x 2n         alpha1 (re, im interleaved)
// Records-until-EOF keeps incremental writes valid without patching a count.
struct CheckpointHeader {
    std::uint32_t version = 1;
    std::uint32_t n = 0;
    double delta0 = 0, delta1 = 0, pump_E = 0, noise_c = 0, length_L = 0;
};

class CheckpointWriter {
  public:
    CheckpointWriter(const std::string& path, const Params& params);
    void append(const FieldState& state);

  private:
    std::ofstream out_;
    std::uint32_t n_;
};

class CheckpointReader {
  public:
    explicit CheckpointReader(const std::string& path);
    const CheckpointHeader& header() const { return header_; }
    // Fills params fields stored in the header, keeping the rest of `base`.
    Params params_from_header(const Params& base) const;
    // Returns false at end of file; throws NumericalFailure on a short read.
    bool next(FieldState& state);

  private:
    std::ifstream in_;
    CheckpointHeader header_;
};

} // namespace dopoq
