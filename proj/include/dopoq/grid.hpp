#pragma once

#include <complex>
#include <vector>

#include "dopoq/params.hpp"

namespace dopoq {

using cplx = std::complex<double>;

// Periodic 1-D lattice and its discrete wavenumber ladder.
//
// Wavenumbers are stored in natural DFT bin order: bin m carries
// k = m*dk for m < n/2 and k = (m-n)*dk for m >= n/2.  Bin n/2 is the
// unpaired Nyquist mode; it is evolved but excluded from +-k statistics.
struct Grid {
    int n = 0;
    double length = 0.0;
    double dx = 0.0;
    double dk = 0.0;
    std::vector<double> x; // x_j = j*dx
    std::vector<double> k; // natural DFT bin order (signed values)

    int pair_bin(int bin) const { return bin == 0 ? 0 : n - bin; }
    int nyquist_bin() const { return n / 2; }
    bool is_paired(int bin) const { return bin != 0 && bin != nyquist_bin(); }

    // Bin index of signed mode number m in [-n/2, n/2).
    int bin_of_mode(int m) const { return m >= 0 ? m : m + n; }
};

// Validates n_points/length_L and builds the lattice.
Grid build_grid(const Params& params);

} // namespace dopoq
