#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dopoq/kernels.hpp"

namespace dopoq {

using cplx = std::complex<double>;

// Unitary radix-2 FFT (1/sqrt(N) on both directions), power-of-two sizes.
// Forward convention: F[f]_m = (1/sqrt(N)) sum_j f_j exp(-2*pi*i*m*j/N),
// so a plane wave exp(+i k_m x_j) lands in bin m with amplitude sqrt(N).
class Fft {
  public:
    explicit Fft(int n, const kernels::Backend& backend = kernels::select_backend());

    int size() const { return n_; }

    void forward(std::span<cplx> data) const;  // in place
    void inverse(std::span<cplx> data) const;  // in place

    void forward(std::span<const cplx> in, std::span<cplx> out) const;
    void inverse(std::span<const cplx> in, std::span<cplx> out) const;

  private:
    void transform(std::span<cplx> data, bool inverse) const;

    int n_;
    const kernels::Backend* backend_;
    std::vector<int> bitrev_;
    // per-stage twiddles, stage s has half-size m = 2^s
    std::vector<std::vector<cplx>> twiddle_fwd_;
    std::vector<std::vector<cplx>> twiddle_inv_;
    double scale_;
};

} // namespace dopoq
