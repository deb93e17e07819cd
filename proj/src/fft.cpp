#include "dopoq/fft.hpp"

#include <cmath>
#include <numbers>

#include "dopoq/errors.hpp"

namespace dopoq {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

Fft::Fft(int n, const kernels::Backend& backend) : n_(n), backend_(&backend) {
    if (!is_pow2(n_))
        throw InvalidParameter("FFT size must be a power of two");
    scale_ = 1.0 / std::sqrt(static_cast<double>(n_));

    bitrev_.resize(n_);
    int log2n = 0;
    while ((1 << log2n) < n_) ++log2n;
    for (int i = 0; i < n_; ++i) {
        int r = 0;
        for (int b = 0; b < log2n; ++b)
            if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
        bitrev_[i] = r;
    }

    twiddle_fwd_.resize(log2n);
    twiddle_inv_.resize(log2n);
    for (int s = 0; s < log2n; ++s) {
        const int m = 1 << s;
        twiddle_fwd_[s].resize(m);
        twiddle_inv_[s].resize(m);
        for (int j = 0; j < m; ++j) {
            const double ang = -std::numbers::pi * j / m;
            twiddle_fwd_[s][j] = {std::cos(ang), std::sin(ang)};
            twiddle_inv_[s][j] = {std::cos(ang), -std::sin(ang)};
        }
    }
}

void Fft::transform(std::span<cplx> data, bool inverse) const {
    if (static_cast<int>(data.size()) != n_)
        throw InvalidParameter("FFT input length mismatch");
    cplx* a = data.data();
    for (int i = 0; i < n_; ++i) {
        const int r = bitrev_[i];
        if (r > i) std::swap(a[i], a[r]);
    }
    const auto& tw = inverse ? twiddle_inv_ : twiddle_fwd_;
    const int log2n = static_cast<int>(tw.size());
    for (int s = 0; s < log2n; ++s) {
        const int m = 1 << s;
        const int step = m << 1;
        for (int blk = 0; blk < n_; blk += step)
            backend_->fft_butterfly(a + blk, a + blk + m, tw[s].data(),
                                    static_cast<std::size_t>(m));
    }
    for (int i = 0; i < n_; ++i) a[i] *= scale_;
}

void Fft::forward(std::span<cplx> data) const { transform(data, false); }
void Fft::inverse(std::span<cplx> data) const { transform(data, true); }

void Fft::forward(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != out.size())
        throw InvalidParameter("FFT input length mismatch");
    std::copy(in.begin(), in.end(), out.begin());
    transform(out, false);
}

void Fft::inverse(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != out.size())
        throw InvalidParameter("FFT input length mismatch");
    std::copy(in.begin(), in.end(), out.begin());
    transform(out, true);
}

} // namespace dopoq
