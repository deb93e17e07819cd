#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace dopoq::kernels {

using cplx = std::complex<double>;

// Data-parallel inner loops of the integrator.  Every entry has a scalar
// reference implementation and (on x86-64) an AVX2+FMA variant selected at
// runtime; the two are equivalence-tested against each other.
struct Backend {
    const char* name;

    // f[i] *= w[i]  (spectral propagator application)
    void (*cmul_pointwise)(cplx* f, const cplx* w, std::size_t n);

    // one FFT stage half-block: t = w[j]*b[j]; b[j] = a[j] - t; a[j] += t
    void (*fft_butterfly)(cplx* a, cplx* b, const cplx* w, std::size_t m);

    // Euler-Maruyama update of both fields from pre-drawn unit normals.
    // g holds four planes of length n: g0,g1 feed the pump noise, g2,g3 the
    // phase-sensitive signal noise.  amp0 = c*sqrt(dt/dx),
    // amp1 = sqrt(2)*c*sqrt(dt/dx).  Old-field values are used on every
    // right-hand side (Ito).
    void (*em_update)(cplx* alpha0, cplx* alpha1, const double* g,
                      std::size_t n, double dt, double pump_E,
                      double amp0, double amp1);

    double (*max_abs2)(const cplx* f, std::size_t n);
    double (*sum_abs2)(const cplx* f, std::size_t n);
};

const Backend& scalar_backend();
bool avx2_available();
const Backend& avx2_backend(); // valid only if avx2_available()

// "auto" picks the widest ISA the CPU supports; DOPOQ_KERNEL env overrides.
const Backend& select_backend(std::string_view preference = "auto");

} // namespace dopoq::kernels
