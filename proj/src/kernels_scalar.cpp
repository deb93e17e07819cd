#include "dopoq/kernels.hpp"

#include <cmath>

namespace dopoq::kernels {
namespace {

void cmul_pointwise_scalar(cplx* f, const cplx* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double fr = f[i].real(), fi = f[i].imag();
        const double wr = w[i].real(), wi = w[i].imag();
        f[i] = {fr * wr - fi * wi, fr * wi + fi * wr};
    }
}

void fft_butterfly_scalar(cplx* a, cplx* b, const cplx* w, std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) {
        const double br = b[j].real(), bi = b[j].imag();
        const double wr = w[j].real(), wi = w[j].imag();
        const double tr = br * wr - bi * wi;
        const double ti = br * wi + bi * wr;
        const double ar = a[j].real(), ai = a[j].imag();
        b[j] = {ar - tr, ai - ti};
        a[j] = {ar + tr, ai + ti};
    }
}

void em_update_scalar(cplx* alpha0, cplx* alpha1, const double* g,
                      std::size_t n, double dt, double pump_E,
                      double amp0, double amp1) {
    const double* g0 = g;
    const double* g1 = g + n;
    const double* g2 = g + 2 * n;
    const double* g3 = g + 3 * n;
    for (std::size_t i = 0; i < n; ++i) {
        const double a0r = alpha0[i].real(), a0i = alpha0[i].imag();
        const double a1r = alpha1[i].real(), a1i = alpha1[i].imag();

        // drift at the pre-point: f0 = E - alpha1^2/2, f1 = alpha0 conj(alpha1)
        const double sq_r = a1r * a1r - a1i * a1i;
        const double sq_i = 2.0 * a1r * a1i;
        const double f0r = pump_E - 0.5 * sq_r;
        const double f0i = -0.5 * sq_i;
        const double f1r = a0r * a1r + a0i * a1i;
        const double f1i = a0i * a1r - a0r * a1i;

        // Heun (trapezoidal) drift: predictor then corrector, so the
        // deterministic part of the substep is second-order accurate
        const double p0r = a0r + dt * f0r, p0i = a0i + dt * f0i;
        const double p1r = a1r + dt * f1r, p1i = a1i + dt * f1i;
        const double psq_r = p1r * p1r - p1i * p1i;
        const double psq_i = 2.0 * p1r * p1i;
        const double h0r = pump_E - 0.5 * psq_r;
        const double h0i = -0.5 * psq_i;
        const double h1r = p0r * p1r + p0i * p1i;
        const double h1i = p0i * p1r - p0r * p1i;

        const double n0r = a0r + 0.5 * dt * (f0r + h0r) + amp0 * g0[i];
        const double n0i = a0i + 0.5 * dt * (f0i + h0i) + amp0 * g1[i];

        // phase-sensitive signal noise, synthesized from the old pump value
        // (Ito: diffusion coefficients stay at the pre-point)
        const double q = 2.0 + a0r;
        const double sq = std::sqrt(q);
        const double cphi_r = -a0i / (2.0 * sq);
        const double cphi_i = 0.5 * sq;
        double rad = 1.0 - 0.25 * (a0r * a0r + a0i * a0i);
        rad = rad > 0.0 ? rad : 0.0;
        const double cpsi = std::sqrt(rad / q);
        const double xi_r = cphi_r * g2[i] + cpsi * g3[i];
        const double xi_i = cphi_i * g2[i];

        alpha1[i] = {a1r + 0.5 * dt * (f1r + h1r) + amp1 * xi_r,
                     a1i + 0.5 * dt * (f1i + h1i) + amp1 * xi_i};
        alpha0[i] = {n0r, n0i};
    }
}

double max_abs2_scalar(const cplx* f, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = f[i].real() * f[i].real() + f[i].imag() * f[i].imag();
        if (v > m) m = v;
    }
    return m;
}

double sum_abs2_scalar(const cplx* f, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += f[i].real() * f[i].real() + f[i].imag() * f[i].imag();
    return s;
}

} // namespace

const Backend& scalar_backend() {
    static const Backend backend{
        "scalar",        cmul_pointwise_scalar, fft_butterfly_scalar,
        em_update_scalar, max_abs2_scalar,       sum_abs2_scalar,
    };
    return backend;
}

} // namespace dopoq::kernels
