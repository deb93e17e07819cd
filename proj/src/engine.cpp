#include "dopoq/engine.hpp"

#include <cmath>

#include "dopoq/errors.hpp"
#include "dopoq/linear_analysis.hpp"

namespace dopoq {

cplx synth_signal_noise(cplx alpha0_cell, double phi_cell, double psi_cell) {
    const double r = alpha0_cell.real();
    const double s = alpha0_cell.imag();
    if (std::norm(alpha0_cell) >= 4.0 || r <= -2.0)
        throw DomainError("synth_signal_noise outside the diffusion-positivity "
                          "region |alpha0| < 2");
    const double q = 2.0 + r;
    const double sq = std::sqrt(q);
    const cplx coef_phi(-s / (2.0 * sq), 0.5 * sq);
    const double coef_psi = std::sqrt((1.0 - std::norm(alpha0_cell) / 4.0) / q);
    return coef_phi * phi_cell + coef_psi * psi_cell;
}

bool guard_diffusion(const FieldState& state) {
    for (const cplx& v : state.alpha0)
        if (std::norm(v) >= 4.0) return false;
    return true;
}

FieldState make_initial_condition(InitKind kind, const Params& params,
                                  const Grid& grid,
                                  const std::function<double()>& gauss) {
    FieldState state;
    state.alpha0.assign(grid.n, cplx(0.0));
    state.alpha1.assign(grid.n, cplx(0.0));
    state.time = 0.0;

    switch (kind) {
        case InitKind::paper_modulated: {
            const double kc = linear::critical_wavenumber(params.delta1);
            for (int j = 0; j < grid.n; ++j)
                state.alpha1[j] =
                    1e-5 * (gauss() + 10.0 * std::sin(kc * grid.x[j]));
            break;
        }
        case InitKind::noise:
            for (int j = 0; j < grid.n; ++j) state.alpha1[j] = 1e-5 * gauss();
            break;
        case InitKind::step: {
            // two half-domains at the classical signal values' sign
            for (int j = 0; j < grid.n; ++j)
                state.alpha1[j] = j < grid.n / 2 ? -1.0 : 1.0;
            const auto triv = linear::trivial_homogeneous(params.pump_E, params.delta0);
            state.alpha0.assign(grid.n, triv.a0_st);
            break;
        }
        case InitKind::rolls: {
            const double kc = linear::critical_wavenumber(params.delta1);
            for (int j = 0; j < grid.n; ++j)
                state.alpha1[j] = params.rolls_amplitude * std::cos(kc * grid.x[j]);
            const auto triv = linear::trivial_homogeneous(params.pump_E, params.delta0);
            state.alpha0.assign(grid.n, triv.a0_st);
            break;
        }
    }
    return state;
}

namespace {

std::vector<cplx> make_propagator(const Grid& grid, double detuning,
                                  double diffraction, double dt) {
    std::vector<cplx> prop(grid.n);
    for (int m = 0; m < grid.n; ++m) {
        const double k2 = grid.k[m] * grid.k[m];
        const cplx exponent(-dt, -(detuning + diffraction * k2) * dt);
        prop[m] = std::exp(exponent);
    }
    return prop;
}

} // namespace

Integrator::Integrator(const Params& params, const Grid& grid,
                       const kernels::Backend& backend)
    : params_(params), grid_(grid), backend_(&backend),
      fft_(grid.n, backend) {
    params_.validate();
    prop0_full_ = make_propagator(grid_, params_.delta0, 1.0, params_.dt);
    prop1_full_ = make_propagator(grid_, params_.delta1, 2.0, params_.dt);
    prop0_half_ = make_propagator(grid_, params_.delta0, 1.0, 0.5 * params_.dt);
    prop1_half_ = make_propagator(grid_, params_.delta1, 2.0, 0.5 * params_.dt);
    const double noise_cell = params_.noise_c * std::sqrt(params_.dt / grid_.dx);
    amp0_ = noise_cell;
    amp1_ = std::sqrt(2.0) * noise_cell;
}

void Integrator::apply_propagator(FieldState& state,
                                  const std::vector<cplx>& prop0,
                                  const std::vector<cplx>& prop1) const {
    const std::size_t n = static_cast<std::size_t>(grid_.n);
    fft_.forward(std::span<cplx>(state.alpha0));
    backend_->cmul_pointwise(state.alpha0.data(), prop0.data(), n);
    fft_.inverse(std::span<cplx>(state.alpha0));
    fft_.forward(std::span<cplx>(state.alpha1));
    backend_->cmul_pointwise(state.alpha1.data(), prop1.data(), n);
    fft_.inverse(std::span<cplx>(state.alpha1));
}

void Integrator::linear_step(FieldState& state, double dt) const {
    const auto prop0 = make_propagator(grid_, params_.delta0, 1.0, dt);
    const auto prop1 = make_propagator(grid_, params_.delta1, 2.0, dt);
    apply_propagator(state, prop0, prop1);
}

void Integrator::nonlinear_noise_step(FieldState& state, const NoiseDraw& noise,
                                      double dt) const {
    const std::size_t n = static_cast<std::size_t>(grid_.n);
    backend_->em_update(state.alpha0.data(), state.alpha1.data(),
                        noise.g.data(), n, dt, params_.pump_E,
                        params_.noise_c * std::sqrt(dt / grid_.dx),
                        std::sqrt(2.0) * params_.noise_c * std::sqrt(dt / grid_.dx));
    check_finite(state);
}

void Integrator::check_finite(const FieldState& state) const {
    const std::size_t n = static_cast<std::size_t>(grid_.n);
    const double total = backend_->sum_abs2(state.alpha0.data(), n) +
                         backend_->sum_abs2(state.alpha1.data(), n);
    if (!std::isfinite(total))
        throw NumericalFailure("non-finite field value at t = " +
                               std::to_string(state.time));
}

TrajectoryOutcome Integrator::run_trajectory(
    FieldState state, RngStream& rng,
    const std::function<void(const FieldState&)>& sampler) const {
    const std::size_t n = static_cast<std::size_t>(grid_.n);
    const double dt = params_.dt;
    const auto n_steps =
        static_cast<std::uint64_t>(std::llround(params_.t_total / dt));
    const auto transient_steps =
        static_cast<std::uint64_t>(std::llround(params_.t_transient / dt));
    std::uint64_t sample_every =
        static_cast<std::uint64_t>(std::llround(params_.sample_stride / dt));
    if (sample_every == 0) sample_every = 1;

    TrajectoryOutcome out;
    if (!guard_diffusion(state)) {
        out.status = TrajectoryStatus::rejected;
        out.rejection_time = state.time;
        return out;
    }

    NoiseDraw noise(grid_.n);
    apply_propagator(state, prop0_half_, prop1_half_);
    for (std::uint64_t step = 1; step <= n_steps; ++step) {
        noise.fill(rng);
        backend_->em_update(state.alpha0.data(), state.alpha1.data(),
                            noise.g.data(), n, dt, params_.pump_E, amp0_, amp1_);
        ++out.steps_taken;
        state.time = step * dt;

        if (backend_->max_abs2(state.alpha0.data(), n) >= 4.0) {
            out.status = TrajectoryStatus::rejected;
            out.rejection_time = state.time;
            return out;
        }
        check_finite(state);

        const bool boundary = (step % sample_every == 0) || step == n_steps;
        if (boundary) {
            apply_propagator(state, prop0_half_, prop1_half_);
            if (step > transient_steps && sampler) {
                sampler(state);
                ++out.samples_contributed;
            }
            if (step != n_steps)
                apply_propagator(state, prop0_half_, prop1_half_);
        } else {
            apply_propagator(state, prop0_full_, prop1_full_);
        }
    }
    out.status = TrajectoryStatus::completed;
    return out;
}

} // namespace dopoq
