#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "dopoq/fft.hpp"
#include "dopoq/grid.hpp"
#include "dopoq/rng.hpp"

namespace dopoq {

// Pair of complex fields on the lattice at one instant.
struct FieldState {
    std::vector<cplx> alpha0; // pump
    std::vector<cplx> alpha1; // signal
    double time = 0.0;
};

enum class TrajectoryStatus { completed, rejected };

struct TrajectoryOutcome {
    TrajectoryStatus status = TrajectoryStatus::completed;
    double rejection_time = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t samples_contributed = 0;
    std::uint64_t steps_taken = 0;
};

// Pre-drawn white-noise lattices for one step, as four planes of unit
// normals: g0,g1 (pump, real/imag) and g2,g3 (signal phi/psi).
struct NoiseDraw {
    std::vector<double> g;
    explicit NoiseDraw(int n_points) : g(4 * static_cast<std::size_t>(n_points)) {}
    void fill(RngStream& rng) {
        for (double& v : g) v = rng.next_normal();
    }
};

// Phase-sensitive multiplicative signal noise for one cell, from unit
// normals phi/psi.  Throws DomainError when the diffusion-positivity
// precondition |alpha0| < 2 is violated (the caller must already have
// rejected such a trajectory).
cplx synth_signal_noise(cplx alpha0_cell, double phi_cell, double psi_cell);

// Diffusion positivity guard: false (reject) iff max |alpha0| >= 2.
bool guard_diffusion(const FieldState& state);

// gauss() must return independent unit normals.
FieldState make_initial_condition(InitKind kind, const Params& params,
                                  const Grid& grid,
                                  const std::function<double()>& gauss);

// Split-step integrator: exact spectral propagation of the linear part,
// Euler-Maruyama for the nonlinear and noise parts, Strang ordering.
class Integrator {
  public:
    Integrator(const Params& params, const Grid& grid,
               const kernels::Backend& backend = kernels::select_backend());

    // Exact linear substep (both fields), any dt.  Exposed for tests.
    void linear_step(FieldState& state, double dt) const;

    // Euler-Maruyama update of nonlinearity, drive, and noise.
    void nonlinear_noise_step(FieldState& state, const NoiseDraw& noise,
                              double dt) const;

    // Runs t_total with the Strang alternation, invoking the guard every
    // step and forwarding post-transient snapshots (at the sample stride)
    // to the sampler.  Snapshots are taken at the symmetric point of the
    // splitting cycle.
    TrajectoryOutcome
    run_trajectory(FieldState state, RngStream& rng,
                   const std::function<void(const FieldState&)>& sampler) const;

    const Params& params() const { return params_; }
    const Grid& grid() const { return grid_; }

  private:
    void apply_propagator(FieldState& state, const std::vector<cplx>& prop0,
                          const std::vector<cplx>& prop1) const;
    void check_finite(const FieldState& state) const;

    Params params_;
    Grid grid_;
    const kernels::Backend* backend_;
    Fft fft_;
    std::vector<cplx> prop0_full_, prop1_full_; // exp(-(1+i d + i c k^2) dt)
    std::vector<cplx> prop0_half_, prop1_half_;
    double amp0_, amp1_; // noise amplitudes per unit normal
};

} // namespace dopoq
