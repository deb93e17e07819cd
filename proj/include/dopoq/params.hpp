#pragma once

#include <cstdint>
#include <numbers>
#include <string>

#include "dopoq/errors.hpp"

namespace dopoq {

enum class InitKind {
    paper_modulated, // 1e-5 * (eps(x) + 10 sin(k_c x)), pump empty
    noise,           // 1e-5 * eps(x)
    step,            // signal -1 on the left half, +1 on the right
    rolls            // A * cos(k_c x)
};

std::string to_string(InitKind kind);
InitKind init_kind_from_string(const std::string& name);

// All physical and numerical parameters in the scaled units of the Langevin
// equations (time in cavity-decay units, transverse length in sqrt(a) units).
struct Params {
    double delta0 = 0.0;            // pump detuning
    double delta1 = -0.18;          // signal detuning
    double pump_E = 1.0;            // external pump, E_c = 1 for delta0 = 0
    double noise_c = 1e-4;          // noise strength c = g / (sqrt(a) gamma)
    int n_points = 64;              // transverse lattice size, power of two
    double length_L = 4.0 * 2.0 * std::numbers::pi / 0.3; // 4 critical wavelengths
    double dt = 0.01;               // integration step
    double t_total = 1e4;           // integrated time per trajectory
    double t_transient = 1e3;       // discarded before sampling
    double sample_stride = 1.0;     // time between statistics samples
    double block_time = 1e3;        // batch-mean block length for error bars
    std::uint64_t seed = 1;         // master RNG seed
    InitKind init_kind = InitKind::paper_modulated;
    double rolls_amplitude = 1.0;   // amplitude of the "rolls" initial condition

    double dx() const { return length_L / n_points; }
    double dk() const { return 2.0 * std::numbers::pi / length_L; }

    // Throws InvalidParameter naming the offending field.
    void validate() const;
};

} // namespace dopoq
