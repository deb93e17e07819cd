#pragma once

#include <complex>

namespace dopoq::linear {

using cplx = std::complex<double>;

// Growth rates of signal perturbations at one wavenumber around the trivial
// solution: lambda_pm = -1 +- sqrt(|A0|^2 - (Delta1 + 2k^2)^2).  The radicand
// can go negative, in which case the pair is complex conjugate.
struct DispersionResult {
    cplx lambda_plus;
    cplx lambda_minus;
    bool real_branch; // radicand >= 0
};

struct HomogeneousSolution {
    cplx a0_st;
    cplx a1_st;
    int branch = +1; // sign applied to a1_st
};

// Phases Phi_pm(k) of the eigen-combinations V_pm = e^{i Phi_pm} dA1(k) +- dA1*(-k).
struct SqueezingDirection {
    double phi_plus;
    double phi_minus;
    cplx e_iphi_plus;
    cplx e_iphi_minus;
};

struct BelowThresholdVariances {
    double xminus_var; // -E/(1+E), normal-ordered, shot-noise normalized
    double xplus_var;  //  E/(1-E)
    double v_twin;     // -0.5
};

// k_c = sqrt(-Delta1/2); throws DomainError for Delta1 >= 0 (the instability
// then sits at zero wavenumber).
double critical_wavenumber(double delta1);

// E_c = sqrt(1+Delta0^2) for Delta1 < 0, sqrt((1+Delta0^2)(1+Delta1^2)) otherwise.
double threshold(double delta0, double delta1);

DispersionResult dispersion(double k, double pump_mod, double delta1);

HomogeneousSolution trivial_homogeneous(double pump_E, double delta0);

// Nonzero homogeneous solution; branch is +1 or -1.  Throws BranchAbsent when
// the solution does not exist at this pump.
HomogeneousSolution nonzero_homogeneous(double pump_E, double delta0,
                                        double delta1, int branch);

// Throws DomainError outside the real eigen-branch |A0|^2 >= (Delta1+2k^2)^2.
SqueezingDirection squeezing_direction(double k, cplx a0_st, double delta1);

// Linear-theory below-threshold variances; throws DomainError for E >= 1 or E < 0.
BelowThresholdVariances analytic_below_threshold(double pump_E);

// Max-norm residual of the noiseless homogeneous stationarity equations;
// used as the oracle for both homogeneous branches.
double stationarity_residual(const HomogeneousSolution& sol, double pump_E,
                             double delta0, double delta1);

} // namespace dopoq::linear
