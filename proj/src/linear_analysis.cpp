#include "dopoq/linear_analysis.hpp"

#include <cmath>

#include "dopoq/errors.hpp"

namespace dopoq::linear {

double critical_wavenumber(double delta1) {
    if (delta1 >= 0.0)
        throw DomainError("no finite-k instability: for delta1 >= 0 the "
                          "instability sits at zero wavenumber");
    return std::sqrt(-delta1 / 2.0);
}

double threshold(double delta0, double delta1) {
    const double base = 1.0 + delta0 * delta0;
    if (delta1 < 0.0) return std::sqrt(base);
    return std::sqrt(base * (1.0 + delta1 * delta1));
}

DispersionResult dispersion(double k, double pump_mod, double delta1) {
    if (pump_mod < 0.0)
        throw DomainError("dispersion: pump modulus must be nonnegative");
    const double theta = delta1 + 2.0 * k * k;
    const double radicand = pump_mod * pump_mod - theta * theta;
    DispersionResult r;
    r.real_branch = radicand >= 0.0;
    if (r.real_branch) {
        const double root = std::sqrt(radicand);
        r.lambda_plus = {-1.0 + root, 0.0};
        r.lambda_minus = {-1.0 - root, 0.0};
    } else {
        const double root = std::sqrt(-radicand);
        r.lambda_plus = {-1.0, root};
        r.lambda_minus = {-1.0, -root};
    }
    return r;
}

HomogeneousSolution trivial_homogeneous(double pump_E, double delta0) {
    HomogeneousSolution sol;
    sol.a0_st = pump_E / cplx(1.0, delta0);
    sol.a1_st = 0.0;
    return sol;
}

HomogeneousSolution nonzero_homogeneous(double pump_E, double delta0,
                                        double delta1, int branch) {
    if (branch != 1 && branch != -1)
        throw InvalidParameter("branch must be +1 or -1");
    // gain-clamp closed form: sigma = |A1|^2/2 solves
    // (sigma + 1 - d0 d1)^2 + (d0 + d1)^2 = E^2
    const double sum_d = delta0 + delta1;
    const double radicand = pump_E * pump_E - sum_d * sum_d;
    if (radicand < 0.0)
        throw BranchAbsent("nonzero homogeneous solution does not exist at this pump");
    const double sigma = -(1.0 - delta0 * delta1) + std::sqrt(radicand);
    if (sigma <= 0.0)
        throw BranchAbsent("nonzero homogeneous solution does not exist at this pump");

    HomogeneousSolution sol;
    sol.branch = branch;
    const cplx one_i0(1.0, delta0);
    const cplx one_i1(1.0, delta1);
    sol.a0_st = pump_E * one_i1 / (one_i0 * one_i1 + sigma);
    sol.a1_st = static_cast<double>(branch) *
                std::sqrt(2.0 * (pump_E - one_i0 * sol.a0_st));
    return sol;
}

SqueezingDirection squeezing_direction(double k, cplx a0_st, double delta1) {
    const double theta = delta1 + 2.0 * k * k;
    const double mod2 = std::norm(a0_st);
    const double radicand = mod2 - theta * theta;
    if (radicand < 0.0)
        throw DomainError("squeezing_direction: complex eigen-branch "
                          "(|A0|^2 < (Delta1+2k^2)^2)");
    const double root = std::sqrt(radicand);
    const cplx itheta(0.0, theta);
    SqueezingDirection dir;
    dir.e_iphi_plus = -(itheta - root) / a0_st;
    dir.e_iphi_minus = (itheta + root) / a0_st;
    dir.phi_plus = std::arg(dir.e_iphi_plus);
    dir.phi_minus = std::arg(dir.e_iphi_minus);
    return dir;
}

BelowThresholdVariances analytic_below_threshold(double pump_E) {
    if (pump_E < 0.0 || pump_E >= 1.0)
        throw DomainError("analytic_below_threshold requires 0 <= E < 1 "
                          "(the linear theory diverges at threshold)");
    return {-pump_E / (1.0 + pump_E), pump_E / (1.0 - pump_E), -0.5};
}

double stationarity_residual(const HomogeneousSolution& sol, double pump_E,
                             double delta0, double delta1) {
    const cplx r0 = -cplx(1.0, delta0) * sol.a0_st + pump_E -
                    0.5 * sol.a1_st * sol.a1_st;
    const cplx r1 = -cplx(1.0, delta1) * sol.a1_st +
                    sol.a0_st * std::conj(sol.a1_st);
    return std::max(std::abs(r0), std::abs(r1));
}

} // namespace dopoq::linear
