#pragma once

#include <cstddef>
#include <span>

#include "fractalfilter/fractional.hpp"
#include "fractalfilter/signal.hpp"

namespace fractalfilter {

/// Modified Von Neumann stability conditions of the explicit scheme.
/// Condition 1 is a mesh condition (diffusion must dominate the
/// anti-diffusive tail at high frequencies):
///     (1 - 2^(1-lambda)) * b / dx^lambda  <  2a / dx^2.
/// Condition 2 is the CFL-like time-step bound:
///     2a*dt/dx^2 + (2 - 2^(1-lambda)) * b*dt/dx^lambda  <  1.
struct StabilityReport {
    double cond1_lhs = 0.0;
    double cond1_rhs = 0.0;
    double cond2_value = 0.0;
    bool satisfied = false;
};

StabilityReport check_stability(double a, double b, double lambda, double dx, double dt);

struct FDConfig {
    double dt = 1e-3;
    std::size_t steps = 0;
    std::size_t trunc_A = 100;  ///< nonlocal truncation, >= 1 (see truncation_A)
    NonlocalMode mode = NonlocalMode::causal;
    BoundaryPolicy boundary = BoundaryPolicy::constant_extension;
    bool force_unstable = false;  ///< run anyway when the checker says no
};

/// One explicit Euler step:
///   u'_j = u_j + dt * ( a*(u_{j+1}-2u_j+u_{j-1})/dx^2 - b*I_dx[u]_j ).
/// Throws NumericError on non-finite input.
std::vector<double> step_explicit(std::span<const double> u,
                                  double a, double b, double lambda,
                                  double dx, double dt, std::size_t A,
                                  NonlocalMode mode, BoundaryPolicy boundary);

struct FDRunResult {
    Signal signal;
    StabilityReport stability;
};

/// Applies step_explicit cfg.steps times. Refuses to run when the stability
/// check fails, unless cfg.force_unstable is set (the report is attached to
/// the result either way). Throws NumericError if the run blows up.
FDRunResult filter_fd(const Signal& u, double a, double b, double lambda, const FDConfig& cfg);

}  // namespace fractalfilter
