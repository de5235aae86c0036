#include "fractalfilter/fd_solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fractalfilter/errors.hpp"

namespace fractalfilter {

StabilityReport check_stability(double a, double b, double lambda, double dx, double dt) {
    if (!(a > 0.0)) throw std::invalid_argument("check_stability: a must be > 0");
    if (!(b >= 0.0)) throw std::invalid_argument("check_stability: b must be >= 0");
    if (!(lambda > 0.0) || !(lambda < 2.0))
        throw std::invalid_argument("check_stability: lambda must lie in (0,2)");
    if (!(dx > 0.0)) throw std::invalid_argument("check_stability: dx must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("check_stability: dt must be > 0");

    StabilityReport r;
    const double two_pow = std::exp2(1.0 - lambda);
    const double dx_lam = std::pow(dx, lambda);
    r.cond1_lhs = (1.0 - two_pow) * b / dx_lam;
    r.cond1_rhs = 2.0 * a / (dx * dx);
    r.cond2_value = 2.0 * a * dt / (dx * dx) + (2.0 - two_pow) * b * dt / dx_lam;
    r.satisfied = (r.cond1_lhs < r.cond1_rhs) && (r.cond2_value < 1.0);
    return r;
}

std::vector<double> step_explicit(std::span<const double> u,
                                  double a, double b, double lambda,
                                  double dx, double dt, std::size_t A,
                                  NonlocalMode mode, BoundaryPolicy boundary) {
    if (u.size() < 3) throw std::invalid_argument("step_explicit: need at least 3 samples");
    for (double v : u) {
        if (!std::isfinite(v)) throw NumericError("step_explicit: non-finite input state");
    }

    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    const bool periodic = boundary == BoundaryPolicy::periodic;
    auto at = [&](std::ptrdiff_t k) -> double {
        if (periodic) {
            k %= n;
            if (k < 0) k += n;
            return u[k];
        }
        if (k < 0) return u[0];
        if (k >= n) return u[n - 1];
        return u[k];
    };

    const std::vector<double> nonlocal =
        (b != 0.0) ? apply_nonlocal_discrete(u, lambda, dx, A, mode, boundary)
                   : std::vector<double>(u.size(), 0.0);

    std::vector<double> out(u.size());
    const double inv_dx2 = 1.0 / (dx * dx);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const double lap = (at(j + 1) - 2.0 * u[j] + at(j - 1)) * inv_dx2;
        out[j] = u[j] + dt * (a * lap - b * nonlocal[j]);
    }
    return out;
}

FDRunResult filter_fd(const Signal& u, double a, double b, double lambda, const FDConfig& cfg) {
    u.validate();
    if (cfg.trunc_A < 1) throw std::invalid_argument("filter_fd: truncation A must be >= 1");

    FDRunResult result;
    result.stability = check_stability(a, b, lambda, u.dx, cfg.dt);
    if (!result.stability.satisfied && !cfg.force_unstable) {
        std::ostringstream msg;
        msg << "filter_fd: stability conditions violated (cond1 " << result.stability.cond1_lhs
            << " < " << result.stability.cond1_rhs << ", cond2 " << result.stability.cond2_value
            << " < 1); pass force_unstable to run anyway";
        throw StabilityError(msg.str());
    }

    result.signal = u;
    for (std::size_t s = 0; s < cfg.steps; ++s) {
        result.signal.samples = step_explicit(result.signal.samples, a, b, lambda, u.dx,
                                              cfg.dt, cfg.trunc_A, cfg.mode, cfg.boundary);
    }
    for (double v : result.signal.samples) {
        if (!std::isfinite(v)) throw NumericError("filter_fd: run produced non-finite values");
    }
    return result;
}

}  // namespace fractalfilter
