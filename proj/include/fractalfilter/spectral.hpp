#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fractalfilter/signal.hpp"

namespace fractalfilter {

/// Parameters of the evolution  du/dt = a u_xx - b I_lambda[u],  whose
/// solution operator multiplies each Fourier mode by exp(-t*psi(xi)).
/// a is the raw diffusion coefficient; psi uses 4*pi^2*a. b = 0 reduces to
/// the heat semigroup.
struct FilterParams {
    double a = 1.0;       ///< diffusion coefficient, > 0
    double b = 0.0;       ///< anti-diffusion coefficient, >= 0
    double lambda = 1.5;  ///< fractional order, in (0,2)
    double t = 1.0;       ///< evolution time, >= 0

    /// Convenience for the "4*pi^2*a = ..." way coefficients are often quoted.
    static FilterParams from_a4pi2(double a4pi2, double b, double lambda, double t = 1.0);
    double a4pi2() const;

    void validate() const;
};

/// psi(xi) = 4*pi^2*a*xi^2 - b*|xi|^lambda. Frequencies are in cycles per
/// unit length (Fourier convention F f(xi) = int e^{-2 i pi x xi} f dx).
double symbol_psi(double xi, const FilterParams& p);

/// Landmarks of the gain curve xi -> exp(-t*psi(xi)) for b > 0.
struct CharacteristicFrequencies {
    double xi_m;       ///< gain-maximizing frequency, (lambda*b / 8 pi^2 a)^(1/(2-lambda))
    double xi_1;       ///< neutral frequency where gain crosses 1, (b / 4 pi^2 a)^(1/(2-lambda))
    double ratio;      ///< xi_1 / xi_m = (2/lambda)^(1/(2-lambda)), >= sqrt(e)
    double peak_gain;  ///< M = exp(-t*psi(xi_m)), the contrast-enhancement factor
};

/// Throws std::invalid_argument when b <= 0 (no amplification band exists).
CharacteristicFrequencies characteristic_frequencies(const FilterParams& p);

/// The gain curve sampled on a uniform frequency grid [0, xi_max], plus the
/// analytic landmarks when b > 0.
struct SpectralProfile {
    std::vector<double> xis;
    std::vector<double> gains;
    std::optional<CharacteristicFrequencies> landmarks;
};

SpectralProfile sample_profile(const FilterParams& p, double xi_max, std::size_t count);

/// Exact solution of the evolution on the periodic extension of u: DFT,
/// multiply bin k (frequency k/(n*dx)) by exp(-t*psi), inverse DFT. Output
/// is real by construction; the mean is preserved exactly up to rounding
/// since psi(0) = 0.
Signal filter_fft(const Signal& u, const FilterParams& p);

/// The physical-space convolution kernel K(t,.) sampled on
/// [-extent/2, extent/2) with n points, via inverse DFT of the gain curve.
/// sum(K)*dx = 1 up to rounding. For b > 0 the kernel has a genuinely
/// negative part. n >= 16, extent > 0.
Signal kernel_physical(const FilterParams& p, std::size_t n, double extent);

}  // namespace fractalfilter
