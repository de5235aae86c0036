#pragma once

#include <cstddef>
#include <vector>

#include "fractalfilter/signal.hpp"

namespace fractalfilter {

/// Savitzky-Golay smoothing configuration: centered window of odd width,
/// local least-squares polynomial fit evaluated at the window center.
struct SavGolSpec {
    std::size_t window = 11;
    std::size_t poly_order = 3;

    void validate() const;  // window odd and >= 3, poly_order < window
};

/// Symmetric convolution weights of length window. Computed from the
/// normal equations on integer offsets; only even powers enter (odd basis
/// functions contribute nothing at the center), so the weights are exactly
/// symmetric and sum to 1 up to rounding.
std::vector<double> savgol_coeffs(const SavGolSpec& spec);

/// Convolution with savgol_coeffs. Requires u.size() >= window.
Signal filter_savgol(const Signal& u, const SavGolSpec& spec,
                     BoundaryPolicy boundary = BoundaryPolicy::constant_extension);

}  // namespace fractalfilter
