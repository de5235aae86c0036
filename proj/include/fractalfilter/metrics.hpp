#pragma once

#include "fractalfilter/signal.hpp"

namespace fractalfilter {

/// Mean squared error (1/N) * sum_i (u0_i - u_i)^2. Equal lengths required.
double mse(const Signal& u0, const Signal& u);

/// 10 * log10( sum u0^2 / sum (u0-u)^2 ). Returns +infinity when the error
/// power is zero; throws std::invalid_argument for an all-zero reference or
/// mismatched lengths.
double snr_db(const Signal& u0, const Signal& u);

}  // namespace fractalfilter
