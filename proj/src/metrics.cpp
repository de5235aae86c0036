#include "fractalfilter/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fractalfilter {

double mse(const Signal& u0, const Signal& u) {
    if (u0.size() != u.size()) throw std::invalid_argument("mse: length mismatch");
    if (u0.size() == 0) throw std::invalid_argument("mse: empty signals");
    double s = 0.0;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        const double d = u0.samples[i] - u.samples[i];
        s += d * d;
    }
    return s / static_cast<double>(u0.size());
}

double snr_db(const Signal& u0, const Signal& u) {
    if (u0.size() != u.size()) throw std::invalid_argument("snr_db: length mismatch");
    const double signal_power = u0.sum_squares();
    if (signal_power == 0.0) throw std::invalid_argument("snr_db: reference signal is all-zero");
    double err_power = 0.0;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        const double d = u0.samples[i] - u.samples[i];
        err_power += d * d;
    }
    if (err_power == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal_power / err_power);
}

}  // namespace fractalfilter
