#include "fractalfilter/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fractalfilter {

namespace {
constexpr double kPi = std::numbers::pi;
}

double Signal::sum() const {
    double s = 0.0;
    for (double v : samples) s += v;
    return s;
}

double Signal::sum_squares() const {
    double s = 0.0;
    for (double v : samples) s += v * v;
    return s;
}

void Signal::validate() const {
    if (samples.empty()) throw std::invalid_argument("signal is empty");
    if (!(dx > 0.0)) throw std::invalid_argument("signal dx must be > 0");
    for (double v : samples) {
        if (!std::isfinite(v)) throw std::invalid_argument("signal contains non-finite samples");
    }
}

Signal gen_step(std::size_t n) {
    if (n < 2) throw std::invalid_argument("gen_step: n must be >= 2");
    Signal s;
    s.dx = 2.0 / static_cast<double>(n);
    s.x0 = 0.0;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // x_i = 2i/n < 1 decided exactly in integers; the rounded grid x_at(i)
        // can land on the wrong side for n not a power of two
        s.samples[i] = (2 * i < n) ? -1.0 : 1.0;
    }
    return s;
}

Signal gen_trig(std::size_t n, double length) {
    if (n < 2) throw std::invalid_argument("gen_trig: n must be >= 2");
    if (!(length > 0.0)) throw std::invalid_argument("gen_trig: length must be > 0");
    Signal s;
    s.dx = length / static_cast<double>(n);
    s.x0 = 0.0;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = s.x_at(i);
        s.samples[i] = std::cos(5.0 * kPi * x) + std::cos(20.0 * kPi * x);
    }
    return s;
}

Signal gen_attenuated_cosine(std::size_t n, double length, double amplitude) {
    if (n < 2) throw std::invalid_argument("gen_attenuated_cosine: n must be >= 2");
    if (!(length > 0.0)) throw std::invalid_argument("gen_attenuated_cosine: length must be > 0");
    Signal s;
    s.dx = length / static_cast<double>(n);
    s.x0 = 0.0;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.samples[i] = amplitude * std::cos(s.x_at(i));
    }
    return s;
}

namespace {

double gauss_pulse(double x, double center, double width) {
    const double z = (x - center) / width;
    return std::exp(-0.5 * z * z);
}

}  // namespace

Signal gen_ecg_like(std::size_t n, double length) {
    if (n < 2) throw std::invalid_argument("gen_ecg_like: n must be >= 2");
    if (!(length > 0.0)) throw std::invalid_argument("gen_ecg_like: length must be > 0");
    Signal s;
    s.dx = length / static_cast<double>(n);
    s.x0 = 0.0;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = s.x_at(i);
        double v = 0.0;
        // one beat per unit; pulses only matter within ~half a unit of a center
        const long k0 = static_cast<long>(std::floor(x)) - 1;
        for (long k = k0; k <= k0 + 2; ++k) {
            const double c = static_cast<double>(k) + 0.4;
            v += 0.15 * gauss_pulse(x, c - 0.18, 0.035);  // P
            v -= 0.10 * gauss_pulse(x, c - 0.045, 0.012); // Q
            v += 1.00 * gauss_pulse(x, c, 0.016);         // R
            v -= 0.22 * gauss_pulse(x, c + 0.045, 0.014); // S
            v += 0.30 * gauss_pulse(x, c + 0.25, 0.055);  // T
        }
        s.samples[i] = v;
    }
    return s;
}

std::vector<double> gaussian_draws(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto next_unit = [&rng]() {
        // 53-bit uniform in (0, 1]; never 0, so log() below is finite
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    };
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * kPi * u2;
        out[i] = r * std::cos(th);
        if (i + 1 < n) out[i + 1] = r * std::sin(th);
    }
    return out;
}

Signal add_noise(const Signal& u0, const NoiseSpec& spec) {
    u0.validate();
    double scale = 0.0;
    const std::vector<double> g = gaussian_draws(u0.size(), spec.seed);
    if (spec.mode == NoiseSpec::Mode::sigma) {
        if (spec.value < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
        scale = spec.value;
    } else {
        const double p0 = u0.sum_squares();
        if (p0 == 0.0) throw std::invalid_argument("add_noise: target-SNR mode needs a nonzero signal");
        double pg = 0.0;
        for (double v : g) pg += v * v;
        // realized sum(n^2) = sum(u0^2) / 10^(snr/10), exact for this draw
        scale = std::sqrt(p0 / (std::pow(10.0, spec.value / 10.0) * pg));
    }
    Signal out = u0;
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += scale * g[i];
    return out;
}

}  // namespace fractalfilter
