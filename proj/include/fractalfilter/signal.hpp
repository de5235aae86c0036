#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fractalfilter {

/// How operators resolve sample indices outside [0, n).
enum class BoundaryPolicy {
    constant_extension,  ///< clamp to the edge value (signals constant near +-inf)
    periodic             ///< wrap modulo n
};

/// A uniformly sampled real-valued signal.
struct Signal {
    std::vector<double> samples;
    double dx = 1.0;  ///< grid spacing, > 0
    double x0 = 0.0;  ///< coordinate of samples[0]

    std::size_t size() const { return samples.size(); }
    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }

    double sum() const;
    double sum_squares() const;

    /// Throws std::invalid_argument if empty, dx <= 0, or any sample non-finite.
    void validate() const;
};

/// Additive Gaussian white-noise request: either an explicit standard
/// deviation or a target SNR in dB that the realized noise vector hits
/// exactly. Construct through the factories so exactly one mode is set.
struct NoiseSpec {
    enum class Mode { target_snr_db, sigma };

    Mode mode = Mode::sigma;
    double value = 0.0;
    std::uint64_t seed = 0;

    static NoiseSpec target_snr(double snr_db, std::uint64_t seed) {
        return NoiseSpec{Mode::target_snr_db, snr_db, seed};
    }
    static NoiseSpec with_sigma(double sigma, std::uint64_t seed) {
        return NoiseSpec{Mode::sigma, sigma, seed};
    }
};

/// Piecewise constant step on [0,2): -1 on [0,1), +1 on [1,2). dx = 2/n.
Signal gen_step(std::size_t n);

/// cos(5*pi*x) + cos(20*pi*x) sampled at x = i*length/n.
Signal gen_trig(std::size_t n, double length);

/// amplitude * cos(x) sampled at x = i*length/n (x in radians).
Signal gen_attenuated_cosine(std::size_t n, double length, double amplitude);

/// Synthetic ECG-shaped trace: one beat per unit length built from narrow
/// Gaussian pulses (P, Q, R, S, T) on a zero baseline. Not clinical data;
/// a self-contained stand-in for externally loaded recordings.
Signal gen_ecg_like(std::size_t n, double length);

/// u0 plus i.i.d. Gaussian noise. In sigma mode the noise has the given
/// standard deviation; in target mode the draw is rescaled so that
/// 10*log10(sum(u0^2)/sum(n^2)) equals the target exactly for the realized
/// vector. Same seed => bit-identical noise.
Signal add_noise(const Signal& u0, const NoiseSpec& spec);

/// n standard-normal draws from a fixed, portable generator
/// (Box-Muller over mt19937_64; std::normal_distribution is
/// implementation-defined and would not reproduce across toolchains).
std::vector<double> gaussian_draws(std::size_t n, std::uint64_t seed);

}  // namespace fractalfilter
