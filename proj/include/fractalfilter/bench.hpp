#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fractalfilter/fd_solver.hpp"
#include "fractalfilter/savgol.hpp"
#include "fractalfilter/signal.hpp"
#include "fractalfilter/spectral.hpp"

namespace fractalfilter {

std::uint64_t splitmix64(std::uint64_t x);

/// Per-realization noise seed: base ^ splitmix64(splitmix64(grid_index) + realization).
/// Fixed so that parallel and sequential ensemble runs are bit-identical.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t grid_index, std::uint64_t realization);

/// A filter under benchmark: one of the three filters, or the identity
/// (useful as a calibration row: its output SNR equals the input SNR).
struct FilterConfig {
    enum class Kind { identity, fft, fd, savgol };

    Kind kind = Kind::identity;
    std::string label = "identity";

    FilterParams fft{};  // kind == fft

    double fd_a = 1.0;   // kind == fd
    double fd_b = 0.0;
    double fd_lambda = 0.5;
    FDConfig fd{};

    SavGolSpec savgol{};  // kind == savgol
    BoundaryPolicy savgol_boundary = BoundaryPolicy::constant_extension;

    Signal apply(const Signal& u) const;
    nlohmann::json to_json() const;
};

/// Ensemble means over n noise realizations per input-SNR grid point, for
/// each filter applied to the identical noisy signals.
struct BenchmarkReport {
    struct Curve {
        std::string label;
        nlohmann::json config;
        std::vector<double> mean_snr_db;
        std::vector<double> mean_mse;
    };

    std::vector<double> input_snr_grid;
    std::vector<Curve> curves;
    std::size_t n_realizations = 0;
    std::uint64_t base_seed = 0;

    nlohmann::json to_json() const;
};

/// Runs the comparison protocol: for grid point g and realization i the
/// noise seed is derive_seed(base_seed, g, i); every filter sees the same
/// noisy signal. Means are reduced in fixed realization order, so the
/// report is deterministic and independent of evaluation order (set
/// parallel to fan realizations out over threads). A filter failure aborts
/// with the offending label in the message.
BenchmarkReport run_ensemble(const Signal& u0,
                             const std::vector<FilterConfig>& filters,
                             const std::vector<double>& input_snr_grid,
                             std::size_t n,
                             std::uint64_t base_seed,
                             bool parallel = false);

struct SweepResult {
    std::vector<double> b_grid;
    std::vector<double> mean_snr_db;
    double best_b = 0.0;  ///< argmax of mean_snr_db; ties go to the smallest b

    nlohmann::json to_json() const;
};

/// Mean output SNR of the spectral filter at one input SNR as a function of
/// b. All b values see the same noise realizations (paired comparison).
SweepResult sweep_b(const Signal& u0, double a, double lambda, double t,
                    const std::vector<double>& b_grid, double input_snr_db,
                    std::size_t n, std::uint64_t seed);

}  // namespace fractalfilter
