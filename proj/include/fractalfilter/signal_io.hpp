#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "fractalfilter/signal.hpp"

namespace fractalfilter {

/// Optional sidecar metadata stored next to a signal CSV.
struct SignalMeta {
    std::optional<double> dx;
    std::optional<double> x0;
    std::string description;
    std::optional<std::uint64_t> seed;
};

/// "sig.csv" -> "sig.meta.json"
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// CSV with header `x,value`, one row per sample, 17 significant digits
/// (write-then-read reproduces samples bit-exactly).
void write_signal_csv(const std::filesystem::path& path, const Signal& s);

/// Parses the CSV, checks that x is strictly increasing and uniformly
/// spaced (1e-9 relative), and recovers dx/x0. A sidecar, when present,
/// overrides dx and x0. Throws std::invalid_argument on malformed input.
Signal read_signal_csv(const std::filesystem::path& path);

void write_sidecar(const std::filesystem::path& csv_path, const SignalMeta& meta);
std::optional<SignalMeta> read_sidecar(const std::filesystem::path& csv_path);

}  // namespace fractalfilter
