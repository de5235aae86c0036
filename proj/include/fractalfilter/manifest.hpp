#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fractalfilter {

/// Everything needed to re-run a CLI command exactly: the canonical
/// argument list (defaults materialized), a parameter echo, and run
/// diagnostics (stability report for FD runs, characteristic frequencies
/// for spectral runs). Timestamps live only here, never in output files,
/// so re-runs are byte-identical.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    nlohmann::json parameters;
    nlohmann::json details;  // e.g. {"stability": ...} or {"characteristic_frequencies": ...}
    std::string timestamp;
    std::optional<std::uint64_t> seed;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);

    void save(const std::filesystem::path& path) const;
    static RunManifest load(const std::filesystem::path& path);
};

/// Rebases the values of known output flags (--out, --out-csv, --out-gain,
/// --out-kernel, --manifest) into out_dir, keeping basenames. Used by the
/// rerun command to reproduce a manifest without clobbering the originals.
std::vector<std::string> rewrite_output_paths(std::vector<std::string> argv,
                                              const std::filesystem::path& out_dir);

/// ISO-8601 UTC timestamp of now.
std::string utc_timestamp();

}  // namespace fractalfilter
