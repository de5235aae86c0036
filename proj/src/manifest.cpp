#include "fractalfilter/manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace fractalfilter {

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["argv"] = argv;
    j["parameters"] = parameters;
    if (!details.is_null()) j["details"] = details;
    j["timestamp"] = timestamp;
    if (seed) j["seed"] = *seed;
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    if (j.contains("parameters")) m.parameters = j["parameters"];
    if (j.contains("details")) m.details = j["details"];
    if (j.contains("timestamp")) m.timestamp = j["timestamp"].get<std::string>();
    if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
    return m;
}

void RunManifest::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write manifest: " + path.string());
    out << to_json().dump(2) << '\n';
}

RunManifest RunManifest::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open manifest: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad manifest " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

std::vector<std::string> rewrite_output_paths(std::vector<std::string> argv,
                                              const std::filesystem::path& out_dir) {
    static const std::array<std::string_view, 5> out_flags = {
        "--out", "--out-csv", "--out-gain", "--out-kernel", "--manifest"};
    for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
        for (std::string_view flag : out_flags) {
            if (argv[i] == flag) {
                argv[i + 1] = (out_dir / std::filesystem::path(argv[i + 1]).filename()).string();
                break;
            }
        }
    }
    return argv;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace fractalfilter
