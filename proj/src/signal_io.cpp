#include "fractalfilter/signal_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace fractalfilter {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(std::string_view sv, const char* what) {
    double out = 0.0;
    const char* first = sv.data();
    const char* last = sv.data() + sv.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument(std::string("signal csv: bad ") + what + " field '" +
                                    std::string(sv) + "'");
    return out;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension();
    p += ".meta.json";
    return p;
}

void write_signal_csv(const std::filesystem::path& path, const Signal& s) {
    s.validate();
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path.string());
    out << "x,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_double(s.x_at(i)) << ',' << format_double(s.samples[i]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Signal read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open signal file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty signal file: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,value")
        throw std::invalid_argument("signal csv: expected header 'x,value' in " + path.string());

    std::vector<double> xs, vs;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("signal csv: malformed row '" + line + "'");
        xs.push_back(parse_double(std::string_view(line).substr(0, comma), "x"));
        vs.push_back(parse_double(std::string_view(line).substr(comma + 1), "value"));
    }
    if (vs.empty()) throw std::invalid_argument("signal csv: no rows in " + path.string());

    Signal s;
    s.samples = std::move(vs);
    s.x0 = xs.front();
    if (xs.size() >= 2) {
        const std::size_t n = xs.size();
        s.dx = (xs.back() - xs.front()) / static_cast<double>(n - 1);
        if (!(s.dx > 0.0))
            throw std::invalid_argument("signal csv: x column must be strictly increasing");
        const double tol = 1e-9 * (std::abs(xs.back() - xs.front()) + std::abs(s.dx));
        for (std::size_t i = 0; i < n; ++i) {
            const double expected = s.x0 + s.dx * static_cast<double>(i);
            if (std::abs(xs[i] - expected) > tol)
                throw std::invalid_argument("signal csv: non-uniform x spacing at row " +
                                            std::to_string(i + 2));
        }
    } else {
        s.dx = 1.0;
    }

    if (auto meta = read_sidecar(path)) {
        if (meta->dx) s.dx = *meta->dx;
        if (meta->x0) s.x0 = *meta->x0;
    }
    s.validate();
    return s;
}

void write_sidecar(const std::filesystem::path& csv_path, const SignalMeta& meta) {
    nlohmann::json j;
    if (meta.dx) j["dx"] = *meta.dx;
    if (meta.x0) j["x0"] = *meta.x0;
    if (!meta.description.empty()) j["description"] = meta.description;
    if (meta.seed) j["seed"] = *meta.seed;
    std::ofstream out(sidecar_path(csv_path));
    if (!out) throw std::invalid_argument("cannot write sidecar for " + csv_path.string());
    out << j.dump(2) << '\n';
}

std::optional<SignalMeta> read_sidecar(const std::filesystem::path& csv_path) {
    const std::filesystem::path p = sidecar_path(csv_path);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad sidecar " + p.string() + ": " + e.what());
    }
    SignalMeta meta;
    if (j.contains("dx")) meta.dx = j["dx"].get<double>();
    if (j.contains("x0")) meta.x0 = j["x0"].get<double>();
    if (j.contains("description")) meta.description = j["description"].get<std::string>();
    if (j.contains("seed")) meta.seed = j["seed"].get<std::uint64_t>();
    return meta;
}

}  // namespace fractalfilter
