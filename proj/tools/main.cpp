// Command-line front end: signal generation, the three filters, kernel/gain
// curves, the SNR/MSE benchmark protocol, the b sweep, and manifest re-runs.
//
// Exit codes: 0 ok, 2 usage / invalid arguments, 3 stability refusal,
// 4 numeric failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fractalfilter/bench.hpp"
#include "fractalfilter/errors.hpp"
#include "fractalfilter/fd_solver.hpp"
#include "fractalfilter/fractional.hpp"
#include "fractalfilter/manifest.hpp"
#include "fractalfilter/metrics.hpp"
#include "fractalfilter/savgol.hpp"
#include "fractalfilter/signal.hpp"
#include "fractalfilter/signal_io.hpp"
#include "fractalfilter/spectral.hpp"

namespace ff = fractalfilter;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + what + ": '" + s + "'");
    }
}

// "0:8:1" (inclusive range) or "0,2,4,6,8"
std::vector<double> parse_grid(const std::string& text, const std::string& what) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const std::size_t c1 = text.find(':');
        const std::size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::invalid_argument(what + ": expected start:stop:step, got '" + text + "'");
        const double start = to_double(text.substr(0, c1), what);
        const double stop = to_double(text.substr(c1 + 1, c2 - c1 - 1), what);
        const double step = to_double(text.substr(c2 + 1), what);
        if (!(step > 0.0)) throw std::invalid_argument(what + ": step must be > 0");
        const long count = std::lround((stop - start) / step) + 1;
        if (count < 1 || start > stop + 1e-12)
            throw std::invalid_argument(what + ": empty range '" + text + "'");
        // inclusive range; tolerance only absorbs accumulated rounding
        const double cap = stop + 1e-9 * (std::abs(stop) + step);
        for (long i = 0; i < count; ++i) {
            const double v = start + step * static_cast<double>(i);
            if (v > cap) break;
            out.push_back(v);
        }
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t comma = text.find(',', pos);
            const std::string tok =
                text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!tok.empty()) out.push_back(to_double(tok, what));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (out.empty()) throw std::invalid_argument(what + ": empty grid '" + text + "'");
    return out;
}

ff::BoundaryPolicy parse_boundary(const std::string& s) {
    if (s == "constant") return ff::BoundaryPolicy::constant_extension;
    if (s == "periodic") return ff::BoundaryPolicy::periodic;
    throw std::invalid_argument("boundary must be 'constant' or 'periodic', got '" + s + "'");
}

ff::NonlocalMode parse_mode(const std::string& s) {
    if (s == "causal") return ff::NonlocalMode::causal;
    if (s == "symmetric") return ff::NonlocalMode::symmetric;
    throw std::invalid_argument("mode must be 'causal' or 'symmetric', got '" + s + "'");
}

// "method:key=value,key=value"; methods identity|fft|fd|savgol
ff::FilterConfig parse_filter_spec(const std::string& text) {
    ff::FilterConfig cfg;
    cfg.label = text;

    const std::size_t colon = text.find(':');
    const std::string method = text.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::size_t pos = colon + 1;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            const std::string item = text.substr(pos, comma - pos);
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("filter spec: expected key=value, got '" + item + "'");
            kv[item.substr(0, eq)] = item.substr(eq + 1);
            pos = comma + 1;
        }
    }
    auto take = [&kv](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_double = [&take](const std::string& key) -> std::optional<double> {
        if (auto s = take(key)) return to_double(*s, key);
        return std::nullopt;
    };
    if (auto label = take("label")) cfg.label = *label;

    auto resolve_a = [&take_double, &method]() {
        const auto a = take_double("a");
        const auto a4 = take_double("a4pi2");
        if (a && a4) throw std::invalid_argument(method + " filter: give either a or a4pi2, not both");
        if (a) return *a;
        if (a4) return ff::FilterParams::from_a4pi2(*a4, 0, 1.0).a;
        throw std::invalid_argument(method + " filter: missing a (or a4pi2)");
    };

    if (method == "identity") {
        cfg.kind = ff::FilterConfig::Kind::identity;
    } else if (method == "fft") {
        cfg.kind = ff::FilterConfig::Kind::fft;
        cfg.fft.a = resolve_a();
        cfg.fft.b = take_double("b").value_or(0.0);
        const auto lambda = take_double("lambda");
        if (!lambda) throw std::invalid_argument("fft filter: missing lambda");
        cfg.fft.lambda = *lambda;
        cfg.fft.t = take_double("t").value_or(1.0);
        cfg.fft.validate();
    } else if (method == "fd") {
        cfg.kind = ff::FilterConfig::Kind::fd;
        cfg.fd_a = resolve_a();
        cfg.fd_b = take_double("b").value_or(0.0);
        const auto lambda = take_double("lambda");
        if (!lambda) throw std::invalid_argument("fd filter: missing lambda");
        cfg.fd_lambda = *lambda;
        const auto dt = take_double("dt");
        if (!dt) throw std::invalid_argument("fd filter: missing dt");
        cfg.fd.dt = *dt;
        const auto steps = take_double("steps");
        const auto time = take_double("time");
        if (steps && time) throw std::invalid_argument("fd filter: give steps or time, not both");
        if (steps)
            cfg.fd.steps = static_cast<std::size_t>(*steps);
        else
            cfg.fd.steps = static_cast<std::size_t>(std::lround(time.value_or(1.0) / cfg.fd.dt));
        const auto A = take_double("A");
        cfg.fd.trunc_A = A ? static_cast<std::size_t>(*A) : ff::truncation_A(cfg.fd_lambda);
        if (auto mode = take("mode")) cfg.fd.mode = parse_mode(*mode);
        if (auto boundary = take("boundary")) cfg.fd.boundary = parse_boundary(*boundary);
        if (auto force = take("force")) cfg.fd.force_unstable = (*force == "1" || *force == "true");
    } else if (method == "savgol") {
        cfg.kind = ff::FilterConfig::Kind::savgol;
        if (auto w = take_double("window")) cfg.savgol.window = static_cast<std::size_t>(*w);
        if (auto o = take_double("order")) cfg.savgol.poly_order = static_cast<std::size_t>(*o);
        if (auto boundary = take("boundary")) cfg.savgol_boundary = parse_boundary(*boundary);
        cfg.savgol.validate();
    } else {
        throw std::invalid_argument("unknown filter method '" + method + "'");
    }
    if (!kv.empty())
        throw std::invalid_argument("filter spec: unknown key '" + kv.begin()->first + "'");
    return cfg;
}

json stability_json(const ff::StabilityReport& r) {
    return json{{"cond1_lhs", r.cond1_lhs},
                {"cond1_rhs", r.cond1_rhs},
                {"cond2_value", r.cond2_value},
                {"satisfied", r.satisfied}};
}

json frequencies_json(const ff::CharacteristicFrequencies& cf) {
    return json{{"xi_m", cf.xi_m}, {"xi_1", cf.xi_1}, {"ratio", cf.ratio}, {"peak_gain", cf.peak_gain}};
}

void save_manifest(const std::string& command, std::vector<std::string> argv, json parameters,
                   json details, std::optional<std::uint64_t> seed, const fs::path& path) {
    ff::RunManifest m;
    m.command = command;
    m.argv = std::move(argv);
    m.parameters = std::move(parameters);
    m.details = std::move(details);
    m.timestamp = ff::utc_timestamp();
    m.seed = seed;
    m.save(path);
}

int dispatch(const std::vector<std::string>& args);

// ---------------------------------------------------------------- gen ----

struct GenOpts {
    std::string kind;
    std::size_t n = 0;
    double length = 2.0;
    double amplitude = 0.02;
    std::optional<double> noise_sigma;
    std::optional<double> noise_snr_db;
    std::uint64_t seed = 42;
    std::string out;
    std::string manifest_path;
};

int cmd_gen(const GenOpts& o) {
    if (o.noise_sigma && o.noise_snr_db)
        throw std::invalid_argument("gen: give --noise-sigma or --noise-snr-db, not both");

    ff::Signal s;
    if (o.kind == "step")
        s = ff::gen_step(o.n);
    else if (o.kind == "trig")
        s = ff::gen_trig(o.n, o.length);
    else if (o.kind == "attcos")
        s = ff::gen_attenuated_cosine(o.n, o.length, o.amplitude);
    else if (o.kind == "ecg-like")
        s = ff::gen_ecg_like(o.n, o.length);
    else
        throw std::invalid_argument("gen: unknown kind '" + o.kind + "'");

    const bool noisy = o.noise_sigma || o.noise_snr_db;
    if (o.noise_sigma) s = ff::add_noise(s, ff::NoiseSpec::with_sigma(*o.noise_sigma, o.seed));
    if (o.noise_snr_db) s = ff::add_noise(s, ff::NoiseSpec::target_snr(*o.noise_snr_db, o.seed));

    ff::write_signal_csv(o.out, s);

    ff::SignalMeta meta;
    meta.dx = s.dx;
    meta.x0 = s.x0;
    meta.description = o.kind + " generator";
    if (noisy) meta.seed = o.seed;
    ff::write_sidecar(o.out, meta);

    std::vector<std::string> argv = {"gen", o.kind, "--n", std::to_string(o.n)};
    json params{{"kind", o.kind}, {"n", o.n}, {"dx", s.dx}, {"x0", s.x0}};
    if (o.kind != "step") {
        argv.insert(argv.end(), {"--length", fmt17(o.length)});
        params["length"] = o.length;
    }
    if (o.kind == "attcos") {
        argv.insert(argv.end(), {"--amplitude", fmt17(o.amplitude)});
        params["amplitude"] = o.amplitude;
    }
    if (o.noise_sigma) {
        argv.insert(argv.end(), {"--noise-sigma", fmt17(*o.noise_sigma)});
        params["noise_sigma"] = *o.noise_sigma;
    }
    if (o.noise_snr_db) {
        argv.insert(argv.end(), {"--noise-snr-db", fmt17(*o.noise_snr_db)});
        params["noise_snr_db"] = *o.noise_snr_db;
    }
    if (noisy) {
        argv.insert(argv.end(), {"--seed", std::to_string(o.seed)});
        params["seed"] = o.seed;
    }
    const fs::path mpath = o.manifest_path.empty() ? fs::path(o.out + ".manifest.json")
                                                   : fs::path(o.manifest_path);
    argv.insert(argv.end(), {"--out", o.out, "--manifest", mpath.string()});
    save_manifest("gen", argv, params, json{},
                  noisy ? std::optional<std::uint64_t>(o.seed) : std::nullopt, mpath);
    return 0;
}

// ------------------------------------------------------------- filter ----

struct FilterOpts {
    std::string method;
    std::string in, out, manifest_path;
    std::optional<double> a, a4pi2;
    double b = 0.0;
    std::optional<double> lambda;
    double t = 1.0;
    std::optional<double> dt;
    std::optional<std::size_t> steps;
    std::optional<double> time;
    std::optional<std::size_t> trunc_A;
    std::string mode = "causal";
    std::string boundary = "constant";
    bool force_unstable = false;
    bool dx_from_file = false;  // default behavior; flag kept for explicitness
    std::optional<double> dx_override;
    std::size_t window = 11;
    std::size_t order = 3;
};

double resolve_a(const FilterOpts& o) {
    if (o.a && o.a4pi2)
        throw std::invalid_argument("filter: give either --a or --a4pi2, not both");
    if (o.a) return *o.a;
    if (o.a4pi2) return ff::FilterParams::from_a4pi2(*o.a4pi2, 0, 1.0).a;
    throw std::invalid_argument("filter: missing --a (or --a4pi2)");
}

int cmd_filter(const FilterOpts& o) {
    ff::Signal u = ff::read_signal_csv(o.in);
    if (o.dx_override) {
        if (!(*o.dx_override > 0.0)) throw std::invalid_argument("filter: --dx must be > 0");
        u.dx = *o.dx_override;
    }

    std::vector<std::string> argv = {"filter", o.method, "--in", o.in};
    json params{{"method", o.method}, {"in", o.in}, {"n", u.size()}, {"dx", u.dx}};
    json details;
    ff::Signal out;

    if (o.method == "fft") {
        ff::FilterParams p;
        p.a = resolve_a(o);
        p.b = o.b;
        if (!o.lambda) throw std::invalid_argument("filter fft: missing --lambda");
        p.lambda = *o.lambda;
        p.t = o.t;
        p.validate();
        out = ff::filter_fft(u, p);
        argv.insert(argv.end(), {"--a", fmt17(p.a), "--b", fmt17(p.b), "--lambda",
                                 fmt17(p.lambda), "--t", fmt17(p.t)});
        params["a"] = p.a;
        params["a4pi2"] = p.a4pi2();
        params["b"] = p.b;
        params["lambda"] = p.lambda;
        params["t"] = p.t;
        if (p.b > 0.0)
            details["characteristic_frequencies"] = frequencies_json(ff::characteristic_frequencies(p));
    } else if (o.method == "fd") {
        const double a = resolve_a(o);
        if (!o.lambda) throw std::invalid_argument("filter fd: missing --lambda");
        if (!o.dt) throw std::invalid_argument("filter fd: missing --dt");
        if (o.steps && o.time)
            throw std::invalid_argument("filter fd: give --steps or --time, not both");
        ff::FDConfig cfg;
        cfg.dt = *o.dt;
        cfg.steps = o.steps ? *o.steps
                            : static_cast<std::size_t>(std::lround(o.time.value_or(1.0) / cfg.dt));
        cfg.trunc_A = o.trunc_A ? *o.trunc_A : ff::truncation_A(*o.lambda);
        cfg.mode = parse_mode(o.mode);
        cfg.boundary = parse_boundary(o.boundary);
        cfg.force_unstable = o.force_unstable;

        ff::FDRunResult res = ff::filter_fd(u, a, o.b, *o.lambda, cfg);
        if (!res.stability.satisfied)
            std::cerr << "warning: running with violated stability conditions (cond2 = "
                      << res.stability.cond2_value << ")\n";
        out = std::move(res.signal);
        argv.insert(argv.end(),
                    {"--a", fmt17(a), "--b", fmt17(o.b), "--lambda", fmt17(*o.lambda), "--dt",
                     fmt17(cfg.dt), "--steps", std::to_string(cfg.steps), "--trunc-A",
                     std::to_string(cfg.trunc_A), "--mode", o.mode, "--boundary", o.boundary});
        if (o.dx_override) argv.insert(argv.end(), {"--dx", fmt17(*o.dx_override)});
        if (cfg.force_unstable) argv.push_back("--force-unstable");
        params["a"] = a;
        params["a4pi2"] = 4.0 * std::numbers::pi * std::numbers::pi * a;
        params["b"] = o.b;
        params["lambda"] = *o.lambda;
        params["dt"] = cfg.dt;
        params["steps"] = cfg.steps;
        params["trunc_A"] = cfg.trunc_A;
        params["mode"] = o.mode;
        params["boundary"] = o.boundary;
        details["stability"] = stability_json(res.stability);
    } else if (o.method == "savgol") {
        ff::SavGolSpec spec{o.window, o.order};
        out = ff::filter_savgol(u, spec, parse_boundary(o.boundary));
        argv.insert(argv.end(), {"--window", std::to_string(o.window), "--order",
                                 std::to_string(o.order), "--boundary", o.boundary});
        params["window"] = o.window;
        params["order"] = o.order;
        params["boundary"] = o.boundary;
    } else {
        throw std::invalid_argument("filter: unknown method '" + o.method + "'");
    }

    ff::write_signal_csv(o.out, out);
    const fs::path mpath = o.manifest_path.empty() ? fs::path(o.out + ".manifest.json")
                                                   : fs::path(o.manifest_path);
    argv.insert(argv.end(), {"--out", o.out, "--manifest", mpath.string()});
    save_manifest("filter", argv, params, details, std::nullopt, mpath);
    return 0;
}

// ------------------------------------------------------------- kernel ----

struct KernelOpts {
    std::optional<double> a, a4pi2;
    double b = 0.0;
    std::optional<double> lambda;
    double t = 1.0;
    std::size_t n = 4096;
    double extent = 16.0;
    std::string out_kernel, out_gain, manifest_path;
};

int cmd_kernel(const KernelOpts& o) {
    FilterOpts fo;
    fo.a = o.a;
    fo.a4pi2 = o.a4pi2;
    ff::FilterParams p;
    p.a = resolve_a(fo);
    p.b = o.b;
    if (!o.lambda) throw std::invalid_argument("kernel: missing --lambda");
    p.lambda = *o.lambda;
    p.t = o.t;
    p.validate();

    const ff::Signal k = ff::kernel_physical(p, o.n, o.extent);
    ff::write_signal_csv(o.out_kernel, k);

    // gains at the same DFT frequencies that built the kernel
    std::ofstream gout(o.out_gain);
    if (!gout) throw std::invalid_argument("cannot open for writing: " + o.out_gain);
    gout << "xi,gain\n";
    for (std::size_t j = 0; j <= o.n / 2; ++j) {
        const double xi = static_cast<double>(j) / o.extent;
        gout << fmt17(xi) << ',' << fmt17(std::exp(-p.t * ff::symbol_psi(xi, p))) << '\n';
    }
    gout.close();

    std::vector<std::string> argv = {"kernel", "--a", fmt17(p.a), "--b", fmt17(p.b),
                                     "--lambda", fmt17(p.lambda), "--t", fmt17(p.t),
                                     "--n", std::to_string(o.n), "--extent", fmt17(o.extent)};
    json params{{"a", p.a},       {"a4pi2", p.a4pi2()}, {"b", p.b}, {"lambda", p.lambda},
                {"t", p.t},       {"n", o.n},           {"extent", o.extent}};
    json details;
    if (p.b > 0.0)
        details["characteristic_frequencies"] = frequencies_json(ff::characteristic_frequencies(p));
    const fs::path mpath = o.manifest_path.empty() ? fs::path(o.out_kernel + ".manifest.json")
                                                   : fs::path(o.manifest_path);
    argv.insert(argv.end(), {"--out-kernel", o.out_kernel, "--out-gain", o.out_gain,
                             "--manifest", mpath.string()});
    save_manifest("kernel", argv, params, details, std::nullopt, mpath);
    return 0;
}

// -------------------------------------------------------- bench/sweep ----

struct SignalSource {
    std::string in;
    std::string gen_kind;
    std::size_t gen_n = 2048;
    double length = 2.0;
    double amplitude = 0.02;

    ff::Signal resolve() const {
        if (!in.empty() && !gen_kind.empty())
            throw std::invalid_argument("give --in or --gen, not both");
        if (!in.empty()) return ff::read_signal_csv(in);
        if (gen_kind == "step") return ff::gen_step(gen_n);
        if (gen_kind == "trig") return ff::gen_trig(gen_n, length);
        if (gen_kind == "attcos") return ff::gen_attenuated_cosine(gen_n, length, amplitude);
        if (gen_kind == "ecg-like") return ff::gen_ecg_like(gen_n, length);
        if (gen_kind.empty()) throw std::invalid_argument("missing signal: give --in or --gen");
        throw std::invalid_argument("unknown generator kind '" + gen_kind + "'");
    }

    void append_argv(std::vector<std::string>& argv) const {
        if (!in.empty()) {
            argv.insert(argv.end(), {"--in", in});
            return;
        }
        argv.insert(argv.end(), {"--gen", gen_kind, "--gen-n", std::to_string(gen_n)});
        if (gen_kind != "step") argv.insert(argv.end(), {"--length", fmt17(length)});
        if (gen_kind == "attcos") argv.insert(argv.end(), {"--amplitude", fmt17(amplitude)});
    }

    json to_json() const {
        if (!in.empty()) return json{{"in", in}};
        json j{{"gen", gen_kind}, {"n", gen_n}};
        if (gen_kind != "step") j["length"] = length;
        if (gen_kind == "attcos") j["amplitude"] = amplitude;
        return j;
    }
};

struct BenchOpts {
    SignalSource source;
    std::vector<std::string> filter_specs;
    std::string grid = "0:8:1";
    std::size_t n = 100;
    std::uint64_t seed = 42;
    bool parallel = false;
    std::string out, out_csv, manifest_path;
};

int cmd_bench(const BenchOpts& o) {
    const ff::Signal u0 = o.source.resolve();
    std::vector<ff::FilterConfig> filters;
    filters.reserve(o.filter_specs.size());
    for (const std::string& spec : o.filter_specs) filters.push_back(parse_filter_spec(spec));
    const std::vector<double> grid = parse_grid(o.grid, "--grid");

    const ff::BenchmarkReport report = ff::run_ensemble(u0, filters, grid, o.n, o.seed, o.parallel);

    json j = report.to_json();
    j["signal"] = o.source.to_json();
    std::ofstream out(o.out);
    if (!out) throw std::invalid_argument("cannot open for writing: " + o.out);
    out << j.dump(2) << '\n';
    out.close();

    if (!o.out_csv.empty()) {
        std::ofstream csv(o.out_csv);
        if (!csv) throw std::invalid_argument("cannot open for writing: " + o.out_csv);
        csv << "filter,input_snr_db,mean_snr_db,mean_mse\n";
        for (const auto& c : report.curves)
            for (std::size_t gi = 0; gi < grid.size(); ++gi)
                csv << c.label << ',' << fmt17(grid[gi]) << ',' << fmt17(c.mean_snr_db[gi]) << ','
                    << fmt17(c.mean_mse[gi]) << '\n';
    }

    std::vector<std::string> argv = {"bench"};
    o.source.append_argv(argv);
    for (const std::string& spec : o.filter_specs) argv.insert(argv.end(), {"--filter", spec});
    argv.insert(argv.end(), {"--grid", o.grid, "--n", std::to_string(o.n), "--seed",
                             std::to_string(o.seed)});
    if (o.parallel) argv.push_back("--parallel");
    json params{{"signal", o.source.to_json()}, {"filters", o.filter_specs},
                {"grid", grid},                 {"n_realizations", o.n},
                {"seed", o.seed}};
    const fs::path mpath =
        o.manifest_path.empty() ? fs::path(o.out + ".manifest.json") : fs::path(o.manifest_path);
    argv.insert(argv.end(), {"--out", o.out});
    if (!o.out_csv.empty()) argv.insert(argv.end(), {"--out-csv", o.out_csv});
    argv.insert(argv.end(), {"--manifest", mpath.string()});
    save_manifest("bench", argv, params, json{}, o.seed, mpath);
    return 0;
}

struct SweepOpts {
    SignalSource source;
    std::optional<double> a, a4pi2;
    std::optional<double> lambda;
    double t = 1.0;
    std::string b_range;
    double snr = 4.0;
    std::size_t n = 50;
    std::uint64_t seed = 42;
    std::string out, manifest_path;
};

int cmd_sweep(const SweepOpts& o) {
    const ff::Signal u0 = o.source.resolve();
    FilterOpts fo;
    fo.a = o.a;
    fo.a4pi2 = o.a4pi2;
    const double a = resolve_a(fo);
    if (!o.lambda) throw std::invalid_argument("sweep: missing --lambda");
    const std::vector<double> b_grid = parse_grid(o.b_range, "--b-range");

    const ff::SweepResult res = ff::sweep_b(u0, a, *o.lambda, o.t, b_grid, o.snr, o.n, o.seed);

    json j = res.to_json();
    j["signal"] = o.source.to_json();
    j["a"] = a;
    j["a4pi2"] = 4.0 * std::numbers::pi * std::numbers::pi * a;
    j["lambda"] = *o.lambda;
    j["t"] = o.t;
    j["input_snr_db"] = o.snr;
    j["n_realizations"] = o.n;
    j["seed"] = o.seed;
    std::ofstream out(o.out);
    if (!out) throw std::invalid_argument("cannot open for writing: " + o.out);
    out << j.dump(2) << '\n';
    out.close();

    std::vector<std::string> argv = {"sweep"};
    o.source.append_argv(argv);
    argv.insert(argv.end(), {"--a", fmt17(a), "--lambda", fmt17(*o.lambda), "--t", fmt17(o.t),
                             "--b-range", o.b_range, "--snr", fmt17(o.snr), "--n",
                             std::to_string(o.n), "--seed", std::to_string(o.seed)});
    json params{{"signal", o.source.to_json()}, {"a", a},       {"lambda", *o.lambda},
                {"t", o.t},                     {"snr", o.snr}, {"n_realizations", o.n},
                {"seed", o.seed},               {"b_grid", b_grid}};
    const fs::path mpath =
        o.manifest_path.empty() ? fs::path(o.out + ".manifest.json") : fs::path(o.manifest_path);
    argv.insert(argv.end(), {"--out", o.out, "--manifest", mpath.string()});
    save_manifest("sweep", argv, params, json{}, o.seed, mpath);
    return 0;
}

// -------------------------------------------------------------- rerun ----

int cmd_rerun(const std::string& manifest_path, const std::string& out_dir) {
    const ff::RunManifest m = ff::RunManifest::load(manifest_path);
    std::vector<std::string> argv = m.argv;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        argv = ff::rewrite_output_paths(std::move(argv), out_dir);
    }
    return dispatch(argv);
}

// ------------------------------------------------------------ wiring ----

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"1-D signal denoising and contrast enhancement via a linear "
                 "diffusion/anti-diffusion conservation law"};
    app.name("fractalfilter");
    app.require_subcommand(1);

    GenOpts gen;
    CLI::App* cgen = app.add_subcommand("gen", "generate a reference signal CSV");
    cgen->add_option("kind", gen.kind, "step|trig|attcos|ecg-like")->required();
    cgen->add_option("--n", gen.n, "number of samples")->required();
    cgen->add_option("--length", gen.length, "domain length (non-step kinds)");
    cgen->add_option("--amplitude", gen.amplitude, "attcos amplitude");
    double gen_sigma = 0.0, gen_snr = 0.0;
    CLI::Option* osigma = cgen->add_option("--noise-sigma", gen_sigma, "add Gaussian noise, std dev");
    CLI::Option* osnr = cgen->add_option("--noise-snr-db", gen_snr, "add Gaussian noise at target SNR");
    cgen->add_option("--seed", gen.seed, "noise seed");
    cgen->add_option("--out", gen.out, "output CSV path")->required();
    cgen->add_option("--manifest", gen.manifest_path, "manifest path (default <out>.manifest.json)");

    FilterOpts flt;
    CLI::App* cflt = app.add_subcommand("filter", "apply a filter to a signal CSV");
    cflt->add_option("method", flt.method, "fft|fd|savgol")->required();
    cflt->add_option("--in", flt.in, "input CSV")->required();
    cflt->add_option("--out", flt.out, "output CSV")->required();
    cflt->add_option("--manifest", flt.manifest_path, "manifest path");
    double flt_a = 0.0, flt_a4 = 0.0, flt_lambda = 0.0, flt_dt = 0.0, flt_time = 0.0,
           flt_dx = 0.0;
    std::size_t flt_steps = 0, flt_A = 0;
    CLI::Option* oa = cflt->add_option("--a", flt_a, "diffusion coefficient a");
    CLI::Option* oa4 = cflt->add_option("--a4pi2", flt_a4, "diffusion coefficient as 4*pi^2*a");
    cflt->add_option("--b", flt.b, "anti-diffusion coefficient");
    CLI::Option* olam = cflt->add_option("--lambda", flt_lambda, "fractional order in (0,2)");
    cflt->add_option("--t", flt.t, "evolution time (fft)");
    CLI::Option* odt = cflt->add_option("--dt", flt_dt, "time step (fd)");
    CLI::Option* osteps = cflt->add_option("--steps", flt_steps, "step count (fd)");
    CLI::Option* otime = cflt->add_option("--time", flt_time, "total time, steps = round(time/dt)");
    CLI::Option* oA = cflt->add_option("--trunc-A", flt_A, "nonlocal truncation (fd)");
    cflt->add_option("--mode", flt.mode, "causal|symmetric (fd)");
    cflt->add_option("--boundary", flt.boundary, "constant|periodic");
    cflt->add_flag("--force-unstable", flt.force_unstable, "run fd despite failed stability check");
    cflt->add_flag("--dx-from-file", flt.dx_from_file, "take dx from the input file (default)");
    CLI::Option* odx = cflt->add_option("--dx", flt_dx, "override grid spacing");
    cflt->add_option("--window", flt.window, "savgol window (odd)");
    cflt->add_option("--order", flt.order, "savgol polynomial order");

    KernelOpts ker;
    CLI::App* cker = app.add_subcommand("kernel", "emit kernel and gain curves");
    double ker_a = 0.0, ker_a4 = 0.0, ker_lambda = 0.0;
    CLI::Option* oka = cker->add_option("--a", ker_a, "diffusion coefficient a");
    CLI::Option* oka4 = cker->add_option("--a4pi2", ker_a4, "diffusion coefficient as 4*pi^2*a");
    cker->add_option("--b", ker.b, "anti-diffusion coefficient");
    CLI::Option* oklam = cker->add_option("--lambda", ker_lambda, "fractional order")->required();
    cker->add_option("--t", ker.t, "evolution time");
    cker->add_option("--n", ker.n, "kernel sample count");
    cker->add_option("--extent", ker.extent, "physical extent of the kernel grid");
    cker->add_option("--out-kernel", ker.out_kernel, "CSV of (x, K)")->required();
    cker->add_option("--out-gain", ker.out_gain, "CSV of (xi, gain)")->required();
    cker->add_option("--manifest", ker.manifest_path, "manifest path");

    BenchOpts bench;
    CLI::App* cbench = app.add_subcommand("bench", "SNR/MSE ensemble comparison of filters");
    cbench->add_option("--in", bench.source.in, "input signal CSV");
    cbench->add_option("--gen", bench.source.gen_kind, "generator kind instead of --in");
    cbench->add_option("--gen-n", bench.source.gen_n, "generator sample count");
    cbench->add_option("--length", bench.source.length, "generator domain length");
    cbench->add_option("--amplitude", bench.source.amplitude, "attcos amplitude");
    cbench->add_option("--filter", bench.filter_specs,
                       "filter spec method:k=v,... (repeatable)")->required();
    cbench->add_option("--grid", bench.grid, "input SNR grid start:stop:step or comma list");
    cbench->add_option("--n", bench.n, "realizations per grid point");
    cbench->add_option("--seed", bench.seed, "base seed");
    cbench->add_flag("--parallel", bench.parallel, "run realizations on threads");
    cbench->add_option("--out", bench.out, "report JSON path")->required();
    cbench->add_option("--out-csv", bench.out_csv, "per-filter curves CSV");
    cbench->add_option("--manifest", bench.manifest_path, "manifest path");

    SweepOpts sweep;
    CLI::App* csweep = app.add_subcommand("sweep", "mean output SNR as a function of b");
    csweep->add_option("--in", sweep.source.in, "input signal CSV");
    csweep->add_option("--gen", sweep.source.gen_kind, "generator kind instead of --in");
    csweep->add_option("--gen-n", sweep.source.gen_n, "generator sample count");
    csweep->add_option("--length", sweep.source.length, "generator domain length");
    csweep->add_option("--amplitude", sweep.source.amplitude, "attcos amplitude");
    double sweep_a = 0.0, sweep_a4 = 0.0, sweep_lambda = 0.0;
    CLI::Option* osa = csweep->add_option("--a", sweep_a, "diffusion coefficient a");
    CLI::Option* osa4 = csweep->add_option("--a4pi2", sweep_a4, "diffusion coefficient as 4*pi^2*a");
    CLI::Option* oslam = csweep->add_option("--lambda", sweep_lambda, "fractional order")->required();
    csweep->add_option("--t", sweep.t, "evolution time");
    csweep->add_option("--b-range", sweep.b_range, "b grid start:stop:step or comma list")->required();
    csweep->add_option("--snr", sweep.snr, "input SNR (dB)");
    csweep->add_option("--n", sweep.n, "realizations per b");
    csweep->add_option("--seed", sweep.seed, "base seed");
    csweep->add_option("--out", sweep.out, "result JSON path")->required();
    csweep->add_option("--manifest", sweep.manifest_path, "manifest path");

    std::string rerun_manifest, rerun_out_dir;
    CLI::App* crerun = app.add_subcommand("rerun", "re-execute a saved manifest");
    crerun->add_option("--manifest", rerun_manifest, "manifest JSON path")->required();
    crerun->add_option("--out-dir", rerun_out_dir, "rebase output files into this directory");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }

    if (app.got_subcommand(cgen)) {
        if (osigma->count()) gen.noise_sigma = gen_sigma;
        if (osnr->count()) gen.noise_snr_db = gen_snr;
        return cmd_gen(gen);
    }
    if (app.got_subcommand(cflt)) {
        if (oa->count()) flt.a = flt_a;
        if (oa4->count()) flt.a4pi2 = flt_a4;
        if (olam->count()) flt.lambda = flt_lambda;
        if (odt->count()) flt.dt = flt_dt;
        if (osteps->count()) flt.steps = flt_steps;
        if (otime->count()) flt.time = flt_time;
        if (oA->count()) flt.trunc_A = flt_A;
        if (odx->count()) flt.dx_override = flt_dx;
        return cmd_filter(flt);
    }
    if (app.got_subcommand(cker)) {
        if (oka->count()) ker.a = ker_a;
        if (oka4->count()) ker.a4pi2 = ker_a4;
        if (oklam->count()) ker.lambda = ker_lambda;
        return cmd_kernel(ker);
    }
    if (app.got_subcommand(cbench)) return cmd_bench(bench);
    if (app.got_subcommand(csweep)) {
        if (osa->count()) sweep.a = sweep_a;
        if (osa4->count()) sweep.a4pi2 = sweep_a4;
        if (oslam->count()) sweep.lambda = sweep_lambda;
        return cmd_sweep(sweep);
    }
    if (app.got_subcommand(crerun)) return cmd_rerun(rerun_manifest, rerun_out_dir);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(args);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ff::StabilityError& e) {
        std::cerr << "stability refusal: " << e.what() << '\n';
        return 3;
    } catch (const ff::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
