#include "fractalfilter/bench.hpp"

#include <future>
#include <stdexcept>
#include <thread>

#include "fractalfilter/metrics.hpp"

namespace fractalfilter {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t grid_index, std::uint64_t realization) {
    return base ^ splitmix64(splitmix64(grid_index) + realization);
}

Signal FilterConfig::apply(const Signal& u) const {
    switch (kind) {
        case Kind::identity:
            return u;
        case Kind::fft:
            return filter_fft(u, fft);
        case Kind::fd:
            return filter_fd(u, fd_a, fd_b, fd_lambda, fd).signal;
        case Kind::savgol:
            return filter_savgol(u, savgol, savgol_boundary);
    }
    throw std::logic_error("FilterConfig: unknown kind");
}

nlohmann::json FilterConfig::to_json() const {
    nlohmann::json j;
    j["label"] = label;
    switch (kind) {
        case Kind::identity:
            j["method"] = "identity";
            break;
        case Kind::fft:
            j["method"] = "fft";
            j["a"] = fft.a;
            j["a4pi2"] = fft.a4pi2();
            j["b"] = fft.b;
            j["lambda"] = fft.lambda;
            j["t"] = fft.t;
            break;
        case Kind::fd:
            j["method"] = "fd";
            j["a"] = fd_a;
            j["b"] = fd_b;
            j["lambda"] = fd_lambda;
            j["dt"] = fd.dt;
            j["steps"] = fd.steps;
            j["trunc_A"] = fd.trunc_A;
            j["mode"] = fd.mode == NonlocalMode::causal ? "causal" : "symmetric";
            j["boundary"] =
                fd.boundary == BoundaryPolicy::periodic ? "periodic" : "constant";
            j["force_unstable"] = fd.force_unstable;
            break;
        case Kind::savgol:
            j["method"] = "savgol";
            j["window"] = savgol.window;
            j["order"] = savgol.poly_order;
            j["boundary"] =
                savgol_boundary == BoundaryPolicy::periodic ? "periodic" : "constant";
            break;
    }
    return j;
}

nlohmann::json BenchmarkReport::to_json() const {
    nlohmann::json j;
    j["input_snr_grid"] = input_snr_grid;
    j["n_realizations"] = n_realizations;
    j["base_seed"] = base_seed;
    j["filters"] = nlohmann::json::array();
    for (const Curve& c : curves) {
        nlohmann::json jc;
        jc["label"] = c.label;
        jc["config"] = c.config;
        jc["mean_snr_db"] = c.mean_snr_db;
        jc["mean_mse"] = c.mean_mse;
        j["filters"].push_back(jc);
    }
    return j;
}

BenchmarkReport run_ensemble(const Signal& u0,
                             const std::vector<FilterConfig>& filters,
                             const std::vector<double>& input_snr_grid,
                             std::size_t n,
                             std::uint64_t base_seed,
                             bool parallel) {
    u0.validate();
    if (filters.empty()) throw std::invalid_argument("run_ensemble: no filters given");
    if (input_snr_grid.empty()) throw std::invalid_argument("run_ensemble: empty SNR grid");
    if (n < 1) throw std::invalid_argument("run_ensemble: n must be >= 1");

    const std::size_t nf = filters.size();
    const std::size_t ng = input_snr_grid.size();

    // per-(filter, grid) slots, one per realization, so the reduction order
    // is fixed no matter how the work was scheduled
    std::vector<std::vector<double>> snr(nf * ng, std::vector<double>(n));
    std::vector<std::vector<double>> err(nf * ng, std::vector<double>(n));

    auto run_one = [&](std::size_t gi, std::size_t i) {
        const NoiseSpec spec =
            NoiseSpec::target_snr(input_snr_grid[gi], derive_seed(base_seed, gi, i));
        const Signal noisy = add_noise(u0, spec);
        for (std::size_t fi = 0; fi < nf; ++fi) {
            Signal out;
            try {
                out = filters[fi].apply(noisy);
            } catch (const std::exception& e) {
                throw std::runtime_error("run_ensemble: filter '" + filters[fi].label +
                                         "' failed: " + e.what());
            }
            snr[fi * ng + gi][i] = snr_db(u0, out);
            err[fi * ng + gi][i] = mse(u0, out);
        }
    };

    const std::size_t total = ng * n;
    if (parallel && total > 1) {
        const std::size_t workers =
            std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), total);
        std::vector<std::future<void>> futs;
        futs.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            futs.push_back(std::async(std::launch::async, [&, w]() {
                for (std::size_t task = w; task < total; task += workers)
                    run_one(task / n, task % n);
            }));
        }
        for (auto& f : futs) f.get();
    } else {
        for (std::size_t gi = 0; gi < ng; ++gi)
            for (std::size_t i = 0; i < n; ++i) run_one(gi, i);
    }

    BenchmarkReport report;
    report.input_snr_grid = input_snr_grid;
    report.n_realizations = n;
    report.base_seed = base_seed;
    report.curves.resize(nf);
    for (std::size_t fi = 0; fi < nf; ++fi) {
        BenchmarkReport::Curve& c = report.curves[fi];
        c.label = filters[fi].label;
        c.config = filters[fi].to_json();
        c.mean_snr_db.resize(ng);
        c.mean_mse.resize(ng);
        for (std::size_t gi = 0; gi < ng; ++gi) {
            double ssum = 0.0, esum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                ssum += snr[fi * ng + gi][i];
                esum += err[fi * ng + gi][i];
            }
            c.mean_snr_db[gi] = ssum / static_cast<double>(n);
            c.mean_mse[gi] = esum / static_cast<double>(n);
        }
    }
    return report;
}

nlohmann::json SweepResult::to_json() const {
    nlohmann::json j;
    j["b_grid"] = b_grid;
    j["mean_snr_db"] = mean_snr_db;
    j["best_b"] = best_b;
    return j;
}

SweepResult sweep_b(const Signal& u0, double a, double lambda, double t,
                    const std::vector<double>& b_grid, double input_snr_db,
                    std::size_t n, std::uint64_t seed) {
    u0.validate();
    if (b_grid.empty()) throw std::invalid_argument("sweep_b: empty b grid");
    for (double b : b_grid)
        if (!(b >= 0.0)) throw std::invalid_argument("sweep_b: b values must be >= 0");
    if (n < 1) throw std::invalid_argument("sweep_b: n must be >= 1");

    // identical realizations for every b (paired comparison)
    std::vector<Signal> noisy;
    noisy.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        noisy.push_back(add_noise(u0, NoiseSpec::target_snr(input_snr_db, derive_seed(seed, 0, i))));

    SweepResult res;
    res.b_grid = b_grid;
    res.mean_snr_db.resize(b_grid.size());
    for (std::size_t bi = 0; bi < b_grid.size(); ++bi) {
        const FilterParams p{a, b_grid[bi], lambda, t};
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += snr_db(u0, filter_fft(noisy[i], p));
        res.mean_snr_db[bi] = sum / static_cast<double>(n);
    }

    std::size_t best = 0;
    for (std::size_t bi = 1; bi < b_grid.size(); ++bi) {
        const bool better = res.mean_snr_db[bi] > res.mean_snr_db[best];
        const bool tie_smaller =
            res.mean_snr_db[bi] == res.mean_snr_db[best] && b_grid[bi] < b_grid[best];
        if (better || tie_smaller) best = bi;
    }
    res.best_b = b_grid[best];
    return res;
}

}  // namespace fractalfilter
