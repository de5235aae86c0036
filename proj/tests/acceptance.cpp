// Acceptance suite: one self-contained check per release criterion, each
// printed as a single [PASS]/[FAIL] line with its runtime. The process exit
// code is the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fractalfilter/bench.hpp"
#include "fractalfilter/fd_solver.hpp"
#include "fractalfilter/fractional.hpp"
#include "fractalfilter/metrics.hpp"
#include "fractalfilter/savgol.hpp"
#include "fractalfilter/signal.hpp"
#include "fractalfilter/signal_io.hpp"
#include "fractalfilter/spectral.hpp"

using namespace fractalfilter;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Checker {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename T>
    std::string str(const T& v) {
        std::ostringstream ss;
        ss << v;
        return ss.str();
    }
};

double rel_l2(const std::vector<double>& got, const std::vector<double>& want) {
    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double d = got[i] - want[i];
        diff += d * d;
        ref += want[i] * want[i];
    }
    return std::sqrt(diff / ref);
}

// ---------------------------------------------------------------------------

void criterion_1_spectral_landmarks(Checker& c) {
    const FilterParams p = FilterParams::from_a4pi2(0.01, 0.05, 1.5, 1.0);
    const CharacteristicFrequencies cf = characteristic_frequencies(p);
    c.require(std::abs(cf.xi_1 - 25.0) < 1e-10, "xi_1 != 25: " + c.str(cf.xi_1));
    c.require(std::abs(cf.xi_m - 14.0625) < 1e-10, "xi_m != 14.0625: " + c.str(cf.xi_m));
    c.require(std::abs(cf.ratio - 16.0 / 9.0) < 1e-10, "ratio != (4/3)^2: " + c.str(cf.ratio));
    c.require(std::abs(cf.peak_gain - 1.9332058508603212) < 1e-10,
              "M != 1.9332...: " + c.str(cf.peak_gain));
    c.require(std::abs(cf.peak_gain - 1.9332) < 1e-4, "M not within 1e-4 of 1.9332");

    const std::size_t count = 1 << 14;
    const double xi_max = 50.0;
    const SpectralProfile prof = sample_profile(p, xi_max, count);
    const double bin = xi_max / static_cast<double>(count - 1);
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < count; ++i)
        if (prof.gains[i] > prof.gains[argmax]) argmax = i;
    c.require(std::abs(prof.xis[argmax] - cf.xi_m) <= bin,
              "sampled argmax off by more than one bin");
    std::size_t crossing = argmax;
    while (crossing < count && prof.gains[crossing] > 1.0) ++crossing;
    c.require(crossing < count && std::abs(prof.xis[crossing] - cf.xi_1) <= bin,
              "sampled unit crossing off by more than one bin");
}

void criterion_2_kernel_negativity(Checker& c) {
    for (double t : {0.1, 0.5}) {
        const FilterParams p{0.5, 2.0, 1.5, t};
        const Signal k = kernel_physical(p, 2048, 16.0);
        double mn = 1e300;
        for (double v : k.samples) mn = std::min(mn, v);
        c.require(mn < 0.0, "kernel min not negative at t=" + c.str(t));
    }
}

void criterion_3_mass_and_semigroup(Checker& c) {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 128 + static_cast<std::size_t>(unif(rng) * 512.0);
        Signal u;
        u.dx = (0.5 + unif(rng)) / static_cast<double>(n);
        u.samples.resize(n);
        for (auto& v : u.samples) v = 1.0 + 0.8 * (unif(rng) - 0.5);

        const double lambda = 0.4 + 1.2 * unif(rng);
        const double a4pi2 = 0.02 + 0.08 * unif(rng);
        const double xi1 = 2.0 + 6.0 * unif(rng);
        const double b = a4pi2 * std::pow(xi1, 2.0 - lambda);
        const double s = 0.2 + 0.4 * unif(rng);
        const double r = 0.2 + 0.4 * unif(rng);

        const Signal once = filter_fft(u, FilterParams::from_a4pi2(a4pi2, b, lambda, s + r));
        const Signal twice = filter_fft(filter_fft(u, FilterParams::from_a4pi2(a4pi2, b, lambda, s)),
                                        FilterParams::from_a4pi2(a4pi2, b, lambda, r));

        if (std::abs(once.sum() - u.sum()) > 1e-10 * std::abs(u.sum()))
            c.require(false, "mass conservation violated at trial " + c.str(trial));
        if (rel_l2(twice.samples, once.samples) > 1e-12)
            c.require(false, "semigroup composition violated at trial " + c.str(trial));
    }
}

void criterion_4_stability_regression(Checker& c) {
    const StabilityReport r = check_stability(4.0, 0.5, 1.7, 1.0, 0.1);
    c.require(std::abs(r.cond2_value - 0.8692213896663771) < 1e-6,
              "cond2 != 0.8692...: " + c.str(r.cond2_value));
    c.require(std::abs(r.cond1_lhs - 0.1922138966637709) < 1e-6,
              "cond1 lhs != 0.19221...: " + c.str(r.cond1_lhs));
    c.require(r.cond1_lhs < r.cond1_rhs, "cond1 not satisfied");
    c.require(r.satisfied, "reference parameters flagged unstable");
    c.require(!check_stability(4.0, 0.5, 1.7, 1.0, 0.2).satisfied,
              "doubled dt not flagged unstable");
}

void criterion_5_fd_spectral_convergence(Checker& c) {
    const double lambda = 1.5, a = 0.25, b = 1.0, t = 0.01, sigma = 0.06;
    std::vector<double> errs;
    for (const std::size_t n : {64u, 128u, 256u}) {
        Signal u;
        u.dx = 1.0 / static_cast<double>(n);
        u.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double z = (u.x_at(i) - 0.5) / sigma;
            u.samples[i] = std::exp(-0.5 * z * z);
        }
        FDConfig cfg;
        cfg.steps = static_cast<std::size_t>(
            std::lround(t * static_cast<double>(n) * static_cast<double>(n)));
        cfg.dt = t / static_cast<double>(cfg.steps);
        cfg.trunc_A = n / 2 - 1;
        cfg.mode = NonlocalMode::symmetric;
        cfg.boundary = BoundaryPolicy::periodic;

        const FDRunResult fd = filter_fd(u, a, b, lambda, cfg);
        c.require(fd.stability.satisfied, "convergence run not in the stable regime");
        const Signal ref = filter_fft(u, FilterParams{a, b, lambda, t});
        errs.push_back(rel_l2(fd.signal.samples, ref.samples));
    }
    c.require(errs[0] > errs[1] && errs[1] > errs[2],
              "error not monotone: " + c.str(errs[0]) + ", " + c.str(errs[1]) + ", " +
                  c.str(errs[2]));
    c.require(errs[2] <= 0.02, "final error above 2%: " + c.str(errs[2]));
}

void criterion_6_nonlocal_oracle(Checker& c) {
    SmoothFunction g;
    g.f = [](double x) { return std::exp(-kPi * x * x); };
    g.df = [](double x) { return -2.0 * kPi * x * std::exp(-kPi * x * x); };
    g.d2f = [](double x) { return (4.0 * kPi * kPi * x * x - 2.0 * kPi) * std::exp(-kPi * x * x); };

    const double dx = 1.0 / 512.0, lo = -4.0;
    const std::size_t n = 4096;
    std::vector<double> xs(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo + dx * static_cast<double>(i);
        v[i] = g.f(xs[i]);
    }
    for (double lambda : {1.2, 1.5, 1.8}) {
        const auto disc = apply_nonlocal_discrete(v, lambda, dx, n, NonlocalMode::symmetric,
                                                  BoundaryPolicy::constant_extension);
        const auto oracle = quadrature_oracle(g, lambda, xs);
        const double err = rel_l2(disc, oracle);
        c.require(err <= 0.02,
                  "lambda=" + c.str(lambda) + ": rel L2 " + c.str(err) + " above 2%");
    }
}

void criterion_7_benchmark_ordering(Checker& c) {
    const Signal u0 = gen_trig(2048, 2.0);
    FilterConfig fft_cfg;
    fft_cfg.kind = FilterConfig::Kind::fft;
    fft_cfg.label = "fft";
    fft_cfg.fft = FilterParams::from_a4pi2(0.01, 0.03, 1.5, 1.0);
    FilterConfig sg_cfg;
    sg_cfg.kind = FilterConfig::Kind::savgol;
    sg_cfg.label = "savgol";
    sg_cfg.savgol = SavGolSpec{11, 3};

    const BenchmarkReport rep =
        run_ensemble(u0, {fft_cfg, sg_cfg}, {0.0, 2.0, 4.0, 6.0, 8.0}, 100, 42);
    for (std::size_t gi = 0; gi < rep.input_snr_grid.size(); ++gi) {
        c.require(rep.curves[0].mean_snr_db[gi] > rep.curves[1].mean_snr_db[gi],
                  "fft does not beat savgol at input SNR " + c.str(rep.input_snr_grid[gi]) +
                      " (" + c.str(rep.curves[0].mean_snr_db[gi]) + " vs " +
                      c.str(rep.curves[1].mean_snr_db[gi]) + ")");
    }
}

void criterion_8_b_sweep(Checker& c) {
    const Signal u0 = gen_trig(2048, 2.0);
    std::vector<double> b_grid;
    for (int i = 0; i <= 10; ++i) b_grid.push_back(0.01 + 0.005 * static_cast<double>(i));
    const double a = FilterParams::from_a4pi2(0.01, 0, 1.5).a;
    const SweepResult res = sweep_b(u0, a, 1.5, 1.0, b_grid, 4.0, 50, 42);
    c.require(res.best_b >= 0.02 && res.best_b <= 0.04,
              "best_b outside [0.02, 0.04]: " + c.str(res.best_b));
}

void criterion_9_pure_mode_amplification(Checker& c) {
    const FilterParams p = FilterParams::from_a4pi2(0.01, 0.05, 1.5, 1.0);
    const CharacteristicFrequencies cf = characteristic_frequencies(p);
    const std::size_t n = 4096;
    Signal u;
    u.dx = 16.0 / static_cast<double>(n);  // xi_m = 225/16 sits exactly on bin 225
    u.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        u.samples[i] = std::cos(2.0 * kPi * cf.xi_m * u.x_at(i));

    const Signal out = filter_fft(u, p);
    std::vector<double> want(n);
    for (std::size_t i = 0; i < n; ++i) want[i] = cf.peak_gain * u.samples[i];
    c.require(rel_l2(out.samples, want) <= 1e-10,
              "pure mode not scaled by M within 1e-10: " + c.str(rel_l2(out.samples, want)));

    const Signal sg = filter_savgol(u, SavGolSpec{11, 3}, BoundaryPolicy::periodic);
    double peak_in = 0.0, peak_out = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        peak_in = std::max(peak_in, std::abs(u.samples[i]));
        peak_out = std::max(peak_out, std::abs(sg.samples[i]));
    }
    c.require(peak_out / peak_in < cf.peak_gain,
              "savgol peak retention not below M: " + c.str(peak_out / peak_in));
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FRACTALFILTER_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10_determinism(Checker& c) {
    const fs::path dir = fs::path(TEST_SCRATCH_DIR) / "acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path sig = dir / "sig.csv";
    c.require(run_cli("gen trig --n 512 --length 2 --out " + sig.string()) == 0, "gen failed");

    // spectral filter manifest
    const fs::path out1 = dir / "f1.csv";
    c.require(run_cli("filter fft --a4pi2 0.01 --b 0.05 --lambda 1.5 --in " + sig.string() +
                      " --out " + out1.string()) == 0,
              "filter fft failed");
    const fs::path rdir1 = dir / "rerun_fft";
    c.require(run_cli("rerun --manifest " + out1.string() + ".manifest.json --out-dir " +
                      rdir1.string()) == 0,
              "rerun fft failed");
    c.require(slurp(rdir1 / "f1.csv") == slurp(out1), "fft rerun output differs");

    // fd filter manifest (stable config on dx = 2/512)
    const fs::path out2 = dir / "f2.csv";
    c.require(run_cli("filter fd --a 0.001 --b 0.05 --lambda 0.5 --dt 0.005 --steps 20 --in " +
                      sig.string() + " --out " + out2.string()) == 0,
              "filter fd failed");
    const fs::path rdir2 = dir / "rerun_fd";
    c.require(run_cli("rerun --manifest " + out2.string() + ".manifest.json --out-dir " +
                      rdir2.string()) == 0,
              "rerun fd failed");
    c.require(slurp(rdir2 / "f2.csv") == slurp(out2), "fd rerun output differs");

    // bench manifest, including the report and curve files
    const fs::path rep = dir / "bench.json";
    const fs::path csv = dir / "bench.csv";
    c.require(run_cli("bench --gen trig --gen-n 512 --length 2 "
                      "--filter fft:a4pi2=0.01,b=0.03,lambda=1.5 --filter savgol:window=11,order=3 "
                      "--grid 0,4,8 --n 5 --seed 9 --out " +
                      rep.string() + " --out-csv " + csv.string()) == 0,
              "bench failed");
    const fs::path rdir3 = dir / "rerun_bench";
    c.require(run_cli("rerun --manifest " + rep.string() + ".manifest.json --out-dir " +
                      rdir3.string()) == 0,
              "rerun bench failed");
    c.require(slurp(rdir3 / "bench.json") == slurp(rep), "bench rerun report differs");
    c.require(slurp(rdir3 / "bench.csv") == slurp(csv), "bench rerun curves differ");
}

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<void(Checker&)> fn;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "spectral landmarks (xi_1, xi_m, ratio, M; sampled curve agrees)", 1.0,
         criterion_1_spectral_landmarks},
        {2, "kernel negativity for a=0.5, b=2, lambda=1.5, t in {0.1, 0.5}", 1.0,
         criterion_2_kernel_negativity},
        {3, "mass conservation and semigroup over 50 random (params, signal) pairs", 30.0,
         criterion_3_mass_and_semigroup},
        {4, "stability checker regression on the reference parameters", 1.0,
         criterion_4_stability_regression},
        {5, "FD -> spectral convergence (symmetric mode, dx = 1/64..1/256)", 30.0,
         criterion_5_fd_spectral_convergence},
        {6, "nonlocal operator vs quadrature oracle (lambda in {1.2, 1.5, 1.8})", 30.0,
         criterion_6_nonlocal_oracle},
        {7, "benchmark ordering: spectral filter beats savgol on the trig ensemble", 120.0,
         criterion_7_benchmark_ordering},
        {8, "b sweep recovers the optimal anti-diffusion weight in [0.02, 0.04]", 120.0,
         criterion_8_b_sweep},
        {9, "pure-mode amplification by M; savgol peak retention below M", 30.0,
         criterion_9_pure_mode_amplification},
        {10, "end-to-end determinism: manifests re-run to byte-identical outputs", 60.0,
         criterion_10_determinism},
    };

    int failed = 0;
    for (const Criterion& cr : criteria) {
        Checker c;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.fn(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > cr.time_limit_s)
            c.failures.push_back("runtime " + std::to_string(elapsed) + "s exceeds limit " +
                                 std::to_string(cr.time_limit_s) + "s");

        const bool ok = c.failures.empty();
        failed += ok ? 0 : 1;
        std::printf("[%s] criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", cr.id,
                    cr.name.c_str(), elapsed);
        for (const std::string& f : c.failures) std::printf("       - %s\n", f.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed;
}
