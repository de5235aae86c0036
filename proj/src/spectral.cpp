#include "fractalfilter/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fractalfilter {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi2 = 4.0 * kPi * kPi;

// The FFTW planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwReal {
    double* p = nullptr;
    explicit FftwReal(std::size_t n) : p(fftw_alloc_real(n)) {}
    ~FftwReal() { fftw_free(p); }
    FftwReal(const FftwReal&) = delete;
    FftwReal& operator=(const FftwReal&) = delete;
};

struct FftwComplex {
    fftw_complex* p = nullptr;
    explicit FftwComplex(std::size_t n) : p(fftw_alloc_complex(n)) {}
    ~FftwComplex() { fftw_free(p); }
    FftwComplex(const FftwComplex&) = delete;
    FftwComplex& operator=(const FftwComplex&) = delete;
};

struct PlanGuard {
    fftw_plan plan = nullptr;
    explicit PlanGuard(fftw_plan pl) : plan(pl) {}
    ~PlanGuard() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    PlanGuard(const PlanGuard&) = delete;
    PlanGuard& operator=(const PlanGuard&) = delete;
};

}  // namespace

FilterParams FilterParams::from_a4pi2(double a4pi2, double b, double lambda, double t) {
    return FilterParams{a4pi2 / kFourPi2, b, lambda, t};
}

double FilterParams::a4pi2() const { return kFourPi2 * a; }

void FilterParams::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("FilterParams: a must be > 0");
    if (!(b >= 0.0)) throw std::invalid_argument("FilterParams: b must be >= 0");
    if (!(lambda > 0.0) || !(lambda < 2.0))
        throw std::invalid_argument("FilterParams: lambda must lie in (0,2)");
    if (!(t >= 0.0)) throw std::invalid_argument("FilterParams: t must be >= 0");
}

double symbol_psi(double xi, const FilterParams& p) {
    return kFourPi2 * p.a * xi * xi - p.b * std::pow(std::abs(xi), p.lambda);
}

CharacteristicFrequencies characteristic_frequencies(const FilterParams& p) {
    p.validate();
    if (!(p.b > 0.0))
        throw std::invalid_argument(
            "characteristic_frequencies: b must be > 0 (no amplification band)");
    CharacteristicFrequencies cf;
    const double inv = 1.0 / (2.0 - p.lambda);
    cf.xi_m = std::pow(p.lambda * p.b / (2.0 * kFourPi2 * p.a), inv);
    cf.xi_1 = std::pow(p.b / (kFourPi2 * p.a), inv);
    cf.ratio = cf.xi_1 / cf.xi_m;
    cf.peak_gain = std::exp(-p.t * symbol_psi(cf.xi_m, p));
    return cf;
}

SpectralProfile sample_profile(const FilterParams& p, double xi_max, std::size_t count) {
    p.validate();
    if (count < 2) throw std::invalid_argument("sample_profile: count must be >= 2");
    if (!(xi_max > 0.0)) throw std::invalid_argument("sample_profile: xi_max must be > 0");
    SpectralProfile prof;
    prof.xis.resize(count);
    prof.gains.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double xi = xi_max * static_cast<double>(i) / static_cast<double>(count - 1);
        prof.xis[i] = xi;
        prof.gains[i] = std::exp(-p.t * symbol_psi(xi, p));
    }
    if (p.b > 0.0) prof.landmarks = characteristic_frequencies(p);
    return prof;
}

Signal filter_fft(const Signal& u, const FilterParams& p) {
    u.validate();
    p.validate();

    const std::size_t n = u.size();
    const std::size_t nc = n / 2 + 1;
    FftwReal in(n);
    FftwComplex spec(nc);
    FftwReal result(n);

    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.p, spec.p, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec.p, result.p, FFTW_ESTIMATE);
    }
    PlanGuard gf(fwd), gb(bwd);

    for (std::size_t i = 0; i < n; ++i) in.p[i] = u.samples[i];
    fftw_execute(fwd);

    // bin k lives at xi = k/(n*dx); the Nyquist bin (even n) is real and
    // picks up its real gain like every other bin
    const double dxi = 1.0 / (static_cast<double>(n) * u.dx);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < nc; ++k) {
        const double gain = std::exp(-p.t * symbol_psi(static_cast<double>(k) * dxi, p)) * inv_n;
        spec.p[k][0] *= gain;
        spec.p[k][1] *= gain;
    }
    fftw_execute(bwd);

    Signal out;
    out.dx = u.dx;
    out.x0 = u.x0;
    out.samples.assign(result.p, result.p + n);
    return out;
}

Signal kernel_physical(const FilterParams& p, std::size_t n, double extent) {
    p.validate();
    if (n < 16) throw std::invalid_argument("kernel_physical: n must be >= 16");
    if (!(extent > 0.0)) throw std::invalid_argument("kernel_physical: extent must be > 0");

    // K(x_m) = sum_j gain(j/extent) * dxi * e^{2 pi i x_m j/extent} with
    // x_m = -extent/2 + m*dx; the half-extent shift is the parity factor (-1)^j.
    FftwComplex freq(n);
    FftwComplex phys(n);
    const double dxi = 1.0 / extent;
    for (std::size_t k = 0; k < n; ++k) {
        const long j = (k <= (n - 1) / 2) ? static_cast<long>(k)
                                          : static_cast<long>(k) - static_cast<long>(n);
        const double xi = static_cast<double>(j) * dxi;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        freq.p[k][0] = std::exp(-p.t * symbol_psi(xi, p)) * dxi * sign;
        freq.p[k][1] = 0.0;
    }

    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), freq.p, phys.p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    PlanGuard g(plan);
    fftw_execute(plan);

    Signal out;
    out.dx = extent / static_cast<double>(n);
    out.x0 = -extent / 2.0;
    out.samples.resize(n);
    for (std::size_t m = 0; m < n; ++m) out.samples[m] = phys.p[m][0];
    return out;
}

}  // namespace fractalfilter
