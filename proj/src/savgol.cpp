#include "fractalfilter/savgol.hpp"

#include <cmath>
#include <stdexcept>

namespace fractalfilter {

void SavGolSpec::validate() const {
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("SavGolSpec: window must be odd and >= 3");
    if (poly_order >= window)
        throw std::invalid_argument("SavGolSpec: poly_order must be < window");
}

std::vector<double> savgol_coeffs(const SavGolSpec& spec) {
    spec.validate();
    const long m = static_cast<long>(spec.window / 2);

    // Center-evaluation weights of the least-squares fit. Only even powers
    // contribute at the window center, so solve the reduced normal
    // equations S y = e0 with S_{rs} = sum_k k^{2(r+s)}.
    const std::size_t dim = spec.poly_order / 2 + 1;
    std::vector<std::vector<double>> S(dim, std::vector<double>(dim + 1, 0.0));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            double s = 0.0;
            for (long k = -m; k <= m; ++k)
                s += std::pow(static_cast<double>(k), 2.0 * static_cast<double>(r + c));
            S[r][c] = s;
        }
    }
    S[0][dim] = 1.0;  // rhs e0, augmented

    // Gaussian elimination with partial pivoting (dim <= ~6 in practice)
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::abs(S[r][col]) > std::abs(S[piv][col])) piv = r;
        std::swap(S[col], S[piv]);
        if (S[col][col] == 0.0) throw std::runtime_error("savgol_coeffs: singular normal equations");
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == col) continue;
            const double f = S[r][col] / S[col][col];
            for (std::size_t c = col; c <= dim; ++c) S[r][c] -= f * S[col][c];
        }
    }
    std::vector<double> y(dim);
    for (std::size_t r = 0; r < dim; ++r) y[r] = S[r][dim] / S[r][r];

    std::vector<double> w(spec.window);
    for (long k = -m; k <= m; ++k) {
        double v = 0.0;
        for (std::size_t r = 0; r < dim; ++r)
            v += y[r] * std::pow(static_cast<double>(k), 2.0 * static_cast<double>(r));
        w[static_cast<std::size_t>(k + m)] = v;
    }
    return w;
}

Signal filter_savgol(const Signal& u, const SavGolSpec& spec, BoundaryPolicy boundary) {
    u.validate();
    spec.validate();
    if (u.size() < spec.window)
        throw std::invalid_argument("filter_savgol: signal shorter than the window");

    const std::vector<double> w = savgol_coeffs(spec);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(spec.window / 2);
    const bool periodic = boundary == BoundaryPolicy::periodic;

    auto at = [&](std::ptrdiff_t k) -> double {
        if (periodic) {
            k %= n;
            if (k < 0) k += n;
            return u.samples[k];
        }
        if (k < 0) return u.samples[0];
        if (k >= n) return u.samples[n - 1];
        return u.samples[k];
    };

    Signal out = u;
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::ptrdiff_t i = -m; i <= m; ++i) s += w[i + m] * at(j + i);
        out.samples[j] = s;
    }
    return out;
}

}  // namespace fractalfilter
