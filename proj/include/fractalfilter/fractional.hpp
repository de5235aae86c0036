#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fractalfilter/signal.hpp"

namespace fractalfilter {

/// Discretization variants of the nonlocal operator I_lambda.
///
/// causal: one-sided sum over trailing samples,
///     w_j = dx^-lambda * sum_{l=1..A} l^(1-lambda) * D2 v_{j-l},
/// with D2 v_k = v_{k+1} - 2 v_k + v_{k-1}. No alpha_lambda factor; the
/// convention is that it is absorbed into the PDE coefficient b.
///
/// symmetric: two-sided form of the integral representation
///     I_lambda[phi](x) = alpha_lambda * int phi''(x+z) / |z|^(lambda-1) dz
/// (valid for lambda in (1,2)), discretized with cell-integrated weights of
/// |z|^(1-lambda) including the singular cell, which keeps the operator
/// spectrally accurate. The alpha_lambda factor IS applied here.
enum class NonlocalMode { causal, symmetric };

/// C_lambda = lambda*Gamma((1+lambda)/2) / (2*pi^(1/2+lambda)*Gamma(1-lambda/2)),
/// the constant of the singular-integral representations. lambda in (0,2).
double c_lambda(double lambda);

/// alpha_lambda = C_lambda / (lambda*(lambda-1)), lambda in (1,2).
double alpha_lambda(double lambda);

/// Truncation length of the discrete nonlocal sum: max(100, ceil(10/lambda)).
std::size_t truncation_A(double lambda);

/// Discrete nonlocal operator; see NonlocalMode for the two forms.
/// v.size() >= 3, dx > 0, A >= 1. Symmetric mode requires lambda in (1,2).
std::vector<double> apply_nonlocal_discrete(std::span<const double> v,
                                            double lambda,
                                            double dx,
                                            std::size_t A,
                                            NonlocalMode mode,
                                            BoundaryPolicy boundary);

/// An analytic test function with the derivatives the singular quadrature
/// needs (d2f drives the Taylor-compensated strip around z = 0).
struct SmoothFunction {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
};

/// High-accuracy reference evaluation of I_lambda[phi] at the given points,
/// by adaptive quadrature of the singular-integral representation
/// (difference form for lambda < 1, second-order compensated form for
/// lambda > 1). The integral is split at the singularity; a Taylor strip
/// handles |z| < eps and closed-form tails handle |z| > R. lambda = 1 is
/// unsupported (neither representation applies as written).
///
/// Accuracy on a Gaussian is ~1e-8 relative; this is the validation oracle
/// for apply_nonlocal_discrete and is deliberately independent of it.
std::vector<double> quadrature_oracle(const SmoothFunction& phi,
                                      double lambda,
                                      std::span<const double> xs);

}  // namespace fractalfilter
