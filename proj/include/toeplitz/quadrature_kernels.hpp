#pragma once

#include <functional>
#include <span>
#include <vector>

#include "toeplitz/types.hpp"

// Tensor-grid quadrature kernels. Every kernel has a serial reference and an
// OpenMP version; both evaluate each grid point with identical code into its
// own slot and leave the reduction to the fixed-order pairwise sum, so the two
// agree bit for bit.
namespace toeplitz::oracle::kernels {

struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// Midpoint rule on [center - radius, center + radius].
AxisRule uniform_rule(double center, double radius, int points);

/// Gauss-Hermite nodes rescaled for integrands decaying like exp(-decay (t - center)^2);
/// weights include the exp(+t^2) correction so the rule integrates f directly.
AxisRule gauss_hermite_rule(double center, double decay, int points);

using PointFn = std::function<cplx(std::span<const double>)>;

/// Weighted values w_i f(x_i) on the tensor grid, last axis fastest.
std::vector<cplx> evaluate_serial(const PointFn& f, std::span<const AxisRule> axes);
std::vector<cplx> evaluate_parallel(const PointFn& f, std::span<const AxisRule> axes);

cplx pairwise_sum(std::span<const cplx> v);
double pairwise_sum(std::span<const double> v);

/// Share of sum |v| carried by the outermost shell of the grid.
double boundary_fraction(std::span<const cplx> weighted, std::span<const AxisRule> axes);

/// For each outer point x: sum_{a,b} exp(kappa x conj(y_ab)) g[a * nIm + b],
/// y_ab = re.nodes[a] + i im.nodes[b]. g carries the inner weights already.
std::vector<cplx> kernel_sums_serial(std::span<const cplx> xs, const AxisRule& re, const AxisRule& im,
                                     std::span<const cplx> g, cplx kappa);
std::vector<cplx> kernel_sums_parallel(std::span<const cplx> xs, const AxisRule& re, const AxisRule& im,
                                       std::span<const cplx> g, cplx kappa);

}  // namespace toeplitz::oracle::kernels
