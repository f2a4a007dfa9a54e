#include "toeplitz/quadrature_kernels.hpp"

#include <cmath>
#include <numbers>

#include <omp.h>

#include <Eigen/Eigenvalues>

namespace toeplitz::oracle::kernels {

namespace {

std::size_t grid_size(std::span<const AxisRule> axes) {
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();
    return total;
}

// Evaluates grid point `flat` into `out`; shared by both drivers.
inline cplx weighted_value(const PointFn& f, std::span<const AxisRule> axes, std::size_t flat) {
    double point[8];
    double w = 1.0;
    for (std::size_t k = axes.size(); k-- > 0;) {
        const std::size_t m = axes[k].size();
        const std::size_t idx = flat % m;
        flat /= m;
        point[k] = axes[k].nodes[idx];
        w *= axes[k].weights[idx];
    }
    return w * f(std::span<const double>(point, axes.size()));
}

inline cplx kernel_sum(cplx x, const AxisRule& re, const AxisRule& im, std::span<const cplx> g, cplx kappa,
                       std::vector<cplx>& eu, std::vector<cplx>& ev) {
    const cplx kx = kappa * x;
    for (std::size_t a = 0; a < re.size(); ++a) eu[a] = std::exp(kx * re.nodes[a]);
    for (std::size_t b = 0; b < im.size(); ++b) ev[b] = std::exp(-I * kx * im.nodes[b]);
    cplx total{0.0, 0.0};
    const std::size_t nb = im.size();
    for (std::size_t a = 0; a < re.size(); ++a) {
        cplx row{0.0, 0.0};
        const cplx* ga = g.data() + a * nb;
        for (std::size_t b = 0; b < nb; ++b) row += ev[b] * ga[b];
        total += eu[a] * row;
    }
    return total;
}

void check_axes(std::span<const AxisRule> axes) {
    if (axes.empty() || axes.size() > 8) throw InputError("quadrature: between 1 and 8 axes supported");
}

}  // namespace

AxisRule uniform_rule(double center, double radius, int points) {
    if (points < 1 || !(radius > 0)) throw InputError("uniform_rule: invalid grid");
    AxisRule r;
    const double h = 2.0 * radius / points;
    for (int k = 0; k < points; ++k) {
        r.nodes.push_back(center - radius + (k + 0.5) * h);
        r.weights.push_back(h);
    }
    return r;
}

AxisRule gauss_hermite_rule(double center, double decay, int points) {
    if (points < 1 || !(decay > 0)) throw InputError("gauss_hermite_rule: invalid grid");
    RMat jacobi = RMat::Zero(points, points);
    for (int k = 1; k < points; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<RMat> es(jacobi);
    const double scale = 1.0 / std::sqrt(decay);
    AxisRule r;
    for (int k = 0; k < points; ++k) {
        const double t = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        const double logw = std::log(std::sqrt(std::numbers::pi) * v0 * v0) + t * t;
        r.nodes.push_back(center + t * scale);
        r.weights.push_back(std::exp(logw) * scale);
    }
    return r;
}

std::vector<cplx> evaluate_serial(const PointFn& f, std::span<const AxisRule> axes) {
    check_axes(axes);
    const std::size_t total = grid_size(axes);
    std::vector<cplx> out(total);
    for (std::size_t i = 0; i < total; ++i) out[i] = weighted_value(f, axes, i);
    return out;
}

std::vector<cplx> evaluate_parallel(const PointFn& f, std::span<const AxisRule> axes) {
    check_axes(axes);
    const std::size_t total = grid_size(axes);
    std::vector<cplx> out(total);
    const auto n = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = weighted_value(f, axes, static_cast<std::size_t>(i));
    return out;
}

template <typename T>
static T pairwise(const T* v, std::size_t n) {
    if (n <= 16) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise(v, half) + pairwise(v + half, n - half);
}

cplx pairwise_sum(std::span<const cplx> v) { return pairwise(v.data(), v.size()); }

double pairwise_sum(std::span<const double> v) { return pairwise(v.data(), v.size()); }

double boundary_fraction(std::span<const cplx> weighted, std::span<const AxisRule> axes) {
    check_axes(axes);
    std::vector<double> all(weighted.size()), edge(weighted.size(), 0.0);
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        all[i] = std::abs(weighted[i]);
        std::size_t flat = i;
        bool onEdge = false;
        for (std::size_t k = axes.size(); k-- > 0;) {
            const std::size_t m = axes[k].size();
            const std::size_t idx = flat % m;
            flat /= m;
            onEdge = onEdge || idx == 0 || idx + 1 == m;
        }
        if (onEdge) edge[i] = all[i];
    }
    const double total = pairwise_sum(std::span<const double>(all));
    return total > 0 ? pairwise_sum(std::span<const double>(edge)) / total : 0.0;
}

std::vector<cplx> kernel_sums_serial(std::span<const cplx> xs, const AxisRule& re, const AxisRule& im,
                                     std::span<const cplx> g, cplx kappa) {
    if (g.size() != re.size() * im.size()) throw InputError("kernel_sums: grid size mismatch");
    std::vector<cplx> out(xs.size());
    std::vector<cplx> eu(re.size()), ev(im.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = kernel_sum(xs[i], re, im, g, kappa, eu, ev);
    return out;
}

std::vector<cplx> kernel_sums_parallel(std::span<const cplx> xs, const AxisRule& re, const AxisRule& im,
                                       std::span<const cplx> g, cplx kappa) {
    if (g.size() != re.size() * im.size()) throw InputError("kernel_sums: grid size mismatch");
    std::vector<cplx> out(xs.size());
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel
    {
        std::vector<cplx> eu(re.size()), ev(im.size());
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            out[k] = kernel_sum(xs[k], re, im, g, kappa, eu, ev);
        }
    }
    return out;
}

}  // namespace toeplitz::oracle::kernels
