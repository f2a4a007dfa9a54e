#include "toeplitz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "toeplitz/weyl.hpp"

namespace toeplitz::oracle {

using kernels::AxisRule;

void QuadratureGrid::validate() const {
    if (pointsPerAxis < 8) throw InputError("quadrature grid needs at least 8 points per axis");
    if (!(radius >= 0.0) || !std::isfinite(radius)) throw InputError("quadrature grid radius must be positive");
}

double radius_for_decay(double decayRate) {
    if (!(decayRate > 0.0)) throw InputError("decay rate must be positive");
    return std::sqrt(40.0 / decayRate);
}

namespace {

std::vector<cplx> evaluate(const kernels::PointFn& f, std::span<const AxisRule> axes, Execution exec) {
    return exec == Execution::Serial ? kernels::evaluate_serial(f, axes) : kernels::evaluate_parallel(f, axes);
}

std::vector<cplx> kernel_sums(std::span<const cplx> xs, const AxisRule& re, const AxisRule& im,
                              std::span<const cplx> g, cplx kappa, Execution exec) {
    return exec == Execution::Serial ? kernels::kernel_sums_serial(xs, re, im, g, kappa)
                                     : kernels::kernel_sums_parallel(xs, re, im, g, kappa);
}

std::vector<AxisRule> axes_for(const Integrand& f, const QuadratureGrid& g, int points) {
    std::vector<AxisRule> axes;
    for (int k = 0; k < f.dims; ++k) {
        const double c = f.center.size() ? f.center(k) : 0.0;
        axes.push_back(g.scheme == Scheme::Uniform ? kernels::uniform_rule(c, g.radius, points)
                                                   : kernels::gauss_hermite_rule(c, f.decayRate, points));
    }
    return axes;
}

constexpr double kHalf = 0.5;

}  // namespace

ProbeResult quad_integrate(const Integrand& f, const QuadratureGrid& grid, Execution exec) {
    grid.validate();
    if (f.dims < 1 || f.dims > 4) throw InputError("quad_integrate: real dimension must be 1..4");
    if (f.center.size() != 0 && f.center.size() != f.dims) throw InputError("quad_integrate: center has wrong size");
    if (!f.fn) throw InputError("quad_integrate: empty integrand");

    ProbeResult out;
    out.gridUsed = grid;
    if (grid.radius == 0.0) out.gridUsed.radius = radius_for_decay(f.decayRate);

    const auto coarse = axes_for(f, out.gridUsed, grid.pointsPerAxis);
    const auto fine = axes_for(f, out.gridUsed, 2 * grid.pointsPerAxis);
    const auto vc = evaluate(f.fn, coarse, exec);
    const auto vf = evaluate(f.fn, fine, exec);

    const double edge = kernels::boundary_fraction(vf, fine);
    if (edge > kBoundaryMassLimit)
        throw TruncationError("quad_integrate: integrand not negligible at the truncation boundary",
                              1.5 * out.gridUsed.radius);

    const cplx ic = kernels::pairwise_sum(std::span<const cplx>(vc));
    out.value = kernels::pairwise_sum(std::span<const cplx>(vf));
    out.errorEstimate = std::abs(out.value - ic);
    return out;
}

Integrand gaussian_integrand(const forms::ComplexQuadraticPolynomial& p) {
    const auto n = p.n();
    if (n < 1 || n > 2) throw InputError("gaussian_integrand: n must be 1 or 2");
    const auto re = forms::to_real_form(p);
    Eigen::LLT<RMat> llt(-re.M());
    if (llt.info() != Eigen::Success) throw DivergentIntegral("gaussian_integrand: Re p is not strictly concave");
    const RVec peak = llt.solve(re.b());
    // s = peak + T t with T^T (-M) T = I, T = L^{-T}
    const RMat lower = llt.matrixL();
    const RMat t = lower.transpose().triangularView<Eigen::Upper>().solve(RMat::Identity(2 * n, 2 * n));
    const double jac = std::abs(t.determinant());

    Integrand f;
    f.dims = static_cast<int>(2 * n);
    f.decayRate = kHalf;
    f.fn = [p, peak, t, jac](std::span<const double> pt) {
        const Eigen::Map<const RVec> tv(pt.data(), static_cast<Eigen::Index>(pt.size()));
        return jac * std::exp(p(forms::to_complex(peak + t * tv)));
    };
    return f;
}

ProbeResult symbol_by_quadrature(const forms::PshWeight& phi0, const forms::ComplexQuadraticPolynomial& Q,
                                 const CVec& x, const QuadratureGrid& grid, Execution exec) {
    const auto n = phi0.n();
    if (Q.n() != n || x.size() != n) throw InputError("symbol_by_quadrature: dimension mismatch");
    const CMat h = forms::hermitian_part(phi0);
    // -4 (xbar - ybar)^T H (x - y) as a polynomial in y
    const cplx cst = -4.0 * (x.adjoint() * h * x)(0);
    const forms::ComplexQuadraticPolynomial kernel(CMat::Zero(n, n), -4.0 * h, CMat::Zero(n, n),
                                                   4.0 * h.transpose() * x.conjugate(), 4.0 * h * x, cst);
    const auto num = quad_integrate(gaussian_integrand(kernel + Q), grid, exec);
    const auto den = quad_integrate(gaussian_integrand(kernel), grid, exec);
    ProbeResult out;
    out.value = num.value / den.value;
    out.errorEstimate =
        std::abs(out.value) * (num.errorEstimate / std::abs(num.value) + den.errorEstimate / std::abs(den.value));
    out.gridUsed = num.gridUsed;
    return out;
}

// ---------------------------------------------------------------------------

AxisRule PlaneGrid::re() const { return kernels::uniform_rule(center.real(), radius, pointsPerAxis); }

AxisRule PlaneGrid::im() const { return kernels::uniform_rule(center.imag(), radius, pointsPerAxis); }

std::vector<cplx> PlaneGrid::nodes() const {
    const auto r = re();
    const auto i = im();
    std::vector<cplx> out;
    out.reserve(r.size() * i.size());
    for (double u : r.nodes)
        for (double v : i.nodes) out.emplace_back(u, v);
    return out;
}

namespace {

void check_plane_grid(const PlaneGrid& g) {
    QuadratureGrid{Scheme::Uniform, g.radius, g.pointsPerAxis}.validate();
    if (!(g.radius > 0.0)) throw InputError("plane grid radius must be positive");
}

// w_y f(y) exp(-|y|^2/2) in slot order a * nIm + b.
std::vector<cplx> weighted_inner(const Function1& f, const AxisRule& re, const AxisRule& im, Execution exec) {
    const AxisRule axes[2] = {re, im};
    const kernels::PointFn fn = [&f](std::span<const double> t) {
        const cplx y{t[0], t[1]};
        return f(y) * std::exp(-0.5 * std::norm(y));
    };
    return evaluate(fn, axes, exec);
}

void check_edge(std::span<const cplx> weighted, const AxisRule& re, const AxisRule& im, double radius,
                const char* what) {
    const AxisRule axes[2] = {re, im};
    if (kernels::boundary_fraction(weighted, axes) > kBoundaryMassLimit) throw TruncationError(what, 1.5 * radius);
}

// |exp(x ybar / 2)| folded into the inner values, to test truncation where the
// outer integrand peaks.
std::vector<cplx> shifted_magnitudes(std::span<const cplx> g, const AxisRule& re, const AxisRule& im, cplx x) {
    std::vector<cplx> out(g.size());
    for (std::size_t a = 0; a < re.size(); ++a)
        for (std::size_t b = 0; b < im.size(); ++b) {
            const cplx y{re.nodes[a], im.nodes[b]};
            const std::size_t k = a * im.size() + b;
            out[k] = std::abs(g[k]) * std::exp(0.5 * (x * std::conj(y)).real());
        }
    return out;
}

}  // namespace

double projection_constant(const PlaneGrid& grid) {
    check_plane_grid(grid);
    const auto r = grid.re();
    const auto i = grid.im();
    const auto g = weighted_inner([](cplx) { return cplx{1.0, 0.0}; }, r, i, Execution::Serial);
    return 1.0 / kernels::pairwise_sum(std::span<const cplx>(g)).real();
}

std::vector<cplx> projection_apply(const Function1& u, std::span<const cplx> xs, const PlaneGrid& grid,
                                   Execution exec) {
    check_plane_grid(grid);
    const auto r = grid.re();
    const auto i = grid.im();
    const auto g = weighted_inner(u, r, i, exec);
    check_edge(g, r, i, grid.radius, "projection_apply: integrand not negligible at the grid edge");
    const double a = projection_constant(grid);
    auto out = kernel_sums(xs, r, i, g, kHalf, exec);
    for (auto& v : out) v *= a;
    return out;
}

PlaneGrid default_probe_grid(cplx lambda, cplx c, cplx d, cplx w, int pointsPerAxis) {
    const double alpha = 0.5 - lambda.real();
    if (!(lambda.real() < 0.25)) throw HypothesisFailed("probe grid: Re lambda < 1/4 fails");
    const cplx g = weyl::gamma(lambda);
    // outer integrand |Top k_w|^2 e^{-|x|^2/2} peaks at conj(gamma)(w + c) with rate 1/2
    const cplx outer = std::conj(g) * (w + c);
    const double ro = radius_for_decay(0.5);
    // inner integrand for a given x peaks at (w + c + x - d) / (4 alpha) with rate alpha
    const cplx inner = (w + c + outer - d) / (4.0 * alpha);
    const double ri = radius_for_decay(alpha) + ro / (4.0 * alpha);
    // the origin box keeps the normalization integral of projection_constant inside
    const double lo_re = std::min({outer.real() - ro, inner.real() - ri, -ro});
    const double hi_re = std::max({outer.real() + ro, inner.real() + ri, ro});
    const double lo_im = std::min({outer.imag() - ro, inner.imag() - ri, -ro});
    const double hi_im = std::max({outer.imag() + ro, inner.imag() + ri, ro});
    PlaneGrid grid;
    grid.center = {0.5 * (lo_re + hi_re), 0.5 * (lo_im + hi_im)};
    grid.radius = 0.5 * std::max(hi_re - lo_re, hi_im - lo_im);
    grid.pointsPerAxis = pointsPerAxis;
    return grid;
}

namespace {

// Index range of the nodes within [lo, hi].
std::pair<std::size_t, std::size_t> node_range(const AxisRule& r, double lo, double hi) {
    std::size_t a = 0, b = r.size();
    while (a < b && r.nodes[a] < lo) ++a;
    while (b > a && r.nodes[b - 1] > hi) --b;
    return {a, b};
}

AxisRule sub_rule(const AxisRule& r, std::pair<std::size_t, std::size_t> range) {
    AxisRule out;
    out.nodes.assign(r.nodes.begin() + static_cast<std::ptrdiff_t>(range.first),
                     r.nodes.begin() + static_cast<std::ptrdiff_t>(range.second));
    out.weights.assign(r.weights.begin() + static_cast<std::ptrdiff_t>(range.first),
                       r.weights.begin() + static_cast<std::ptrdiff_t>(range.second));
    return out;
}

double toeplitz_norm_once(cplx lambda, cplx c, cplx d, cplx w, const PlaneGrid& grid, bool checkEdges,
                          Execution exec) {
    const auto r = grid.re();
    const auto i = grid.im();
    const cplx cw = std::conj(w);
    const double logk = -0.5 * std::log(2.0 * std::numbers::pi) - 0.25 * std::norm(w);
    // e^{Q(y)} k_w(y), Q = lambda |y|^2 + cbar y / 2 - d ybar / 2
    const Function1 f = [=](cplx y) {
        return std::exp(lambda * std::norm(y) + 0.5 * std::conj(c) * y - 0.5 * d * std::conj(y) + 0.5 * cw * y + logk);
    };
    const auto g = weighted_inner(f, r, i, exec);
    const double a = projection_constant(grid);

    // The outer integral runs over the box around its peak only: far from it the
    // inner integrand slides off the grid (its peak moves like x / (4 alpha)).
    const cplx peak = std::conj(weyl::gamma(lambda)) * (w + c);
    const double ro = radius_for_decay(0.5);
    const auto ro_re = sub_rule(r, node_range(r, peak.real() - ro, peak.real() + ro));
    const auto ro_im = sub_rule(i, node_range(i, peak.imag() - ro, peak.imag() + ro));
    if (ro_re.size() < 3 || ro_im.size() < 3) throw InputError("oracle_toeplitz_norm: grid misses the outer peak");
    std::vector<cplx> xs;
    xs.reserve(ro_re.size() * ro_im.size());
    for (double u : ro_re.nodes)
        for (double v : ro_im.nodes) xs.emplace_back(u, v);
    const auto s = kernel_sums(xs, r, i, g, kHalf, exec);

    std::vector<cplx> outer(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const std::size_t ia = k / ro_im.size();
        const std::size_t ib = k % ro_im.size();
        outer[k] = ro_re.weights[ia] * ro_im.weights[ib] * std::norm(a * s[k]) * std::exp(-0.5 * std::norm(xs[k]));
    }
    if (checkEdges) {
        check_edge(outer, ro_re, ro_im, grid.radius,
                   "oracle_toeplitz_norm: outer integrand not negligible at the grid edge");
        check_edge(shifted_magnitudes(g, r, i, peak), r, i, grid.radius,
                   "oracle_toeplitz_norm: inner integrand not negligible at the grid edge");
    }
    return std::sqrt(kernels::pairwise_sum(std::span<const cplx>(outer)).real());
}

}  // namespace

ProbeResult oracle_toeplitz_norm(cplx lambda, cplx c, cplx d, cplx w, const PlaneGrid& grid, Execution exec) {
    if (!(lambda.real() < 0.25)) throw HypothesisFailed("oracle_toeplitz_norm: Re lambda < 1/4 fails");
    check_plane_grid(grid);
    PlaneGrid fine = grid;
    fine.pointsPerAxis = 2 * grid.pointsPerAxis;
    const double coarseNorm = toeplitz_norm_once(lambda, c, d, w, grid, false, exec);
    ProbeResult out;
    out.value = toeplitz_norm_once(lambda, c, d, w, fine, true, exec);
    out.errorEstimate = std::abs(out.value.real() - coarseNorm);
    out.gridUsed = {Scheme::Uniform, grid.radius, grid.pointsPerAxis};
    return out;
}

ProbeComparison compare_probe(cplx lambda, cplx c, cplx d, std::span<const cplx> ws, int pointsPerAxis,
                              Execution exec) {
    if (ws.empty()) throw InputError("compare_probe: no probe points");
    ProbeComparison cmp;
    const cplx g = weyl::gamma(lambda);
    for (const cplx w : ws) {
        const auto grid = default_probe_grid(lambda, c, d, w, pointsPerAxis);
        const auto res = oracle_toeplitz_norm(lambda, c, d, w, grid, exec);
        ProbeRow row;
        row.w = w;
        row.closedLogNorm = weyl::kernel_log_norm(g, CVec::Constant(1, c), CVec::Constant(1, d), CVec::Constant(1, w));
        row.oracleLogNorm = std::log(res.value.real());
        row.oracleError = res.errorEstimate / res.value.real();
        cmp.rows.push_back(row);
    }
    cmp.fittedLogConstant = cmp.rows.front().oracleLogNorm - cmp.rows.front().closedLogNorm;
    for (auto& row : cmp.rows) {
        row.residual = std::abs(std::expm1(row.oracleLogNorm - row.closedLogNorm - cmp.fittedLogConstant));
        cmp.maxResidual = std::max(cmp.maxResidual, row.residual);
    }
    return cmp;
}

namespace {

// Quadratic coefficient of the least-squares fit y ~ s r^2 + t r + u.
double quadratic_coefficient(std::span<const double> r, std::span<const double> y) {
    const auto m = static_cast<Eigen::Index>(r.size());
    RMat design(m, 3);
    RVec rhs(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const double rk = r[static_cast<std::size_t>(k)];
        design.row(k) << rk * rk, rk, 1.0;
        rhs(k) = y[static_cast<std::size_t>(k)];
    }
    return design.colPivHouseholderQr().solve(rhs)(0);
}

void require_fit_points(std::span<const double> radii, const char* what) {
    if (radii.size() < 3) throw InputError(std::string(what) + ": at least three radii are needed");
    for (std::size_t k = 1; k < radii.size(); ++k)
        if (!(radii[k] > radii[k - 1])) throw InputError(std::string(what) + ": radii must increase");
}

}  // namespace

ScanResult unboundedness_scan(cplx lambda, const CVec& c, const CVec& d, const CVec& direction,
                              std::span<const double> radii, const ScanOptions& opts) {
    if (c.size() != d.size() || direction.size() != c.size()) throw InputError("unboundedness_scan: dimension mismatch");
    if (direction.norm() == 0.0) throw InputError("unboundedness_scan: zero direction");
    require_fit_points(radii, "unboundedness_scan");
    const CVec dir = direction.normalized();
    const cplx g = weyl::gamma(lambda);

    ScanResult out;
    out.radii.assign(radii.begin(), radii.end());
    out.hypothesisHolds = lambda.real() < 0.25;
    out.expectedSlope = 0.25 * (std::norm(g) - 1.0);
    for (double r : radii) out.logNorms.push_back(weyl::kernel_log_norm(g, c, d, r * dir));
    out.slope = quadratic_coefficient(out.radii, out.logNorms);
    out.growing = out.slope > opts.tol;

    if (!opts.oracleRadii.empty() && out.hypothesisHolds && c.size() == 1) {
        require_fit_points(opts.oracleRadii, "unboundedness_scan oracle");
        for (double r : opts.oracleRadii) {
            const cplx w = r * dir(0);
            const auto grid = default_probe_grid(lambda, c(0), d(0), w, opts.oraclePoints);
            out.oracleLogNorms.push_back(std::log(oracle_toeplitz_norm(lambda, c(0), d(0), w, grid).value.real()));
        }
        out.oracleSlope = quadratic_coefficient(opts.oracleRadii, out.oracleLogNorms);
    }
    return out;
}

}  // namespace toeplitz::oracle
