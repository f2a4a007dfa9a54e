#include <cmath>
#include <numbers>

#include "doctest.h"
#include "toeplitz/quadrature_kernels.hpp"

using namespace toeplitz;
using namespace toeplitz::oracle::kernels;

TEST_CASE("uniform rule") {
    const auto r = uniform_rule(1.0, 2.0, 4);
    REQUIRE(r.size() == 4);
    CHECK(r.nodes.front() == doctest::Approx(-0.5));
    CHECK(r.nodes.back() == doctest::Approx(2.5));
    double total = 0.0;
    for (double w : r.weights) total += w;
    CHECK(total == doctest::Approx(4.0));
}

TEST_CASE("Gauss-Hermite is exact on Gaussian times polynomial") {
    const double decay = 0.7, center = -0.4;
    const auto r = gauss_hermite_rule(center, decay, 12);
    REQUIRE(r.size() == 12);
    // int (t - c)^2 exp(-a (t - c)^2) dt = sqrt(pi) / (2 a^{3/2})
    double m0 = 0.0, m2 = 0.0, m5 = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double t = r.nodes[i] - center;
        const double g = std::exp(-decay * t * t);
        m0 += r.weights[i] * g;
        m2 += r.weights[i] * g * t * t;
        m5 += r.weights[i] * g * std::pow(t, 5);
    }
    CHECK(std::abs(m0 - std::sqrt(std::numbers::pi / decay)) < 1e-13);
    CHECK(std::abs(m2 - std::sqrt(std::numbers::pi) / (2.0 * std::pow(decay, 1.5))) < 1e-13);
    CHECK(std::abs(m5) < 1e-12);
}

TEST_CASE("serial and parallel evaluation agree bit for bit") {
    const std::vector<AxisRule> axes = {uniform_rule(0.0, 3.0, 17), uniform_rule(0.5, 2.0, 9),
                                        gauss_hermite_rule(0.0, 1.0, 7)};
    const PointFn f = [](std::span<const double> t) {
        return std::exp(cplx{-t[0] * t[0] - 0.5 * t[1] * t[1] - t[2] * t[2], t[0] * t[1] - t[2]});
    };
    const auto a = evaluate_serial(f, axes);
    const auto b = evaluate_parallel(f, axes);
    REQUIRE(a.size() == 17u * 9u * 7u);
    CHECK(a == b);
    CHECK(pairwise_sum(std::span<const cplx>(a)) == pairwise_sum(std::span<const cplx>(b)));
}

TEST_CASE("tensor order puts the last axis fastest") {
    const std::vector<AxisRule> axes = {AxisRule{{1.0, 2.0}, {1.0, 1.0}}, AxisRule{{10.0, 20.0, 30.0}, {1.0, 1.0, 1.0}}};
    const auto v = evaluate_serial([](std::span<const double> t) { return cplx{t[0] + t[1], 0.0}; }, axes);
    REQUIRE(v.size() == 6);
    CHECK(v[0].real() == 11.0);
    CHECK(v[1].real() == 21.0);
    CHECK(v[3].real() == 12.0);
}

TEST_CASE("pairwise sum") {
    std::vector<double> v(1000, 0.1);
    CHECK(std::abs(pairwise_sum(std::span<const double>(v)) - 100.0) < 1e-12);
    CHECK(pairwise_sum(std::span<const double>()) == 0.0);
}

TEST_CASE("boundary fraction") {
    const std::vector<AxisRule> axes = {uniform_rule(0.0, 1.0, 5), uniform_rule(0.0, 1.0, 5)};
    std::vector<cplx> inner(25, 0.0), flat(25, 1.0);
    inner[12] = 1.0;
    CHECK(boundary_fraction(inner, axes) == 0.0);
    CHECK(boundary_fraction(flat, axes) == doctest::Approx(16.0 / 25.0));
}

TEST_CASE("kernel sums") {
    const auto re = uniform_rule(0.0, 2.0, 6), im = uniform_rule(0.3, 1.0, 5);
    std::vector<cplx> g(re.size() * im.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = cplx{std::cos(0.3 * k), std::sin(0.7 * k)};
    const std::vector<cplx> xs = {0.0, {1.0, -0.5}, {-0.2, 2.0}};
    const cplx kappa{0.5, 0.0};
    const auto a = kernel_sums_serial(xs, re, im, g, kappa);
    const auto b = kernel_sums_parallel(xs, re, im, g, kappa);
    CHECK(a == b);
    // direct evaluation
    cplx direct{0.0, 0.0};
    for (std::size_t i = 0; i < re.size(); ++i)
        for (std::size_t j = 0; j < im.size(); ++j)
            direct += std::exp(kappa * xs[1] * std::conj(cplx{re.nodes[i], im.nodes[j]})) * g[i * im.size() + j];
    CHECK(std::abs(a[1] - direct) < 1e-12 * std::abs(direct));
}
