#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "toeplitz/oracle.hpp"

using namespace toeplitz;
using namespace toeplitz::oracle;

namespace {

Integrand gaussian2(double decay, RVec center = RVec::Zero(2)) {
    Integrand f;
    f.dims = 2;
    f.decayRate = decay;
    f.center = center;
    f.fn = [decay, center](std::span<const double> t) {
        const double u = t[0] - center(0), v = t[1] - center(1);
        return cplx{std::exp(-decay * (u * u + v * v)), 0.0};
    };
    return f;
}

}  // namespace

TEST_CASE("integral of exp(-|v|^2) over C is pi") {
    for (auto scheme : {Scheme::Uniform, Scheme::GaussHermite}) {
        const auto r = quad_integrate(gaussian2(1.0), QuadratureGrid{scheme, 0.0, 24});
        CHECK(std::abs(r.value - std::numbers::pi) < 1e-12);
        CHECK(r.errorEstimate < 1e-10);
        CHECK(r.gridUsed.pointsPerAxis == 24);
        CHECK(r.gridUsed.radius > 0.0);
    }
}

TEST_CASE("grid validation and truncation") {
    CHECK_THROWS_AS(quad_integrate(gaussian2(1.0), QuadratureGrid{Scheme::Uniform, 0.0, 4}), InputError);
    CHECK_THROWS_AS(quad_integrate(gaussian2(1.0), QuadratureGrid{Scheme::Uniform, -1.0, 16}), InputError);
    CHECK_THROWS_AS(radius_for_decay(0.0), InputError);
    try {
        quad_integrate(gaussian2(1.0), QuadratureGrid{Scheme::Uniform, 2.0, 16});
        FAIL("expected truncation");
    } catch (const TruncationError& e) {
        CHECK(e.suggestedRadius == doctest::Approx(3.0));
    }
    Integrand bad = gaussian2(1.0);
    bad.dims = 5;
    CHECK_THROWS_AS(quad_integrate(bad, QuadratureGrid{}), InputError);
}

TEST_CASE("serial and parallel quadrature agree exactly") {
    RVec c(2);
    c << 0.5, -1.0;
    const auto a = quad_integrate(gaussian2(0.8, c), QuadratureGrid{}, Execution::Serial);
    const auto b = quad_integrate(gaussian2(0.8, c), QuadratureGrid{}, Execution::Parallel);
    CHECK(a.value == b.value);
    CHECK(a.errorEstimate == b.errorEstimate);
}

TEST_CASE("coherent states are normalized") {
    for (const cplx w : {cplx{0, 0}, cplx{1, 0}, cplx{2, 1}, cplx{0, 3}}) {
        const auto k = weyl::coherent_state(CVec::Constant(1, w));
        Integrand f;
        f.dims = 2;
        f.decayRate = 0.5;
        f.center = forms::to_real(CVec::Constant(1, w));
        f.fn = [k](std::span<const double> t) {
            const cplx x{t[0], t[1]};
            return cplx{std::norm(k(CVec::Constant(1, x))) * std::exp(-0.5 * std::norm(x)), 0.0};
        };
        CHECK(std::abs(quad_integrate(f, QuadratureGrid{}).value - 1.0) < 1e-6);
    }
}

TEST_CASE("gaussian integrand") {
    // int exp(-|y|^2 + a y) = pi for every a (Gaussian mean of a holomorphic function)
    const forms::ComplexQuadraticPolynomial p(CMat::Zero(1, 1), -CMat::Identity(1, 1), CMat::Zero(1, 1),
                                              CVec::Constant(1, 0.7), CVec::Zero(1), 0.0);
    const auto f = gaussian_integrand(p);
    CHECK(std::abs(quad_integrate(f, QuadratureGrid{Scheme::GaussHermite, 0.0, 16}).value - std::numbers::pi) < 1e-12);

    const forms::ComplexQuadraticPolynomial up(CMat::Zero(1, 1), CMat::Identity(1, 1), CMat::Zero(1, 1), CVec::Zero(1),
                                               CVec::Zero(1), 0.0);
    CHECK_THROWS_AS(gaussian_integrand(up), DivergentIntegral);
    CHECK_THROWS_AS(gaussian_integrand(forms::ComplexQuadraticPolynomial::zero(3)), InputError);
}

TEST_CASE("symbol by quadrature matches the closed form") {
    testing::Rng rng(71);
    const auto phi0 = testing::random_weight(rng, 1);
    const auto Q = testing::random_admissible_Q(rng, phi0);
    const auto s = weyl::weyl_symbol(phi0, Q);
    for (int k = 0; k < 3; ++k) {
        const CVec x = testing::random_cvec(rng, 1);
        const cplx want = std::exp(s.log_value(x));
        const auto got = symbol_by_quadrature(phi0, Q, x, QuadratureGrid{Scheme::Uniform, 0.0, 32});
        CHECK(std::abs(got.value - want) <= 1e-6 * std::abs(want));
    }
}

TEST_CASE("projection reproduces holomorphic functions") {
    const PlaneGrid grid{0.0, 9.0, 96};
    const std::vector<cplx> xs = {0.0, {0.5, -0.3}, {-1.0, 1.2}};
    for (const cplx w : {cplx{0, 0}, cplx{1.0, 0.5}}) {
        const auto k = weyl::coherent_state(CVec::Constant(1, w));
        const Function1 u = [k](cplx x) { return k(CVec::Constant(1, x)); };
        const auto pu = projection_apply(u, xs, grid);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const cplx want = u(xs[i]);
            CHECK(std::abs(pu[i] - want) <= 1e-5 * std::abs(want));
        }
    }
    const auto zero = projection_apply([](cplx) { return cplx{0.0, 0.0}; }, xs, grid);
    for (const cplx z : zero) CHECK(z == cplx{0.0, 0.0});

    const auto ser = projection_apply([](cplx x) { return std::exp(0.3 * x); }, xs, grid, Execution::Serial);
    const auto par = projection_apply([](cplx x) { return std::exp(0.3 * x); }, xs, grid, Execution::Parallel);
    CHECK(ser == par);

    CHECK_THROWS_AS(projection_apply([](cplx x) { return std::exp(0.3 * x * x); }, xs, PlaneGrid{0.0, 3.0, 32}),
                    TruncationError);
}

TEST_CASE("projection constant") {
    // sum exp(-|y|^2/2) w -> 2 pi
    CHECK(std::abs(projection_constant(PlaneGrid{0.0, 9.0, 64}) * 2.0 * std::numbers::pi - 1.0) < 1e-10);
}

TEST_CASE("probe at lambda = -1/2 matches the closed form") {
    const std::vector<cplx> ws = {0.0, 1.0, {0.5, -1.0}};
    const auto cmp = compare_probe(-0.5, {0.3, 0.1}, {-0.2, 0.0}, ws, 48);
    REQUIRE(cmp.rows.size() == 3);
    CHECK(cmp.rows[0].residual == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cmp.maxResidual < 1e-3);
    for (const auto& r : cmp.rows) CHECK(r.oracleError < 1e-6);
    CHECK_THROWS_AS(compare_probe(0.3, 0.0, 0.0, ws, 48), HypothesisFailed);
    CHECK_THROWS_AS(compare_probe(-0.5, 0.0, 0.0, std::vector<cplx>{}, 48), InputError);
}

TEST_CASE("unboundedness scan") {
    const CVec z = CVec::Zero(1), dir = CVec::Ones(1);
    const std::vector<double> radii = {1.0, 2.0, 3.0, 4.0};
    const auto grow = unboundedness_scan(1.0 / 6.0, z, z, dir, radii);
    CHECK(grow.slope == doctest::Approx(0.3125).epsilon(1e-9));
    CHECK(grow.expectedSlope == doctest::Approx(0.3125));
    CHECK(grow.growing);
    CHECK(grow.hypothesisHolds);

    const auto beyond = unboundedness_scan(0.25, CVec::Constant(1, 0.5), z, dir, radii);
    CHECK_FALSE(beyond.hypothesisHolds);
    CHECK(beyond.slope == doctest::Approx(0.75).epsilon(1e-9));
    CHECK_FALSE(beyond.oracleSlope.has_value());

    const auto shrink = unboundedness_scan(-0.5, CVec::Constant(1, 1.0), CVec::Constant(1, 0.5), dir, radii);
    CHECK(shrink.slope == doctest::Approx(-3.0 / 16.0).epsilon(1e-9));
    CHECK_FALSE(shrink.growing);

    CHECK_THROWS_AS(unboundedness_scan(0.0, z, z, dir, std::vector<double>{1.0, 2.0}), InputError);
    CHECK_THROWS_AS(unboundedness_scan(0.0, z, z, dir, std::vector<double>{1.0, 3.0, 2.0}), InputError);
    CHECK_THROWS_AS(unboundedness_scan(0.0, z, z, z, radii), InputError);
}
