#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "toeplitz/weyl.hpp"

using namespace toeplitz;
using namespace toeplitz::weyl;
using testing::max_abs;

namespace {

CVec one(cplx z) { return CVec::Constant(1, z); }

}  // namespace

TEST_CASE("Q = 0 has symbol 1") {
    testing::Rng rng(51);
    for (int n = 1; n <= 3; ++n) {
        const auto phi0 = testing::random_weight(rng, n);
        const auto s = weyl_symbol(phi0, ComplexQuadraticPolynomial::zero(n));
        CHECK(s.P.coefficient_scale() < 1e-12);
        CHECK(std::abs(s.logC) < 1e-12);
    }
}

TEST_CASE("symbol of the explicit family") {
    testing::Rng rng(52);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = 1 + trial % 2;
        const cplx lambda = testing::random_lambda(rng);
        const CVec c = testing::random_cvec(rng, n), d = testing::random_cvec(rng, n);
        const auto p = example_problem(lambda, c, d);
        const auto s = weyl_symbol(p.phi0, p.Q);
        const cplx k = lambda / (1.0 - lambda);
        CHECK(max_abs(s.P.B() - k * CMat::Identity(n, n)) <= 1e-10);
        CHECK(max_abs(s.P.A()) <= 1e-10);
        CHECK(max_abs(s.P.C()) <= 1e-10);
        CHECK(max_abs(s.P.a() - c.conjugate() / (2.0 * (1.0 - lambda))) <= 1e-10);
        CHECK(max_abs(s.P.b() + d / (2.0 * (1.0 - lambda))) <= 1e-10);
    }
}

TEST_CASE("constant term of Q only moves log C") {
    testing::Rng rng(53);
    const auto phi0 = testing::random_weight(rng, 2);
    const auto Q = testing::random_admissible_Q(rng, phi0);
    const auto s0 = weyl_symbol(phi0, Q);
    const auto s1 = weyl_symbol(phi0, Q.with_constant(Q.e() + cplx{0.7, -0.2}));
    CHECK(std::abs(s1.logC - s0.logC - (s1.P.e() - s0.P.e()) - cplx{0.7, -0.2}) < 1e-12);
    CHECK(max_abs(s1.P.B() - s0.P.B()) < 1e-12);
}

TEST_CASE("weyl_symbol rejects inadmissible Q") {
    const auto p = example_problem(0.3, CVec::Zero(1), CVec::Zero(1));
    CHECK_THROWS_AS(weyl_symbol(p.phi0, p.Q), HypothesisFailed);
}

TEST_CASE("holomorphic extension restricts back to the symbol") {
    testing::Rng rng(54);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = 1 + trial % 3;
        const auto phi0 = testing::random_weight(rng, n);
        const auto Q = testing::random_admissible_Q(rng, phi0);
        const auto s = weyl_symbol(phi0, Q);
        const auto h = holomorphic_extension(s, phi0);
        CHECK(h.restrictionResidual < 1e-10);
        const symplectic::WeightPlane plane(phi0);
        for (int k = 0; k < 5; ++k) {
            const CVec x = testing::random_cvec(rng, n);
            const cplx want = s.log_value(x);
            CHECK(std::abs(h.log_value(plane.point(x)) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        }
        // both routes to symbol boundedness agree
        CHECK(symbol_bounded(s).status == symbol_bounded(h, phi0).status);
    }
}

TEST_CASE("holomorphic extension of |x|^2 on |x|^2/4") {
    const auto phi0 = PshWeight::homogeneous(CMat::Zero(1, 1), 0.25 * CMat::Identity(1, 1));
    CMat b(1, 1);
    b << 1.0;
    SymbolExponent s{ComplexQuadraticPolynomial(CMat::Zero(1, 1), b, CMat::Zero(1, 1), CVec::Zero(1), CVec::Zero(1),
                                                0.0),
                     0.0};
    const auto h = holomorphic_extension(s, phi0);
    // xbar = 2 i xi on the plane, so i F = x xbar = 2 i x xi and F = 2 x xi
    CHECK(std::abs(h.F.theta(0, 1) - 2.0) < 1e-14);
    CHECK(std::abs(h.F.theta(1, 0) - 2.0) < 1e-14);
    CHECK(std::abs(h.F.theta(0, 0)) < 1e-14);
    CHECK(std::abs(h.F.theta(1, 1)) < 1e-14);
}

TEST_CASE("analyze on the explicit family") {
    SUBCASE("contracting gamma is bounded") {
        const auto p = example_problem(-0.5, one(0.3), one({0.1, 0.2}));
        const auto v = analyze(p.phi0, p.Q);
        CHECK(v.conclusion == Conclusion::Bounded);
        CHECK(v.operatorStatus == OperatorStatus::Bounded);
        CHECK(v.exampleFamily);
        REQUIRE(v.psiRouteDiscrepancy);
        CHECK(*v.psiRouteDiscrepancy < 1e-8);
    }
    SUBCASE("expanding gamma is unbounded") {
        const auto p = example_problem(0.2, one(0.0), one(0.0));
        const auto v = analyze(p.phi0, p.Q);
        CHECK(v.conclusion == Conclusion::SymbolUnbounded);
        CHECK(v.operatorStatus == OperatorStatus::Unbounded);
    }
    SUBCASE("Re lambda beyond 1/4") {
        const auto p = example_problem({0.3, 0.1}, one(0.0), one(0.0));
        CHECK(analyze(p.phi0, p.Q).conclusion == Conclusion::HypothesisFailed);
    }
    SUBCASE("unit gamma") {
        const cplx lambda = 0.5 * (1.0 - std::polar(1.0, 0.6));
        const cplx g = weyl::gamma(lambda);
        const CVec d = one({0.4, -0.3});
        const auto good = example_problem(lambda, g * d, d);
        CHECK(analyze(good.phi0, good.Q).conclusion == Conclusion::Bounded);
        const auto bad = example_problem(lambda, g * d + one(0.5), d);
        CHECK(analyze(bad.phi0, bad.Q).conclusion == Conclusion::SymbolUnbounded);
    }
}

TEST_CASE("analyze input validation") {
    const auto inhomogeneous = forms::PshWeight(CMat::Zero(1, 1), CMat::Identity(1, 1), one(1.0), 0.0);
    CHECK_THROWS_AS(analyze(inhomogeneous, ComplexQuadraticPolynomial::zero(1)), InputError);
    const auto flat = PshWeight::homogeneous(CMat::Zero(1, 1), CMat::Zero(1, 1));
    CHECK_THROWS_AS(analyze(flat, ComplexQuadraticPolynomial::zero(1)), InputError);
    const auto p1 = PshWeight::homogeneous(CMat::Zero(1, 1), CMat::Identity(1, 1));
    CHECK_THROWS_AS(analyze(p1, ComplexQuadraticPolynomial::zero(2)), InputError);
}

TEST_CASE("analyze never reports an internal inconsistency on random input") {
    testing::Rng rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = 1 + trial % 3;
        const auto phi0 = testing::random_weight(rng, n);
        const auto Q = testing::random_admissible_Q(rng, phi0);
        const auto v = analyze(phi0, Q);
        CHECK(v.conclusion != Conclusion::InternalInconsistency);
        CHECK(v.conclusion != Conclusion::HypothesisFailed);
        if (v.conclusion == Conclusion::Bounded) {
            REQUIRE(v.weightCertificate);
            CHECK(v.weightCertificate->bounded);
            REQUIRE(v.phi0MinusPhi);
            CHECK(*v.phi0MinusPhi != algebra::Definiteness::Indefinite);
        }
    }
}
