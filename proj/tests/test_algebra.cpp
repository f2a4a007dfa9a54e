#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "toeplitz/algebra.hpp"
#include "toeplitz/oracle.hpp"

using namespace toeplitz;
using namespace toeplitz::algebra;

TEST_CASE("psd_classify on small matrices") {
    CHECK(psd_classify(RMat::Identity(3, 3)) == Definiteness::PosDef);
    CHECK(psd_classify(RMat::Zero(2, 2)) == Definiteness::Zero);
    RMat d = RMat::Zero(2, 2);
    d.diagonal() << 1.0, -1.0;
    CHECK(psd_classify(d) == Definiteness::Indefinite);
    d.diagonal() << 1.0, 0.0;
    CHECK(psd_classify(d) == Definiteness::PosSemiDef);
    d.diagonal() << -2.0, 1e-14;
    CHECK(psd_classify(d) == Definiteness::NegSemiDef);
}

TEST_CASE("psd_classify rejects non-symmetric input") {
    RMat m(2, 2);
    m << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(psd_classify(m), InputError);
    CHECK_THROWS_AS(psd_classify(RMat::Zero(2, 3)), InputError);
}

TEST_CASE("psd_classify of -M mirrors M") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto dim = 1 + trial % 5;
        RMat m = testing::random_real_symmetric(rng, dim);
        if (trial % 3 == 0) m = testing::random_psd(rng, dim, trial % dim);
        CHECK(psd_classify(-m) == mirror(psd_classify(m)));
    }
}

TEST_CASE("bounded_above basic cases") {
    const RVec zero2 = RVec::Zero(2);
    CHECK(bounded_above(RealQuadPoly(-RMat::Identity(2, 2), zero2, 0.0)).bounded);

    const auto lin = bounded_above(RealQuadPoly(RMat::Zero(2, 2), RVec::Unit(2, 0), 0.0));
    CHECK_FALSE(lin.bounded);
    REQUIRE(lin.witness);
    CHECK(std::abs(std::abs((*lin.witness)(0)) - 1.0) < 1e-12);
    CHECK(std::abs((*lin.witness)(1)) < 1e-12);

    RMat m = RMat::Zero(2, 2);
    m(0, 0) = -1.0;
    CHECK_FALSE(bounded_above(RealQuadPoly(m, RVec::Unit(2, 1), 0.0)).bounded);
    CHECK(bounded_above(RealQuadPoly(m, RVec::Unit(2, 0), 0.0)).bounded);
}

TEST_CASE("bounded_above witnesses grow") {
    testing::Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto dim = 1 + trial % 4;
        const RealQuadPoly p(testing::random_real_symmetric(rng, dim), RVec::Random(dim), 0.3);
        const auto r = bounded_above(p);
        if (!r.bounded) {
            REQUIRE(r.witness);
            CHECK(p(1e3 * *r.witness) > p(1e2 * *r.witness));
            CHECK(p(1e4 * *r.witness) > 1e3);
        }
    }
}

TEST_CASE("bounded_above is invariant under positive scaling") {
    testing::Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const auto dim = 1 + trial % 4;
        const auto rank = trial % (dim + 1);
        RealQuadPoly p(-testing::random_psd(rng, dim, rank), RVec::Zero(dim), 0.0);
        if (trial % 2) p = RealQuadPoly(p.M(), RVec::Random(dim), 1.0);
        const bool base = bounded_above(p).bounded;
        for (double t : {1e-3, 1.0, 1e3}) CHECK(bounded_above(p.scaled(t)).bounded == base);
    }
}

TEST_CASE("bounded_above flags decisions inside the band") {
    RMat m = RMat::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 5e-9;  // above tol * ||M|| = 1e-9 but below (tol + band) * ||M|| with band 1e-8
    const auto r = bounded_above(RealQuadPoly(m, RVec::Zero(2), 0.0), 1e-9, 0.0, 1e-8);
    CHECK_FALSE(r.bounded);
    CHECK(r.marginal);
    CHECK_FALSE(bounded_above(RealQuadPoly(m, RVec::Zero(2), 0.0), 1e-9, 0.0, 1e-10).marginal);
}

TEST_CASE("gaussian_marginalize standard Gaussian") {
    const QuadExponent g(-2.0 * CMat::Identity(2, 2), CVec::Zero(2), cplx{0.25, 0.0});
    const int all[] = {0, 1};
    const auto r = gaussian_marginalize(g, all);
    CHECK(std::abs(r.logPrefactor - std::log(std::numbers::pi)) < 1e-14);
    CHECK(r.remaining.dim() == 0);
    CHECK(std::abs(r.remaining.e - 0.25) < 1e-15);
}

TEST_CASE("gaussian_marginalize with nothing to integrate is the identity") {
    testing::Rng rng(14);
    const QuadExponent g(testing::random_symmetric(rng, 3), testing::random_cvec(rng, 3), {0.1, 0.2});
    const auto r = gaussian_marginalize(g, std::span<const int>{});
    CHECK(r.logPrefactor == cplx{0.0, 0.0});
    CHECK((r.remaining.sigma - g.sigma).norm() == 0.0);
    CHECK((r.remaining.w - g.w).norm() == 0.0);
}

TEST_CASE("gaussian_marginalize rejects divergent blocks and bad indices") {
    const QuadExponent g(CMat::Identity(2, 2), CVec::Zero(2), 0.0);
    const int first[] = {0};
    CHECK_THROWS_AS(gaussian_marginalize(g, first), DivergentIntegral);
    const int bad[] = {2};
    CHECK_THROWS_AS(gaussian_marginalize(g, bad), InputError);
    const int dup[] = {0, 0};
    CHECK_THROWS_AS(gaussian_marginalize(g, dup), InputError);
}

namespace {

QuadExponent random_integrable(testing::Rng& rng, Eigen::Index m) {
    const RMat negdef = -(testing::random_psd(rng, m, m, 0.5) + 0.5 * RMat::Identity(m, m));
    const CMat sigma = negdef.cast<cplx>() + I * testing::random_real_symmetric(rng, m, 0.4).cast<cplx>();
    return {sigma, testing::random_cvec(rng, m, 0.4), testing::random_cplx(rng, 0.2)};
}

}  // namespace

TEST_CASE("gaussian_marginalize is order independent") {
    testing::Rng rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_integrable(rng, 5);
        const int joint[] = {1, 3};
        const auto both = gaussian_marginalize(g, joint);
        const int first[] = {1};
        const auto step1 = gaussian_marginalize(g, first);
        const int second[] = {2};  // index 3 of the original is index 2 after removing index 1
        const auto step2 = gaussian_marginalize(step1.remaining, second);
        const double scale = both.remaining.sigma.norm() + both.remaining.w.norm() + 1.0;
        CHECK((both.remaining.sigma - step2.remaining.sigma).norm() <= 1e-12 * scale);
        CHECK((both.remaining.w - step2.remaining.w).norm() <= 1e-12 * scale);
        const cplx total1 = both.logPrefactor + both.remaining.e;
        const cplx total2 = step1.logPrefactor + step2.logPrefactor + step2.remaining.e;
        // the imaginary parts may differ by the branch of each log
        CHECK(std::abs(std::exp(total1) - std::exp(total2)) <= 1e-12 * std::abs(std::exp(total1)));
    }
}

TEST_CASE("gaussian_marginalize matches brute-force quadrature") {
    testing::Rng rng(16);
    for (int trial = 0; trial < 6; ++trial) {
        const auto g = random_integrable(rng, 4);
        const int vs[] = {2, 3};
        const auto r = gaussian_marginalize(g, vs);
        const RVec u = RVec::Random(2) * 0.7;
        oracle::Integrand f;
        f.dims = 2;
        // decay of exp(g) in v is at least the smallest eigenvalue of -Re Sigma_vv / 2
        const RMat svv = g.sigma.bottomRightCorner(2, 2).real();
        f.decayRate = 0.5 * Eigen::SelfAdjointEigenSolver<RMat>(-svv).eigenvalues().minCoeff();
        f.center = -svv.ldlt().solve(g.w.tail(2).real() + RMat(g.sigma.bottomLeftCorner(2, 2).real()) * u);
        f.fn = [&](std::span<const double> v) {
            CVec s(4);
            s << u(0), u(1), v[0], v[1];
            return std::exp(g(s));
        };
        const auto q = oracle::quad_integrate(f, {oracle::Scheme::Uniform, 0.0, 48});
        const cplx closed = std::exp(r.logPrefactor + r.remaining(u.cast<cplx>()));
        CHECK(std::abs(q.value - closed) <= 1e-6 * std::abs(closed));
    }
}
