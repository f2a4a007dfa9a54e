#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "toeplitz/weyl.hpp"

using namespace toeplitz;
using namespace toeplitz::weyl;
using testing::max_abs;

namespace {

double expected_log_norm(cplx g, const CVec& c, const CVec& d, const CVec& w) {
    const cplx dw = (d.transpose() * w.conjugate())(0);
    return 0.25 * std::norm(g) * (w + c).squaredNorm() - 0.25 * w.squaredNorm() - 0.5 * (g * dw).real();
}

}  // namespace

TEST_CASE("gamma") {
    CHECK(weyl::gamma(0.0) == cplx{1.0, 0.0});
    CHECK(std::abs(weyl::gamma(-0.5) - 0.5) < 1e-15);
    CHECK(std::abs(weyl::gamma(0.25) - 2.0) < 1e-15);
    CHECK_THROWS_AS(weyl::gamma(0.5), InputError);
}

TEST_CASE("example problem shape") {
    const CVec c = CVec::Constant(2, {1.0, 2.0}), d = CVec::Constant(2, {0.0, -1.0});
    const auto p = example_problem({-0.3, 0.1}, c, d);
    CHECK(is_example_family(p.phi0, p.Q));
    CHECK(is_example_family(p.phi0, p.Q.with_constant(3.0)));
    CHECK(std::abs(p.phi0(CVec::Constant(2, 2.0)) - 2.0) < 1e-15);
    const CVec x = CVec::Constant(2, {0.5, 0.25});
    const cplx want = cplx{-0.3, 0.1} * x.squaredNorm() + 0.5 * (c.conjugate().transpose() * x)(0) -
                      0.5 * (d.transpose() * x.conjugate())(0);
    CHECK(std::abs(p.Q(x) - want) < 1e-14);

    testing::Rng rng(61);
    const auto phi0 = testing::random_weight(rng, 2);
    CHECK_FALSE(is_example_family(phi0, testing::random_admissible_Q(rng, phi0)));
}

TEST_CASE("classification map") {
    const CVec z = CVec::Zero(1);
    CHECK(classify_example(-1.0, z, z).result == ExampleClass::Bounded);
    CHECK(classify_example(0.2, z, z).result == ExampleClass::Unbounded);
    CHECK(classify_example({0.1, 1.0}, z, z).result == ExampleClass::Bounded);  // |1 - 2 lambda| > 1
    CHECK_THROWS_AS(classify_example(0.25, z, z), HypothesisFailed);
    CHECK_THROWS_AS(classify_example({0.3, -2.0}, z, z), HypothesisFailed);

    testing::Rng rng(62);
    for (int k = 0; k < 20; ++k) {
        const cplx lambda = testing::unit_gamma_lambda(rng);
        const cplx g = weyl::gamma(lambda);
        const CVec d = testing::random_cvec(rng, 2);
        CHECK(classify_example(lambda, g * d, d).bounded);
        const CVec c = g * d + testing::random_cvec(rng, 2, 0.5);
        const auto cls = classify_example(lambda, c, d);
        CHECK_FALSE(cls.bounded);
        CHECK(cls.result == ExampleClass::Unbounded);
    }
}

TEST_CASE("marginal band near the unit circle") {
    // |gamma| - 1 below the zero threshold: treated as |gamma| = 1
    const cplx flat = 0.5 * (1.0 - (1.0 + 1e-12) * std::polar(1.0, 0.3));
    CHECK(classify_example(flat, CVec::Zero(1), CVec::Zero(1), 1e-9, 1e-6).result == ExampleClass::Bounded);
    // just outside the threshold but inside the band
    const cplx near = 0.5 * (1.0 - (1.0 + 5e-9) * std::polar(1.0, 0.3));
    const auto cls = classify_example(near, CVec::Zero(1), CVec::Zero(1), 1e-9, 1e-6);
    CHECK(cls.result == ExampleClass::MarginalBand);
    CHECK(cls.bounded);
    CHECK(classify_example(near, CVec::Zero(1), CVec::Zero(1), 1e-9, 1e-9).result == ExampleClass::Bounded);
}

TEST_CASE("coherent state") {
    const CVec w = CVec::Constant(1, {1.0, -2.0});
    const auto k = coherent_state(w);
    CHECK(std::abs(k.linear(0) - std::conj(w(0)) / 2.0) < 1e-15);
    CHECK(std::abs(k.constant + 1.25) < 1e-15);
    CHECK(std::abs(k.logPrefactor + 0.5 * std::log(2.0 * M_PI)) < 1e-15);
    // |k_w(x)|^2 e^{-|x|^2/2} peaks at x = w with value 1 / (2 pi)
    CHECK(std::abs(std::norm(k(w)) * std::exp(-0.5 * w.squaredNorm()) - 1.0 / (2.0 * M_PI)) < 1e-14);
}

TEST_CASE("kernel image closed form") {
    testing::Rng rng(63);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = 1 + trial % 2;
        const cplx lambda = testing::random_lambda(rng);
        const CVec c = testing::random_cvec(rng, n), d = testing::random_cvec(rng, n);
        const CVec w = testing::random_cvec(rng, n, 2.0);
        const auto img = toeplitz_on_kernel(lambda, c, d, w);
        const cplx g = weyl::gamma(lambda);
        CHECK(std::abs(img.gamma - g) < 1e-14);
        CHECK(max_abs(img.linear - 0.5 * g * (w + c).conjugate()) < 1e-13);
        CHECK(std::abs(img.logNorm - expected_log_norm(g, c, d, w)) < 1e-11 * (1.0 + std::abs(img.logNorm)));
        CHECK(std::abs(kernel_log_norm(g, c, d, w) - img.logNorm) < 1e-12 * (1.0 + std::abs(img.logNorm)));
        CHECK_FALSE(img.reducedLogNorm.has_value());
    }
    CHECK_THROWS_AS(toeplitz_on_kernel(0.3, CVec::Zero(1), CVec::Zero(1), CVec::Zero(1)), HypothesisFailed);
}

TEST_CASE("unit gamma reduces the log-norm to a linear function") {
    testing::Rng rng(64);
    for (int trial = 0; trial < 20; ++trial) {
        const cplx lambda = testing::unit_gamma_lambda(rng);
        const cplx g = weyl::gamma(lambda);
        const CVec d = testing::random_cvec(rng, 1);
        const CVec c = testing::random_cvec(rng, 1);
        const CVec w = testing::random_cvec(rng, 1, 3.0);
        const auto img = toeplitz_on_kernel(lambda, c, d, w);
        REQUIRE(img.reducedLogNorm.has_value());
        CHECK(std::abs(img.logNorm - *img.reducedLogNorm - 0.25 * c.squaredNorm()) < 1e-10);

        // c = gamma d leaves nothing that depends on w
        const CVec cd = g * d;
        const double a = toeplitz_on_kernel(lambda, cd, d, w).logNorm;
        const double b = toeplitz_on_kernel(lambda, cd, d, CVec::Zero(1)).logNorm;
        CHECK(std::abs(a - b) < 1e-10);
    }
}
