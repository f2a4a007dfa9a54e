#pragma once

#include <cmath>
#include <random>

#include "toeplitz/forms.hpp"
#include "toeplitz/symplectic.hpp"
#include "toeplitz/weyl.hpp"

namespace testing {

using namespace toeplitz;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline cplx random_cplx(Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    return {g(rng), g(rng)};
}

inline CVec random_cvec(Rng& rng, Eigen::Index n, double scale = 1.0) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = random_cplx(rng, scale);
    return v;
}

inline CMat random_cmat(Rng& rng, Eigen::Index n, double scale = 1.0) {
    CMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = random_cplx(rng, scale);
    return m;
}

inline CMat random_symmetric(Rng& rng, Eigen::Index n, double scale = 1.0) {
    const CMat m = random_cmat(rng, n, scale);
    return 0.5 * (m + m.transpose());
}

inline RMat random_real_symmetric(Rng& rng, Eigen::Index n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    RMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = g(rng);
    return 0.5 * (m + m.transpose());
}

// Hermitian with spectrum in roughly [lo, lo + scale^2 n].
inline CMat random_hermitian_pd(Rng& rng, Eigen::Index n, double lo = 0.2, double scale = 0.5) {
    const CMat g = random_cmat(rng, n, scale);
    return g * g.adjoint() + lo * CMat::Identity(n, n);
}

inline forms::PshWeight random_weight(Rng& rng, Eigen::Index n, bool homogeneous = true) {
    const CMat h = random_hermitian_pd(rng, n);
    const CMat a = random_symmetric(rng, n, 0.3);
    if (homogeneous) return forms::PshWeight::homogeneous(a, h);
    return {a, h, random_cvec(rng, n, 0.5), uniform(rng, -1.0, 1.0)};
}

// Q with Re q < Phi_herm, obtained by shrinking a random principal part.
inline forms::ComplexQuadraticPolynomial random_admissible_Q(Rng& rng, const forms::PshWeight& phi0,
                                                             double linearScale = 0.5) {
    const auto n = phi0.n();
    const CMat A = random_symmetric(rng, n, 0.3);
    const CMat B = random_cmat(rng, n, 0.3);
    const CMat C = random_symmetric(rng, n, 0.3);
    forms::ComplexQuadraticPolynomial q(A, B, C, CVec::Zero(n), CVec::Zero(n), 0.0);
    while (forms::check_majorization(phi0, q).margin < 0.05) q = q.scaled(0.5);
    return {q.A(), q.B(), q.C(), random_cvec(rng, n, linearScale), random_cvec(rng, n, linearScale),
            random_cplx(rng, 0.3)};
}

inline cplx random_lambda(Rng& rng) {
    // Re lambda < 1/4 with a margin so that probes stay cheap
    return {uniform(rng, -2.0, 0.24), uniform(rng, -1.5, 1.5)};
}

// A lambda with |gamma| = 1 exactly up to round-off: 1 - 2 lambda = e^{i theta}, cos theta > 1/2.
inline cplx unit_gamma_lambda(Rng& rng) {
    const double theta = uniform(rng, -1.0, 1.0);
    return 0.5 * (1.0 - std::polar(1.0, theta));
}

// Complex symmetric Theta whose restriction to Lambda_Phi0 has imaginary part
// `imag` (in the tangent basis) and random real part.
inline symplectic::HolomorphicQuadratic quadratic_with_restriction(const forms::PshWeight& phi0, const RMat& real,
                                                                   const RMat& imag) {
    const symplectic::WeightPlane plane(phi0);
    const CMat r = plane.tangent_basis();
    const CMat s = real.cast<cplx>() + I * imag.cast<cplx>();
    const CMat rinv = r.inverse();
    return symplectic::HolomorphicQuadratic(rinv.transpose() * s * rinv);
}

inline RMat random_psd(Rng& rng, Eigen::Index dim, Eigen::Index rank, double scale = 0.3) {
    std::normal_distribution<double> g(0.0, scale);
    RMat v(dim, rank);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < rank; ++j) v(i, j) = g(rng);
    return v * v.transpose();
}

inline symplectic::HolomorphicQuadratic random_quadratic(Rng& rng, Eigen::Index n, double scale = 0.3) {
    return symplectic::HolomorphicQuadratic(random_symmetric(rng, 2 * n, scale));
}

inline symplectic::ComplexLinearForm random_linear(Rng& rng, Eigen::Index n, double scale = 0.5) {
    return {random_cvec(rng, n, scale), random_cvec(rng, n, scale), random_cplx(rng, scale)};
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace testing
