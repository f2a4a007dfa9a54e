#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "toeplitz/types.hpp"

namespace toeplitz::algebra {

enum class Definiteness { PosDef, PosSemiDef, Indefinite, NegSemiDef, NegDef, Zero };

std::string_view to_string(Definiteness d);

/// Eigen-decomposition of a real symmetric matrix together with the
/// threshold below which eigenvalues are treated as zero.
struct Spectrum {
    RVec values;
    RMat vectors;
    double threshold = 0.0;

    Definiteness classify() const;
    /// Orthonormal basis of the numerical kernel (|lambda| <= threshold).
    RMat kernel() const;
};

/// Symmetric eigensolve with threshold tol * max(||M||_2, scale).
/// Throws InputError when M is not symmetric to 1e-10 relative.
Spectrum spectrum(const RMat& m, double tol = kDefaultTol, double scale = 0.0);

/// Eigenvalue-sign classification. `scale` lets callers whose matrix is a
/// difference of larger quantities (and therefore possibly pure round-off)
/// supply the magnitude the threshold should be relative to.
Definiteness psd_classify(const RMat& m, double tol = kDefaultTol, double scale = 0.0);

constexpr Definiteness mirror(Definiteness d) {
    switch (d) {
        case Definiteness::PosDef: return Definiteness::NegDef;
        case Definiteness::PosSemiDef: return Definiteness::NegSemiDef;
        case Definiteness::NegDef: return Definiteness::PosDef;
        case Definiteness::NegSemiDef: return Definiteness::PosSemiDef;
        default: return d;
    }
}

/// p(v) = 1/2 v.Mv + b.v + e on R^m. M is stored symmetrized.
class RealQuadPoly {
public:
    RealQuadPoly() = default;
    RealQuadPoly(RMat m, RVec b, double e);

    static RealQuadPoly zero(Eigen::Index dim);

    Eigen::Index dim() const { return b_.size(); }
    const RMat& M() const { return m_; }
    const RVec& b() const { return b_; }
    double e() const { return e_; }

    double operator()(const RVec& v) const;

    RealQuadPoly operator-() const;
    RealQuadPoly operator+(const RealQuadPoly& o) const;
    RealQuadPoly operator-(const RealQuadPoly& o) const;
    RealQuadPoly scaled(double t) const;

    /// Magnitude used as the default reference scale for tolerance decisions.
    double coefficient_scale() const;

private:
    RMat m_;
    RVec b_;
    double e_ = 0.0;
};

struct BoundednessReport {
    bool bounded = false;
    /// Decision flips when the zero threshold moves from tol to tol + band.
    bool marginal = false;
    /// Direction v along which p(tv) -> +inf; present iff !bounded.
    std::optional<RVec> witness;
    double maxEigenvalue = 0.0;
    /// Norm of the projection of b onto the numerical kernel of M.
    double kernelResidual = 0.0;
    double threshold = 0.0;
};

/// Decides whether p is bounded above on R^m: M negative semidefinite and b
/// orthogonal to the numerical kernel of M.
BoundednessReport bounded_above(const RealQuadPoly& p, double tol = kDefaultTol, double scale = 0.0,
                                double band = kDefaultTol);

/// g(v) = 1/2 v.Sigma v + w.v + e, Sigma complex symmetric, v real.
struct QuadExponent {
    CMat sigma;
    CVec w;
    cplx e{0.0, 0.0};

    QuadExponent() = default;
    QuadExponent(CMat s, CVec w_, cplx e_);

    Eigen::Index dim() const { return w.size(); }
    cplx operator()(const CVec& v) const;
};

struct MarginalResult {
    QuadExponent remaining;  // exponent over the variables that were not integrated
    cplx logPrefactor{0.0, 0.0};
};

/// Integrates exp(g) over the real variables listed in `integrated`:
///   int exp(g(u, v)) dv = exp(logPrefactor + remaining(u)).
/// The remaining variables keep their relative order. The log-determinant is
/// the sum of principal logarithms of the eigenvalues of -Sigma_vv, which is
/// the analytic continuation from the real case since Re(-Sigma_vv) > 0.
/// Throws DivergentIntegral unless Re Sigma_vv is negative definite.
MarginalResult gaussian_marginalize(const QuadExponent& g, std::span<const int> integrated,
                                    double tol = kDefaultTol);

}  // namespace toeplitz::algebra
