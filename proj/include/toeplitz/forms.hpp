#pragma once

#include "toeplitz/algebra.hpp"
#include "toeplitz/types.hpp"

namespace toeplitz::forms {

/// Q(x) = x^T A x + xbar^T B x + xbar^T C xbar + a.x + b.xbar + e on C^n.
/// A and C are stored symmetrized.
class ComplexQuadraticPolynomial {
public:
    ComplexQuadraticPolynomial() = default;
    ComplexQuadraticPolynomial(CMat A, CMat B, CMat C, CVec a, CVec b, cplx e);

    static ComplexQuadraticPolynomial zero(Eigen::Index n);

    Eigen::Index n() const { return a_.size(); }
    const CMat& A() const { return A_; }
    const CMat& B() const { return B_; }
    const CMat& C() const { return C_; }
    const CVec& a() const { return a_; }
    const CVec& b() const { return b_; }
    cplx e() const { return e_; }

    cplx operator()(const CVec& x) const;

    ComplexQuadraticPolynomial operator+(const ComplexQuadraticPolynomial& o) const;
    ComplexQuadraticPolynomial operator-(const ComplexQuadraticPolynomial& o) const;
    ComplexQuadraticPolynomial scaled(cplx t) const;
    ComplexQuadraticPolynomial with_constant(cplx e) const;

    /// Sum of spectral norms of the matrix blocks plus vector norms; used as
    /// the reference magnitude for tolerance decisions.
    double coefficient_scale() const;

private:
    CMat A_, B_, C_;
    CVec a_, b_;
    cplx e_{0.0, 0.0};
};

/// Phi(x) = Re(x^T A x) + xbar^T H x + 2 Re(a.x) + e, real valued by
/// construction. H is the mixed Hessian d_x d_xbar Phi (transposed).
class PshWeight {
public:
    PshWeight() = default;
    PshWeight(CMat A, CMat H, CVec a, double e);

    static PshWeight homogeneous(CMat A, CMat H);

    Eigen::Index n() const { return a_.size(); }
    const CMat& A() const { return A_; }
    const CMat& H() const { return H_; }
    const CVec& a() const { return a_; }
    double e() const { return e_; }

    double operator()(const CVec& x) const;
    /// d Phi / d x = A x + H^T xbar + a.
    CVec dx(const CVec& x) const;

    bool is_homogeneous() const;
    bool strictly_psh(double tol = kDefaultTol) const;

    PshWeight operator-(const PshWeight& o) const;
    PshWeight with_constant(double e) const;

    ComplexQuadraticPolynomial as_polynomial() const;
    double coefficient_scale() const;

private:
    CMat A_, H_;
    CVec a_;
    double e_ = 0.0;
};

/// Hermitian part Phi_herm(x) = (Phi0(x) + Phi0(ix)) / 2 = xbar^T H x.
/// Throws InputError for inhomogeneous input.
CMat hermitian_part(const PshWeight& phi0);

/// Zeroes the linear and constant terms.
ComplexQuadraticPolynomial principal_part(const ComplexQuadraticPolynomial& q);

struct MajorizationReport {
    bool holds = false;
    double margin = 0.0;  // smallest Hessian eigenvalue of Phi_herm - Re q on R^{2n}
    algebra::Definiteness definiteness = algebra::Definiteness::Zero;
};

/// Re q(x) < Phi_herm(x) for x != 0.
MajorizationReport check_majorization(const PshWeight& phi0, const ComplexQuadraticPolynomial& q,
                                      double tol = kDefaultTol);

struct NondegeneracyReport {
    bool holds = false;
    cplx det{0.0, 0.0};
};

/// det d_x d_xbar (2 Phi0 - q) != 0, relative to ||2H - B_q||^n.
NondegeneracyReport check_nondegeneracy(const PshWeight& phi0, const ComplexQuadraticPolynomial& q,
                                        double tol = kDefaultTol);

/// Psi0(x, y) = 1/2 x^T A x + 1/2 y^T conj(A) y + y^T H x, holomorphic in (x, y).
struct Polarization {
    CMat Axx;
    CMat Ayy;
    CMat Hyx;

    cplx operator()(const CVec& x, const CVec& y) const;
    /// Reads the weight back off the antidiagonal y = xbar.
    PshWeight restrict_to_antidiagonal() const;
};

/// Throws InputError for inhomogeneous input.
Polarization polarization(const PshWeight& phi0);

/// Real form of Re p on R^{2n} under x = u + i v, coordinates ordered (u, v).
algebra::RealQuadPoly to_real_form(const ComplexQuadraticPolynomial& p);
algebra::RealQuadPoly to_real_form(const PshWeight& phi);

/// Point x in C^n <-> (u, v) in R^{2n}.
RVec to_real(const CVec& x);
CVec to_complex(const RVec& s);

}  // namespace toeplitz::forms
