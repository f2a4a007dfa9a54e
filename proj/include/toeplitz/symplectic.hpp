#pragma once

#include "toeplitz/forms.hpp"
#include "toeplitz/types.hpp"

// Complex phase space C^{2n} with points rho = (x, xi) and symplectic form
// sigma(rho, rho') = xi.x' - xi'.x. Hamilton vectors are H_f = (f'_xi, -f'_x).
namespace toeplitz::symplectic {

using forms::PshWeight;

/// Matrix J of sigma: sigma(rho, rho') = rho^T J rho'.
CMat sigma_matrix(Eigen::Index n);

cplx symplectic_pair(const CVec& rho, const CVec& rho2);

/// Lambda_Phi = {(x, (2/i) d_x Phi(x))}.
class WeightPlane {
public:
    WeightPlane() = default;
    explicit WeightPlane(PshWeight phi) : phi_(std::move(phi)) {}

    const PshWeight& weight() const { return phi_; }
    Eigen::Index n() const { return phi_.n(); }

    /// xi(x) = -2i (A x + H^T xbar + a).
    CVec xi(const CVec& x) const;
    CVec point(const CVec& x) const;
    /// Images of the real basis e_1..e_n, i e_1..i e_n under the linear part
    /// of the parametrization, as columns of a 2n x 2n complex matrix.
    CMat tangent_basis() const;

    /// max |Im sigma| over tangent basis pairs (zero for an I-Lagrangian plane).
    double lagrangian_defect() const;
    /// Re sigma restricted to the plane, in the tangent basis.
    RMat real_symplectic_form() const;
    bool r_symplectic(double tol = kDefaultTol) const;

    /// Distance from rho to the plane measured in the xi-component,
    /// |xi - xi(x)|; zero iff rho lies on the plane.
    double membership_residual(const CVec& rho) const;

private:
    PshWeight phi_;
};

/// F(rho) = 1/2 rho^T Theta rho on C^{2n}.
struct HolomorphicQuadratic {
    CMat theta;

    HolomorphicQuadratic() = default;
    explicit HolomorphicQuadratic(CMat t);
    static HolomorphicQuadratic zero(Eigen::Index n);

    Eigen::Index n() const { return theta.rows() / 2; }
    cplx operator()(const CVec& rho) const;
    /// Gradient (F'_x, F'_xi) = Theta rho.
    CVec gradient(const CVec& rho) const;
};

/// l(x, xi) = lx.x + lxi.xi + constant.
struct ComplexLinearForm {
    CVec lx;
    CVec lxi;
    cplx constant{0.0, 0.0};

    static ComplexLinearForm zero(Eigen::Index n);
    /// From the stacked coefficient vector (lx, lxi).
    static ComplexLinearForm from_coefficients(const CVec& c, cplx constant = 0.0);

    Eigen::Index n() const { return lx.size(); }
    cplx operator()(const CVec& rho) const;
    CVec coefficients() const;
    ComplexLinearForm operator+(const ComplexLinearForm& o) const;
    ComplexLinearForm scaled(cplx t) const;
};

/// Hamilton map matrix [[F''_xix, F''_xixi], [-F''_xx, -F''_xxi]].
struct FundamentalMatrix {
    CMat m;
};

FundamentalMatrix fundamental_matrix(const HolomorphicQuadratic& f);

/// H_l = (lxi, -lx).
CVec hamilton_vector(const ComplexLinearForm& l);

/// rho -> M rho + t.
struct AffineCanonicalMap {
    CMat M;
    CVec t;

    static AffineCanonicalMap identity(Eigen::Index n);
    static AffineCanonicalMap translation(const CVec& t);
    /// exp(H_m): rho -> rho + H_m.
    static AffineCanonicalMap exp_hamilton(const ComplexLinearForm& m);

    Eigen::Index n() const { return M.rows() / 2; }
    CVec operator()(const CVec& rho) const { return M * rho + t; }
    /// (this o inner)(rho) = this(inner(rho)).
    AffineCanonicalMap after(const AffineCanonicalMap& inner) const;
    /// ||M^T J M - J||_max / max(1, ||M||^2).
    double symplectic_residual() const;
};

struct SpectralReport {
    CVec eigenvalues;
    double distanceToPlusMinusTwo = 0.0;
    double threshold = 0.0;
    bool admissible = true;
    cplx offending{0.0, 0.0};
};

/// Checks +-2 not in Spec(F) with min distance > tol * ||F||.
SpectralReport spectral_report(const FundamentalMatrix& fm, double tol = kDefaultTol);

/// kappa_F: (1 + F/2) rho -> (1 - F/2) rho. Throws SpectralObstruction.
AffineCanonicalMap kappa_F(const HolomorphicQuadratic& f, double tol = kDefaultTol);
/// kappa: rho -> kappa_F(rho) - kappa_F(H_l)/2 - H_l/2.
AffineCanonicalMap kappa_full(const HolomorphicQuadratic& f, const ComplexLinearForm& l, double tol = kDefaultTol);
/// kappa_l: rho -> rho - H_{l o kappa_F^{-1} + l} / 2.
AffineCanonicalMap kappa_ell(const HolomorphicQuadratic& f, const ComplexLinearForm& l, double tol = kDefaultTol);

/// m = -(l o kappa_F^{-1} + l) / 2, so that kappa_l = exp(H_m).
ComplexLinearForm translation_form(const HolomorphicQuadratic& f, const ComplexLinearForm& l,
                                   double tol = kDefaultTol);

struct ImagePlane {
    WeightPlane plane;          // recovered weight, constant term set to 0
    double graphCondition = 0;  // smallest / largest singular value of the x-projection
    double lagrangianDefect = 0;
};

/// Image of a weight plane under an affine canonical map, recovered as the
/// plane of a weight Psi (determined up to an additive constant).
/// Throws NotAGraph or NotLagrangianConsistent.
ImagePlane image_plane(const AffineCanonicalMap& kappa, const WeightPlane& plane, double tol = kDefaultTol);

/// Psi(x) = Phi(x) + Im m(x, (2/i) d_x Phi(x)) + C, with the constant C of
/// the Hamilton-Jacobi flow of Im m at time 1.
PshWeight translate_plane(const PshWeight& phi, const ComplexLinearForm& m);

struct IntersectionLocus {
    CMat basis;       // 2n x k, orthonormal in the real inner product of C^{2n}
    CMat xBasis;      // n x k, orthonormal basis of pi_x L in C^n ~ R^{2n}
    RMat imFForm;     // Hessian of Im F restricted to Lambda_Phi0 in the tangent basis
    double condition = 1.0;  // condition number of the constructed basis of L
    Eigen::Index dim() const { return basis.cols(); }
};

/// L = {(1 - F/2) rho : rho in Lambda_Phi0, Im F(rho) = 0}.
/// Throws PositivityViolation when Im F is not >= 0 on Lambda_Phi0.
IntersectionLocus intersection_locus(const HolomorphicQuadratic& f, const PshWeight& phi0,
                                     double tol = kDefaultTol);

/// Real-linear maps x -> U x + V xbar on C^n and their real 2n x 2n matrices.
struct RealLinearMap {
    CMat U;
    CMat V;

    RMat to_real() const;
    static RealLinearMap from_real(const RMat& g);
    CVec operator()(const CVec& x) const { return U * x + V * x.conjugate(); }
    RealLinearMap after(const RealLinearMap& inner) const;
};

/// Hessian of the real quadratic form Im F on Lambda_Phi0 in the tangent basis.
RMat restricted_imaginary_part(const HolomorphicQuadratic& f, const WeightPlane& plane);

}  // namespace toeplitz::symplectic
