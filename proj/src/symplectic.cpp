#include "toeplitz/symplectic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace toeplitz::symplectic {

namespace {

// Relative defect allowed when reading a weight off a recovered plane.
constexpr double kConsistencyTol = 1e-8;

CMat hamilton_of_coefficients_matrix(Eigen::Index n) {
    // c = (c_x, c_xi) -> (c_xi, -c_x)
    CMat jp = CMat::Zero(2 * n, 2 * n);
    jp.topRightCorner(n, n) = CMat::Identity(n, n);
    jp.bottomLeftCorner(n, n) = -CMat::Identity(n, n);
    return jp;
}

RMat real_embedding(const CMat& m) {
    RMat r(2 * m.rows(), m.cols());
    r << m.real(), m.imag();
    return r;
}

CMat complex_from_embedding(const RMat& r) {
    const auto rows = r.rows() / 2;
    return r.topRows(rows).cast<cplx>() + I * r.bottomRows(rows).cast<cplx>();
}

// Orthonormal basis of the column span, dropping directions with relative
// singular value <= tol. Returns the basis and the condition number of `cols`.
std::pair<RMat, double> orthonormalize(const RMat& cols, double tol) {
    if (cols.cols() == 0) return {RMat(cols.rows(), 0), 1.0};
    Eigen::JacobiSVD<RMat> svd(cols, Eigen::ComputeThinU);
    const RVec& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol * s(0)) ++rank;
    const double cond = s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : INFINITY;
    return {svd.matrixU().leftCols(rank), cond};
}

}  // namespace

CMat sigma_matrix(Eigen::Index n) { return -hamilton_of_coefficients_matrix(n); }

cplx symplectic_pair(const CVec& rho, const CVec& rho2) {
    if (rho.size() != rho2.size() || rho.size() % 2) throw InputError("symplectic_pair: dimension mismatch");
    const auto n = rho.size() / 2;
    return (rho.tail(n).transpose() * rho2.head(n))(0) - (rho2.tail(n).transpose() * rho.head(n))(0);
}

CVec WeightPlane::xi(const CVec& x) const { return -2.0 * I * phi_.dx(x); }

CVec WeightPlane::point(const CVec& x) const {
    CVec rho(2 * n());
    rho << x, xi(x);
    return rho;
}

CMat WeightPlane::tangent_basis() const {
    const auto n = this->n();
    const CMat& a = phi_.A();
    const CMat ht = phi_.H().transpose();
    CMat r(2 * n, 2 * n);
    r.topLeftCorner(n, n) = CMat::Identity(n, n);
    r.topRightCorner(n, n) = I * CMat::Identity(n, n);
    r.bottomLeftCorner(n, n) = -2.0 * I * (a + ht);
    r.bottomRightCorner(n, n) = -2.0 * I * (I * a - I * ht);
    return r;
}

double WeightPlane::lagrangian_defect() const {
    const CMat r = tangent_basis();
    const CMat s = r.transpose() * sigma_matrix(n()) * r;
    return s.imag().cwiseAbs().maxCoeff();
}

RMat WeightPlane::real_symplectic_form() const {
    const CMat r = tangent_basis();
    return (r.transpose() * sigma_matrix(n()) * r).real();
}

bool WeightPlane::r_symplectic(double tol) const {
    const RMat s = real_symplectic_form();
    Eigen::JacobiSVD<RMat> svd(s);
    const RVec& sv = svd.singularValues();
    return sv(sv.size() - 1) > tol * sv(0);
}

double WeightPlane::membership_residual(const CVec& rho) const {
    const auto n = this->n();
    return (rho.tail(n) - xi(rho.head(n))).norm();
}

HolomorphicQuadratic::HolomorphicQuadratic(CMat t) : theta(std::move(t)) {
    if (theta.rows() != theta.cols() || theta.rows() % 2)
        throw InputError("HolomorphicQuadratic: Theta must be 2n x 2n");
    theta = 0.5 * (theta + theta.transpose()).eval();
}

HolomorphicQuadratic HolomorphicQuadratic::zero(Eigen::Index n) {
    return HolomorphicQuadratic(CMat::Zero(2 * n, 2 * n));
}

cplx HolomorphicQuadratic::operator()(const CVec& rho) const { return 0.5 * (rho.transpose() * theta * rho)(0); }

CVec HolomorphicQuadratic::gradient(const CVec& rho) const { return theta * rho; }

ComplexLinearForm ComplexLinearForm::zero(Eigen::Index n) { return {CVec::Zero(n), CVec::Zero(n), 0.0}; }

ComplexLinearForm ComplexLinearForm::from_coefficients(const CVec& c, cplx constant) {
    const auto n = c.size() / 2;
    return {c.head(n), c.tail(n), constant};
}

cplx ComplexLinearForm::operator()(const CVec& rho) const {
    const auto n = this->n();
    return (lx.transpose() * rho.head(n))(0) + (lxi.transpose() * rho.tail(n))(0) + constant;
}

CVec ComplexLinearForm::coefficients() const {
    CVec c(2 * n());
    c << lx, lxi;
    return c;
}

ComplexLinearForm ComplexLinearForm::operator+(const ComplexLinearForm& o) const {
    return {lx + o.lx, lxi + o.lxi, constant + o.constant};
}

ComplexLinearForm ComplexLinearForm::scaled(cplx t) const { return {t * lx, t * lxi, t * constant}; }

FundamentalMatrix fundamental_matrix(const HolomorphicQuadratic& f) {
    return {hamilton_of_coefficients_matrix(f.n()) * f.theta};
}

CVec hamilton_vector(const ComplexLinearForm& l) {
    CVec h(2 * l.n());
    h << l.lxi, -l.lx;
    return h;
}

AffineCanonicalMap AffineCanonicalMap::identity(Eigen::Index n) {
    return {CMat::Identity(2 * n, 2 * n), CVec::Zero(2 * n)};
}

AffineCanonicalMap AffineCanonicalMap::translation(const CVec& t) {
    return {CMat::Identity(t.size(), t.size()), t};
}

AffineCanonicalMap AffineCanonicalMap::exp_hamilton(const ComplexLinearForm& m) {
    return translation(hamilton_vector(m));
}

AffineCanonicalMap AffineCanonicalMap::after(const AffineCanonicalMap& inner) const {
    return {M * inner.M, M * inner.t + t};
}

double AffineCanonicalMap::symplectic_residual() const {
    const CMat j = sigma_matrix(n());
    const double scale = std::max(1.0, M.cwiseAbs2().maxCoeff());
    return (M.transpose() * j * M - j).cwiseAbs().maxCoeff() / scale;
}

SpectralReport spectral_report(const FundamentalMatrix& fm, double tol) {
    SpectralReport r;
    Eigen::ComplexEigenSolver<CMat> ces(fm.m, false);
    r.eigenvalues = ces.eigenvalues();
    r.distanceToPlusMinusTwo = INFINITY;
    for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
        const cplx lam = r.eigenvalues(i);
        const double d = std::min(std::abs(lam - 2.0), std::abs(lam + 2.0));
        if (d < r.distanceToPlusMinusTwo) {
            r.distanceToPlusMinusTwo = d;
            r.offending = lam;
        }
    }
    r.threshold = tol * spectral_norm(fm.m);
    r.admissible = r.distanceToPlusMinusTwo > r.threshold;
    return r;
}

AffineCanonicalMap kappa_F(const HolomorphicQuadratic& f, double tol) {
    const FundamentalMatrix fm = fundamental_matrix(f);
    const SpectralReport rep = spectral_report(fm, tol);
    if (!rep.admissible)
        throw SpectralObstruction("kappa_F: fundamental matrix has an eigenvalue at +-2", rep.offending);
    const auto dim = fm.m.rows();
    const CMat id = CMat::Identity(dim, dim);
    const CMat plus = id + 0.5 * fm.m;
    const CMat minus = id - 0.5 * fm.m;
    // M = minus * plus^{-1}, via plus^T M^T = minus^T
    const CMat mt = plus.transpose().partialPivLu().solve(minus.transpose());
    return {mt.transpose(), CVec::Zero(dim)};
}

AffineCanonicalMap kappa_full(const HolomorphicQuadratic& f, const ComplexLinearForm& l, double tol) {
    AffineCanonicalMap k = kappa_F(f, tol);
    const CVec hl = hamilton_vector(l);
    k.t = -0.5 * (k.M * hl + hl);
    return k;
}

ComplexLinearForm translation_form(const HolomorphicQuadratic& f, const ComplexLinearForm& l, double tol) {
    const AffineCanonicalMap kf = kappa_F(f, tol);
    // l o kappa_F^{-1} has coefficient vector M^{-T} c
    const CVec pulled = kf.M.transpose().partialPivLu().solve(l.coefficients());
    return ComplexLinearForm::from_coefficients(-0.5 * (pulled + l.coefficients()), -l.constant);
}

AffineCanonicalMap kappa_ell(const HolomorphicQuadratic& f, const ComplexLinearForm& l, double tol) {
    return AffineCanonicalMap::exp_hamilton(translation_form(f, l, tol));
}

RMat RealLinearMap::to_real() const {
    const auto n = U.rows();
    const CMat colsU = U + V;            // image of e_j
    const CMat colsI = I * (U - V);      // image of i e_j
    RMat g(2 * n, 2 * n);
    g << colsU.real(), colsI.real(), colsU.imag(), colsI.imag();
    return g;
}

RealLinearMap RealLinearMap::from_real(const RMat& g) {
    const auto n = g.rows() / 2;
    const CMat le = g.topLeftCorner(n, n).cast<cplx>() + I * g.bottomLeftCorner(n, n).cast<cplx>();
    const CMat li = g.topRightCorner(n, n).cast<cplx>() + I * g.bottomRightCorner(n, n).cast<cplx>();
    return {0.5 * (le - I * li), 0.5 * (le + I * li)};
}

RealLinearMap RealLinearMap::after(const RealLinearMap& inner) const {
    return {U * inner.U + V * inner.V.conjugate(), U * inner.V + V * inner.U.conjugate()};
}

ImagePlane image_plane(const AffineCanonicalMap& kappa, const WeightPlane& plane, double tol) {
    const auto n = plane.n();
    if (kappa.n() != n) throw InputError("image_plane: dimension mismatch");
    const PshWeight& phi = plane.weight();
    // xi = Uxi x + Vxi xbar + xi0 on the source plane
    const CMat uxi = -2.0 * I * phi.A();
    const CMat vxi = -2.0 * I * phi.H().transpose();
    const CVec xi0 = -2.0 * I * phi.a();

    const auto mxx = kappa.M.topLeftCorner(n, n);
    const auto mxxi = kappa.M.topRightCorner(n, n);
    const auto mxix = kappa.M.bottomLeftCorner(n, n);
    const auto mxixi = kappa.M.bottomRightCorner(n, n);

    const RealLinearMap toY{mxx + mxxi * uxi, mxxi * vxi};
    const CVec y0 = mxxi * xi0 + kappa.t.head(n);
    const RealLinearMap toEta{mxix + mxixi * uxi, mxixi * vxi};
    const CVec eta0 = mxixi * xi0 + kappa.t.tail(n);

    const RMat g = toY.to_real();
    Eigen::JacobiSVD<RMat> svd(g);
    const RVec& sv = svd.singularValues();
    ImagePlane out;
    out.graphCondition = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
    if (!(out.graphCondition > tol)) throw NotAGraph("image_plane: image is not a graph over x");

    const RealLinearMap fromY = RealLinearMap::from_real(g.inverse());
    const RealLinearMap etaOfY = toEta.after(fromY);
    // x = fromY(y - y0), so eta = etaOfY(y) + eta0 - etaOfY(y0)
    const CVec k0 = eta0 - etaOfY(y0);

    const CMat aNew = 0.5 * I * etaOfY.U;
    const CMat hNew = 0.5 * I * etaOfY.V.transpose();
    const CVec lin = 0.5 * I * k0;

    const double scale = std::max({aNew.cwiseAbs().maxCoeff(), hNew.cwiseAbs().maxCoeff(), 1e-300});
    const double symDefect = (aNew - aNew.transpose()).cwiseAbs().maxCoeff() / scale;
    const double hermDefect = (hNew - hNew.adjoint()).cwiseAbs().maxCoeff() / scale;
    out.lagrangianDefect = std::max(symDefect, hermDefect);
    if (out.lagrangianDefect > kConsistencyTol)
        throw NotLagrangianConsistent("image_plane: recovered weight is not real-valued quadratic");

    out.plane = WeightPlane(PshWeight(aNew, hNew, lin, 0.0));
    return out;
}

PshWeight translate_plane(const PshWeight& phi, const ComplexLinearForm& m) {
    if (m.n() != phi.n()) throw InputError("translate_plane: dimension mismatch");
    // m(x, xi(x)) = alpha.x + beta.xbar + kappa
    const CVec alpha = m.lx - 2.0 * I * phi.A() * m.lxi;
    const CVec beta = -2.0 * I * phi.H() * m.lxi;
    const cplx kappa = -2.0 * I * (m.lxi.transpose() * phi.a())(0) + m.constant;
    // Im(alpha.x + beta.xbar) = 2 Re(g.x)
    const CVec g = (alpha - beta.conjugate()) / (2.0 * I);
    // Hamilton-Jacobi constant at t = 1: (1/2) Im(lxi . (2/i) g)
    const double c1 = -(m.lxi.transpose() * g)(0).real();
    return {phi.A(), phi.H(), phi.a() + g, phi.e() + kappa.imag() + c1};
}

RMat restricted_imaginary_part(const HolomorphicQuadratic& f, const WeightPlane& plane) {
    const CMat r = plane.tangent_basis();
    const CMat h = r.transpose() * f.theta * r;
    const RMat im = h.imag();
    return 0.5 * (im + im.transpose());
}

IntersectionLocus intersection_locus(const HolomorphicQuadratic& f, const PshWeight& phi0, double tol) {
    const auto n = phi0.n();
    if (f.n() != n) throw InputError("intersection_locus: dimension mismatch");
    const WeightPlane plane(phi0);
    IntersectionLocus out;
    out.imFForm = restricted_imaginary_part(f, plane);
    // Im F can vanish identically on the plane while F itself is large
    const CMat r = plane.tangent_basis();
    const algebra::Spectrum s = algebra::spectrum(out.imFForm, tol, spectral_norm(r.transpose() * f.theta * r));
    const auto cls = s.classify();
    if (cls == algebra::Definiteness::Indefinite || cls == algebra::Definiteness::NegDef ||
        cls == algebra::Definiteness::NegSemiDef)
        throw PositivityViolation("intersection_locus: Im F is not nonnegative on Lambda_Phi0");

    const FundamentalMatrix fm = fundamental_matrix(f);
    const SpectralReport rep = spectral_report(fm, tol);
    if (!rep.admissible)
        throw SpectralObstruction("intersection_locus: fundamental matrix has an eigenvalue at +-2", rep.offending);

    const RMat kernel = s.kernel();
    const CMat minus = CMat::Identity(2 * n, 2 * n) - 0.5 * fm.m;
    const CMat lcols = minus * plane.tangent_basis() * kernel.cast<cplx>();
    auto [lbasis, cond] = orthonormalize(real_embedding(lcols), tol);
    out.basis = complex_from_embedding(lbasis);
    out.condition = cond;

    auto [xbasis, xcond] = orthonormalize(real_embedding(CMat(out.basis.topRows(n))), tol);
    (void)xcond;
    out.xBasis = complex_from_embedding(xbasis);
    return out;
}

}  // namespace toeplitz::symplectic
