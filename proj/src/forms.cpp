#include "toeplitz/forms.hpp"

#include <cmath>

namespace toeplitz::forms {

namespace {

CMat real_embedding(Eigen::Index n) {
    CMat w(n, 2 * n);
    w << CMat::Identity(n, n), I * CMat::Identity(n, n);
    return w;
}

void require_square(const CMat& m, Eigen::Index n, const char* what) {
    if (m.rows() != n || m.cols() != n) throw InputError(std::string(what) + ": dimension mismatch");
}

}  // namespace

ComplexQuadraticPolynomial::ComplexQuadraticPolynomial(CMat A, CMat B, CMat C, CVec a, CVec b, cplx e)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), a_(std::move(a)), b_(std::move(b)), e_(e) {
    const auto n = a_.size();
    require_square(A_, n, "ComplexQuadraticPolynomial A");
    require_square(B_, n, "ComplexQuadraticPolynomial B");
    require_square(C_, n, "ComplexQuadraticPolynomial C");
    if (b_.size() != n) throw InputError("ComplexQuadraticPolynomial b: dimension mismatch");
    A_ = 0.5 * (A_ + A_.transpose()).eval();
    C_ = 0.5 * (C_ + C_.transpose()).eval();
}

ComplexQuadraticPolynomial ComplexQuadraticPolynomial::zero(Eigen::Index n) {
    return {CMat::Zero(n, n), CMat::Zero(n, n), CMat::Zero(n, n), CVec::Zero(n), CVec::Zero(n), 0.0};
}

cplx ComplexQuadraticPolynomial::operator()(const CVec& x) const {
    if (x.size() != n()) throw InputError("ComplexQuadraticPolynomial: dimension mismatch");
    const CVec xb = x.conjugate();
    return (x.transpose() * A_ * x)(0) + (xb.transpose() * B_ * x)(0) + (xb.transpose() * C_ * xb)(0) +
           (a_.transpose() * x)(0) + (b_.transpose() * xb)(0) + e_;
}

ComplexQuadraticPolynomial ComplexQuadraticPolynomial::operator+(const ComplexQuadraticPolynomial& o) const {
    return {A_ + o.A_, B_ + o.B_, C_ + o.C_, a_ + o.a_, b_ + o.b_, e_ + o.e_};
}

ComplexQuadraticPolynomial ComplexQuadraticPolynomial::operator-(const ComplexQuadraticPolynomial& o) const {
    return *this + o.scaled(-1.0);
}

ComplexQuadraticPolynomial ComplexQuadraticPolynomial::scaled(cplx t) const {
    return {t * A_, t * B_, t * C_, t * a_, t * b_, t * e_};
}

ComplexQuadraticPolynomial ComplexQuadraticPolynomial::with_constant(cplx e) const {
    return {A_, B_, C_, a_, b_, e};
}

double ComplexQuadraticPolynomial::coefficient_scale() const {
    return spectral_norm(A_) + spectral_norm(B_) + spectral_norm(C_) + a_.norm() + b_.norm();
}

PshWeight::PshWeight(CMat A, CMat H, CVec a, double e) : A_(std::move(A)), H_(std::move(H)), a_(std::move(a)), e_(e) {
    const auto n = a_.size();
    require_square(A_, n, "PshWeight A");
    require_square(H_, n, "PshWeight H");
    A_ = 0.5 * (A_ + A_.transpose()).eval();
    H_ = 0.5 * (H_ + H_.adjoint()).eval();
}

PshWeight PshWeight::homogeneous(CMat A, CMat H) {
    const auto n = H.rows();
    return PshWeight(std::move(A), std::move(H), CVec::Zero(n), 0.0);
}

double PshWeight::operator()(const CVec& x) const {
    if (x.size() != n()) throw InputError("PshWeight: dimension mismatch");
    return (x.transpose() * A_ * x)(0).real() + (x.adjoint() * H_ * x)(0).real() +
           2.0 * (a_.transpose() * x)(0).real() + e_;
}

CVec PshWeight::dx(const CVec& x) const { return A_ * x + H_.transpose() * x.conjugate() + a_; }

bool PshWeight::is_homogeneous() const { return a_.isZero(0.0) && e_ == 0.0; }

bool PshWeight::strictly_psh(double tol) const {
    const auto n = this->n();
    const ComplexQuadraticPolynomial herm(CMat::Zero(n, n), H_, CMat::Zero(n, n), CVec::Zero(n), CVec::Zero(n), 0.0);
    return algebra::psd_classify(to_real_form(herm).M(), tol) == algebra::Definiteness::PosDef;
}

PshWeight PshWeight::operator-(const PshWeight& o) const { return {A_ - o.A_, H_ - o.H_, a_ - o.a_, e_ - o.e_}; }

PshWeight PshWeight::with_constant(double e) const { return {A_, H_, a_, e}; }

ComplexQuadraticPolynomial PshWeight::as_polynomial() const {
    return {0.5 * A_, H_, 0.5 * A_.conjugate(), a_, a_.conjugate(), cplx{e_, 0.0}};
}

double PshWeight::coefficient_scale() const { return spectral_norm(A_) + spectral_norm(H_) + a_.norm(); }

CMat hermitian_part(const PshWeight& phi0) {
    if (!phi0.is_homogeneous()) throw InputError("hermitian_part: Phi0 must be a quadratic form");
    return phi0.H();
}

ComplexQuadraticPolynomial principal_part(const ComplexQuadraticPolynomial& q) {
    const auto n = q.n();
    return {q.A(), q.B(), q.C(), CVec::Zero(n), CVec::Zero(n), 0.0};
}

MajorizationReport check_majorization(const PshWeight& phi0, const ComplexQuadraticPolynomial& q, double tol) {
    const auto n = phi0.n();
    if (q.n() != n) throw InputError("check_majorization: dimension mismatch");
    const ComplexQuadraticPolynomial herm(CMat::Zero(n, n), hermitian_part(phi0), CMat::Zero(n, n), CVec::Zero(n),
                                          CVec::Zero(n), 0.0);
    const auto gap = to_real_form(herm - principal_part(q));
    const auto s = algebra::spectrum(gap.M(), tol);
    MajorizationReport r;
    r.definiteness = s.classify();
    r.holds = r.definiteness == algebra::Definiteness::PosDef;
    r.margin = s.values.size() ? s.values.minCoeff() : 0.0;
    return r;
}

NondegeneracyReport check_nondegeneracy(const PshWeight& phi0, const ComplexQuadraticPolynomial& q, double tol) {
    if (q.n() != phi0.n()) throw InputError("check_nondegeneracy: dimension mismatch");
    const CMat d = 2.0 * phi0.H() - q.B();
    NondegeneracyReport r;
    r.det = d.determinant();
    const double scale = spectral_norm(d);
    r.holds = std::abs(r.det) > tol * std::pow(scale, static_cast<double>(phi0.n()));
    return r;
}

cplx Polarization::operator()(const CVec& x, const CVec& y) const {
    return 0.5 * (x.transpose() * Axx * x)(0) + 0.5 * (y.transpose() * Ayy * y)(0) + (y.transpose() * Hyx * x)(0);
}

PshWeight Polarization::restrict_to_antidiagonal() const { return PshWeight::homogeneous(Axx, Hyx); }

Polarization polarization(const PshWeight& phi0) {
    if (!phi0.is_homogeneous()) throw InputError("polarization: Phi0 must be a quadratic form");
    return {phi0.A(), phi0.A().conjugate(), phi0.H()};
}

algebra::RealQuadPoly to_real_form(const ComplexQuadraticPolynomial& p) {
    const auto n = p.n();
    const CMat w = real_embedding(n);
    const CMat wb = w.conjugate();
    const CMat k = w.transpose() * p.A() * w + wb.transpose() * p.B() * w + wb.transpose() * p.C() * wb;
    const RMat m = (k + k.transpose()).real();
    const RVec b = (w.transpose() * p.a() + wb.transpose() * p.b()).real();
    return {m, b, p.e().real()};
}

algebra::RealQuadPoly to_real_form(const PshWeight& phi) { return to_real_form(phi.as_polynomial()); }

RVec to_real(const CVec& x) {
    RVec s(2 * x.size());
    s << x.real(), x.imag();
    return s;
}

CVec to_complex(const RVec& s) {
    const auto n = s.size() / 2;
    CVec x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = {s(i), s(n + i)};
    return x;
}

}  // namespace toeplitz::forms
