#include "toeplitz/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

namespace toeplitz::algebra {

std::string_view to_string(Definiteness d) {
    switch (d) {
        case Definiteness::PosDef: return "PosDef";
        case Definiteness::PosSemiDef: return "PosSemiDef";
        case Definiteness::Indefinite: return "Indefinite";
        case Definiteness::NegSemiDef: return "NegSemiDef";
        case Definiteness::NegDef: return "NegDef";
        case Definiteness::Zero: return "Zero";
    }
    return "?";
}

Definiteness Spectrum::classify() const {
    int pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) > threshold) ++pos;
        else if (values(i) < -threshold) ++neg;
    }
    const int n = static_cast<int>(values.size());
    if (pos == 0 && neg == 0) return Definiteness::Zero;
    if (pos > 0 && neg > 0) return Definiteness::Indefinite;
    if (pos == n) return Definiteness::PosDef;
    if (neg == n) return Definiteness::NegDef;
    return pos > 0 ? Definiteness::PosSemiDef : Definiteness::NegSemiDef;
}

RMat Spectrum::kernel() const {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (std::abs(values(i)) <= threshold) cols.push_back(i);
    RMat k(vectors.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) k.col(static_cast<Eigen::Index>(j)) = vectors.col(cols[j]);
    return k;
}

Spectrum spectrum(const RMat& m, double tol, double scale) {
    if (m.rows() != m.cols()) throw InputError("psd_classify: matrix is not square");
    if (!m.allFinite()) throw InputError("psd_classify: non-finite entries");
    const double mag = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(mag, 1e-300))
        throw InputError("psd_classify: matrix is not symmetric");
    Spectrum s;
    if (m.size() == 0) return s;
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (m + m.transpose()));
    s.values = es.eigenvalues();
    s.vectors = es.eigenvectors();
    const double norm = s.values.cwiseAbs().maxCoeff();
    s.threshold = tol * std::max(norm, scale);
    return s;
}

Definiteness psd_classify(const RMat& m, double tol, double scale) {
    if (!(tol > 0)) throw InputError("psd_classify: tolerance must be positive");
    return spectrum(m, tol, scale).classify();
}

RealQuadPoly::RealQuadPoly(RMat m, RVec b, double e) : m_(std::move(m)), b_(std::move(b)), e_(e) {
    if (m_.rows() != m_.cols() || m_.rows() != b_.size())
        throw InputError("RealQuadPoly: dimension mismatch");
    m_ = 0.5 * (m_ + m_.transpose()).eval();
}

RealQuadPoly RealQuadPoly::zero(Eigen::Index dim) {
    return RealQuadPoly(RMat::Zero(dim, dim), RVec::Zero(dim), 0.0);
}

double RealQuadPoly::operator()(const RVec& v) const {
    return 0.5 * v.dot(m_ * v) + b_.dot(v) + e_;
}

RealQuadPoly RealQuadPoly::operator-() const { return RealQuadPoly(-m_, -b_, -e_); }

RealQuadPoly RealQuadPoly::operator+(const RealQuadPoly& o) const {
    return RealQuadPoly(m_ + o.m_, b_ + o.b_, e_ + o.e_);
}

RealQuadPoly RealQuadPoly::operator-(const RealQuadPoly& o) const { return *this + (-o); }

RealQuadPoly RealQuadPoly::scaled(double t) const { return RealQuadPoly(t * m_, t * b_, t * e_); }

double RealQuadPoly::coefficient_scale() const {
    return (m_.size() ? spectral_norm(m_) : 0.0) + b_.norm();
}

namespace {

struct Decision {
    bool bounded;
    std::optional<RVec> witness;
    double maxEig;
    double residual;
    double threshold;
};

Decision decide(const RealQuadPoly& p, double tol, double scale) {
    Decision d{true, std::nullopt, 0.0, 0.0, 0.0};
    if (p.dim() == 0) return d;
    const Spectrum s = spectrum(p.M(), tol, scale);
    d.threshold = s.threshold;
    Eigen::Index imax = 0;
    d.maxEig = s.values.maxCoeff(&imax);
    if (d.maxEig > s.threshold) {
        d.bounded = false;
        d.witness = s.vectors.col(imax);
        return d;
    }
    const RMat k = s.kernel();
    const RVec proj = k * (k.transpose() * p.b());
    d.residual = proj.norm();
    const double mnorm = s.values.cwiseAbs().maxCoeff();
    if (d.residual > tol * (p.b().norm() + mnorm + scale)) {
        d.bounded = false;
        d.witness = proj / d.residual;
    }
    return d;
}

}  // namespace

BoundednessReport bounded_above(const RealQuadPoly& p, double tol, double scale, double band) {
    const Decision inner = decide(p, tol, scale);
    const Decision outer = decide(p, tol + band, scale);
    BoundednessReport r;
    r.bounded = inner.bounded;
    r.marginal = inner.bounded != outer.bounded;
    r.witness = inner.witness;
    r.maxEigenvalue = inner.maxEig;
    r.kernelResidual = inner.residual;
    r.threshold = inner.threshold;
    return r;
}

QuadExponent::QuadExponent(CMat s, CVec w_, cplx e_) : sigma(std::move(s)), w(std::move(w_)), e(e_) {
    if (sigma.rows() != sigma.cols() || sigma.rows() != w.size())
        throw InputError("QuadExponent: dimension mismatch");
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
}

cplx QuadExponent::operator()(const CVec& v) const {
    return 0.5 * (v.transpose() * sigma * v)(0) + (w.transpose() * v)(0) + e;
}

MarginalResult gaussian_marginalize(const QuadExponent& g, std::span<const int> integrated, double tol) {
    const auto m = static_cast<int>(g.dim());
    std::vector<bool> mark(static_cast<std::size_t>(m), false);
    for (int idx : integrated) {
        if (idx < 0 || idx >= m) throw InputError("gaussian_marginalize: index out of range");
        if (mark[static_cast<std::size_t>(idx)]) throw InputError("gaussian_marginalize: duplicate index");
        mark[static_cast<std::size_t>(idx)] = true;
    }
    std::vector<int> vs(integrated.begin(), integrated.end()), us;
    for (int i = 0; i < m; ++i)
        if (!mark[static_cast<std::size_t>(i)]) us.push_back(i);
    if (vs.empty()) return {g, cplx{0.0, 0.0}};

    const auto nu = static_cast<Eigen::Index>(us.size());
    const auto nv = static_cast<Eigen::Index>(vs.size());
    CMat suu(nu, nu), suv(nu, nv), svv(nv, nv);
    CVec wu(nu), wv(nv);
    for (Eigen::Index i = 0; i < nu; ++i) {
        wu(i) = g.w(us[i]);
        for (Eigen::Index j = 0; j < nu; ++j) suu(i, j) = g.sigma(us[i], us[j]);
        for (Eigen::Index j = 0; j < nv; ++j) suv(i, j) = g.sigma(us[i], vs[j]);
    }
    for (Eigen::Index i = 0; i < nv; ++i) {
        wv(i) = g.w(vs[i]);
        for (Eigen::Index j = 0; j < nv; ++j) svv(i, j) = g.sigma(vs[i], vs[j]);
    }

    if (psd_classify(svv.real(), tol) != Definiteness::NegDef)
        throw DivergentIntegral("gaussian_marginalize: Re Sigma_vv is not negative definite");

    Eigen::PartialPivLU<CMat> lu(svv);
    const CMat sinv_vu = lu.solve(suv.transpose());
    const CVec sinv_w = lu.solve(wv);

    MarginalResult out;
    out.remaining = QuadExponent(suu - suv * sinv_vu, wu - suv * sinv_w,
                                 g.e - 0.5 * (wv.transpose() * sinv_w)(0));

    Eigen::ComplexEigenSolver<CMat> ces((-svv).eval(), false);
    cplx logdet{0.0, 0.0};
    for (Eigen::Index i = 0; i < nv; ++i) logdet += std::log(ces.eigenvalues()(i));
    out.logPrefactor = 0.5 * static_cast<double>(nv) * std::log(2.0 * std::numbers::pi) - 0.5 * logdet;
    return out;
}

}  // namespace toeplitz::algebra
