#include "toeplitz/weyl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace toeplitz::weyl {

using algebra::Definiteness;
using algebra::QuadExponent;
using symplectic::ComplexLinearForm;
using symplectic::HolomorphicQuadratic;

std::string_view to_string(SymbolStatus s) {
    switch (s) {
        case SymbolStatus::Yes: return "yes";
        case SymbolStatus::No: return "no";
        case SymbolStatus::Marginal: return "marginal";
    }
    return "?";
}

std::string_view to_string(Conclusion c) {
    switch (c) {
        case Conclusion::Bounded: return "Bounded";
        case Conclusion::SymbolUnbounded: return "SymbolUnbounded";
        case Conclusion::Marginal: return "Marginal";
        case Conclusion::HypothesisFailed: return "HypothesisFailed";
        case Conclusion::SpectralObstruction: return "SpectralObstruction";
        case Conclusion::InternalInconsistency: return "InternalInconsistency";
    }
    return "?";
}

std::string_view to_string(OperatorStatus s) {
    switch (s) {
        case OperatorStatus::Bounded: return "Bounded";
        case OperatorStatus::Unbounded: return "Unbounded";
        case OperatorStatus::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

// Accumulates 1/2 s^T Sigma s + w.s + e where s stacks (x, xbar, v), v in R^{2n}
// the real coordinates of the integration variable y.
class JointExponent {
public:
    explicit JointExponent(Eigen::Index n)
        : n_(n), sigma_(CMat::Zero(4 * n, 4 * n)), w_(CVec::Zero(4 * n)) {}

    CMat x() const { return block(0, CMat::Identity(n_, n_)); }
    CMat xbar() const { return block(n_, CMat::Identity(n_, n_)); }
    CMat y() const { return block(2 * n_, embedding()); }
    CMat ybar() const { return block(2 * n_, embedding().conjugate()); }

    // adds (L s)^T M (R s)
    void bilinear(const CMat& l, const CMat& m, const CMat& r) {
        const CMat k = l.transpose() * m * r;
        sigma_ += k + k.transpose();
    }
    // adds c.(L s)
    void linear(const CMat& l, const CVec& c) { w_ += l.transpose() * c; }
    void constant(cplx e) { e_ += e; }

    QuadExponent finish() const { return {sigma_, w_, e_}; }

private:
    CMat embedding() const {
        CMat w(n_, 2 * n_);
        w << CMat::Identity(n_, n_), I * CMat::Identity(n_, n_);
        return w;
    }
    CMat block(Eigen::Index offset, const CMat& m) const {
        CMat l = CMat::Zero(n_, 4 * n_);
        l.middleCols(offset, m.cols()) = m;
        return l;
    }

    Eigen::Index n_;
    CMat sigma_;
    CVec w_;
    cplx e_{0.0, 0.0};
};

// Exponent over (x, xbar) after integrating out y, plus the log prefactor.
std::pair<QuadExponent, cplx> integrate_symbol(const PshWeight& phi0, const ComplexQuadraticPolynomial& Q,
                                               double tol) {
    const auto n = phi0.n();
    JointExponent j(n);
    const CMat h = forms::hermitian_part(phi0);
    const CMat dx = j.x() - j.y();
    const CMat dxb = j.xbar() - j.ybar();
    j.bilinear(dxb, -4.0 * h, dx);
    j.bilinear(j.y(), Q.A(), j.y());
    j.bilinear(j.ybar(), Q.B(), j.y());
    j.bilinear(j.ybar(), Q.C(), j.ybar());
    j.linear(j.y(), Q.a());
    j.linear(j.ybar(), Q.b());
    j.constant(Q.e());

    std::vector<int> ys;
    for (int i = static_cast<int>(2 * n); i < static_cast<int>(4 * n); ++i) ys.push_back(i);
    const auto m = algebra::gaussian_marginalize(j.finish(), ys, tol);
    return {m.remaining, m.logPrefactor};
}

ComplexQuadraticPolynomial exponent_to_polynomial(const QuadExponent& g, Eigen::Index n) {
    return {0.5 * g.sigma.topLeftCorner(n, n), g.sigma.bottomLeftCorner(n, n), 0.5 * g.sigma.bottomRightCorner(n, n),
            g.w.head(n), g.w.tail(n), 0.0};
}

// Sample points of C^n used for restriction cross-checks.
std::vector<CVec> sample_points(Eigen::Index n) {
    std::vector<CVec> pts;
    for (Eigen::Index k = 0; k < n; ++k) {
        pts.push_back(CVec::Unit(n, k));
        pts.push_back(I * CVec::Unit(n, k));
    }
    CVec mix(n);
    for (Eigen::Index k = 0; k < n; ++k) mix(k) = cplx(0.7 - 0.3 * static_cast<double>(k), 0.4 + 0.2 * static_cast<double>(k));
    pts.push_back(mix);
    pts.push_back(-1.3 * mix.conjugate());
    return pts;
}

double weight_discrepancy(const PshWeight& a, const PshWeight& b) {
    const double scale = std::max({a.coefficient_scale(), b.coefficient_scale(), 1e-300});
    const double d = std::max({(a.A() - b.A()).cwiseAbs().maxCoeff(), (a.H() - b.H()).cwiseAbs().maxCoeff(),
                               a.n() ? (a.a() - b.a()).cwiseAbs().maxCoeff() : 0.0});
    return d / scale;
}

}  // namespace

SymbolExponent weyl_symbol(const PshWeight& phi0, const ComplexQuadraticPolynomial& Q, double tol) {
    if (Q.n() != phi0.n()) throw InputError("weyl_symbol: dimension mismatch");
    if (!phi0.is_homogeneous()) throw InputError("weyl_symbol: Phi0 must be a quadratic form");
    if (!phi0.strictly_psh(tol)) throw InputError("weyl_symbol: Phi0 is not strictly plurisubharmonic");
    const auto q = forms::principal_part(Q);
    if (!forms::check_majorization(phi0, q, tol).holds)
        throw HypothesisFailed("weyl_symbol: Re q(x) < Phi_herm(x) fails");
    if (!forms::check_nondegeneracy(phi0, q, tol).holds)
        throw HypothesisFailed("weyl_symbol: det d_x d_xbar (2 Phi0 - q) vanishes");

    const auto n = phi0.n();
    const auto [gq, logq] = integrate_symbol(phi0, Q, tol);
    const auto [g0, log0] = integrate_symbol(phi0, ComplexQuadraticPolynomial::zero(n), tol);

    SymbolExponent s;
    s.P = exponent_to_polynomial(gq, n) - exponent_to_polynomial(g0, n);
    s.logC = (logq + gq.e) - (log0 + g0.e);
    return s;
}

SymbolBoundedness symbol_bounded(const SymbolExponent& s, double tol, double band) {
    const auto real = forms::to_real_form(s.P.with_constant(0.0));
    SymbolBoundedness out;
    out.report = algebra::bounded_above(real, tol, 2.0 * s.P.coefficient_scale(), band);
    out.status = out.report.marginal ? SymbolStatus::Marginal
                                     : (out.report.bounded ? SymbolStatus::Yes : SymbolStatus::No);
    return out;
}

SymbolBoundedness symbol_bounded(const HolomorphicSymbol& h, const PshWeight& phi0, double tol, double band) {
    const symplectic::WeightPlane plane(phi0);
    const CMat r = plane.tangent_basis();
    // log|a| on the plane, in tangent coordinates: -Im F - Im l
    const RMat m = -symplectic::restricted_imaginary_part(h.F, plane);
    const RVec b = -(r.transpose() * h.ell.coefficients()).imag();
    const algebra::RealQuadPoly p(m, b, 0.0);
    const double scale = 2.0 * (spectral_norm(r.transpose() * h.F.theta * r) + (r.transpose() * h.ell.coefficients()).norm());
    SymbolBoundedness out;
    out.report = algebra::bounded_above(p, tol, scale, band);
    out.status = out.report.marginal ? SymbolStatus::Marginal
                                     : (out.report.bounded ? SymbolStatus::Yes : SymbolStatus::No);
    return out;
}

HolomorphicSymbol holomorphic_extension(const SymbolExponent& s, const PshWeight& phi0) {
    const auto n = phi0.n();
    if (s.P.n() != n) throw InputError("holomorphic_extension: dimension mismatch");
    if (!phi0.is_homogeneous()) throw InputError("holomorphic_extension: Phi0 must be a quadratic form");
    // On Lambda_Phi0: xi = -2i (A x + H^T xbar), so xbar = G xi + K x.
    const auto ht = phi0.H().transpose().partialPivLu();
    const CMat g = 0.5 * I * ht.solve(CMat::Identity(n, n));
    const CMat k = -ht.solve(phi0.A());

    const auto& P = s.P;
    // quadratic part x^T Mxx x + xi^T Mxix x + xi^T Mxixi xi
    const CMat mxx = P.A() + k.transpose() * P.B() + k.transpose() * P.C() * k;
    const CMat mxix = g.transpose() * P.B() + 2.0 * g.transpose() * P.C() * k;
    const CMat mxixi = g.transpose() * P.C() * g;
    CMat theta(2 * n, 2 * n);
    theta << mxx + mxx.transpose(), mxix.transpose(), mxix, mxixi + mxixi.transpose();

    CVec lin(2 * n);
    lin << P.a() + k.transpose() * P.b(), g.transpose() * P.b();

    HolomorphicSymbol h;
    h.F = HolomorphicQuadratic(-I * theta);
    h.ell = ComplexLinearForm::from_coefficients(-I * lin);
    h.logC = s.logC + P.e();

    const symplectic::WeightPlane plane(phi0);
    double worst = 0.0;
    for (const CVec& x : sample_points(n)) {
        const cplx src = s.log_value(x);
        const cplx ext = h.log_value(plane.point(x));
        worst = std::max(worst, std::abs(src - ext) / std::max(1.0, std::abs(src)));
    }
    h.restrictionResidual = worst;
    return h;
}

ExampleProblem example_problem(cplx lambda, const CVec& c, const CVec& d) {
    const auto n = c.size();
    if (d.size() != n) throw InputError("example_problem: c and d differ in dimension");
    ExampleProblem p;
    p.phi0 = PshWeight::homogeneous(CMat::Zero(n, n), 0.25 * CMat::Identity(n, n));
    p.Q = ComplexQuadraticPolynomial(CMat::Zero(n, n), lambda * CMat::Identity(n, n), CMat::Zero(n, n),
                                     0.5 * c.conjugate(), -0.5 * d, 0.0);
    return p;
}

bool is_example_family(const PshWeight& phi0, const ComplexQuadraticPolynomial& Q, double tol) {
    const auto n = phi0.n();
    if (!phi0.is_homogeneous()) return false;
    if (!phi0.A().isZero(tol) || !(phi0.H() - 0.25 * CMat::Identity(n, n)).isZero(tol)) return false;
    if (!Q.A().isZero(tol) || !Q.C().isZero(tol)) return false;
    const cplx lambda = Q.B()(0, 0);
    return (Q.B() - lambda * CMat::Identity(n, n)).isZero(tol);
}

Verdict analyze(const PshWeight& phi0, const ComplexQuadraticPolynomial& Q, const AnalyzeOptions& opts) {
    if (Q.n() != phi0.n()) throw InputError("analyze: dimension mismatch");
    if (!phi0.is_homogeneous()) throw InputError("analyze: Phi0 must be a quadratic form");
    if (!phi0.strictly_psh(opts.tol)) throw InputError("analyze: Phi0 is not strictly plurisubharmonic");

    Verdict v;
    v.options = opts;
    v.exampleFamily = is_example_family(phi0, Q);
    const auto q = forms::principal_part(Q);
    v.majorization = forms::check_majorization(phi0, q, opts.tol);
    v.nondegeneracy = forms::check_nondegeneracy(phi0, q, opts.tol);
    if (!v.majorization.holds || !v.nondegeneracy.holds) {
        v.conclusion = Conclusion::HypothesisFailed;
        v.note = !v.majorization.holds ? "Re q(x) < Phi_herm(x) fails" : "det d_x d_xbar (2 Phi0 - q) = 0";
        return v;
    }

    v.symbol = weyl_symbol(phi0, Q, opts.tol);
    v.symbolBounded = symbol_bounded(*v.symbol, opts.tol, opts.band);
    if (v.symbolBounded->status == SymbolStatus::Marginal) {
        v.conclusion = Conclusion::Marginal;
        v.note = "symbol boundedness decision lies inside the tolerance band";
        return v;
    }
    if (v.symbolBounded->status == SymbolStatus::No) {
        v.conclusion = Conclusion::SymbolUnbounded;
        if (v.exampleFamily) {
            v.operatorStatus = OperatorStatus::Unbounded;
            v.note = "Weyl symbol unbounded; for this family the operator is unbounded";
        } else {
            v.note = "Weyl symbol unbounded; operator boundedness unknown (conjectured unbounded)";
        }
        return v;
    }

    v.holomorphic = holomorphic_extension(*v.symbol, phi0);
    const auto fm = symplectic::fundamental_matrix(v.holomorphic->F);
    v.spectral = symplectic::spectral_report(fm, opts.tol);
    if (!v.spectral->admissible) {
        v.conclusion = Conclusion::SpectralObstruction;
        v.note = "fundamental matrix has an eigenvalue at +-2";
        return v;
    }

    try {
        const symplectic::WeightPlane plane0(phi0);
        const auto kf = symplectic::kappa_F(v.holomorphic->F, opts.tol);
        v.phi = symplectic::image_plane(kf, plane0, opts.tol).plane.weight();
        const RMat gap = forms::to_real_form(phi0 - *v.phi).M();
        v.phi0MinusPhi = algebra::psd_classify(gap, opts.tol, forms::to_real_form(phi0).coefficient_scale());

        const auto m = symplectic::translation_form(v.holomorphic->F, v.holomorphic->ell, opts.tol);
        v.psi = symplectic::translate_plane(*v.phi, m);
        const auto kfull = symplectic::kappa_full(v.holomorphic->F, v.holomorphic->ell, opts.tol);
        const PshWeight psiDirect = symplectic::image_plane(kfull, plane0, opts.tol).plane.weight();
        v.psiRouteDiscrepancy = weight_discrepancy(*v.psi, psiDirect);

        const auto diff = forms::to_real_form(*v.psi) - forms::to_real_form(phi0);
        const double scale = forms::to_real_form(phi0).coefficient_scale() +
                             forms::to_real_form(*v.psi).coefficient_scale();
        v.weightCertificate = algebra::bounded_above(diff, opts.tol, scale, opts.band);
    } catch (const Error& e) {
        v.conclusion = Conclusion::InternalInconsistency;
        v.note = std::string("bounded symbol but weight construction failed: ") + e.what();
        return v;
    }

    if (*v.psiRouteDiscrepancy > opts.routeTol) {
        v.conclusion = Conclusion::InternalInconsistency;
        v.note = "Psi differs between the translation route and the direct image";
    } else if (!v.weightCertificate->bounded) {
        v.conclusion = Conclusion::InternalInconsistency;
        v.note = "bounded symbol but Phi0 - Psi is not bounded below";
    } else {
        v.conclusion = Conclusion::Bounded;
        v.operatorStatus = OperatorStatus::Bounded;
        v.note = "Phi0 - Psi is bounded below";
    }
    return v;
}

}  // namespace toeplitz::weyl
