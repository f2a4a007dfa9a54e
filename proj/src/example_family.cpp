#include <cmath>
#include <numbers>

#include "toeplitz/weyl.hpp"

namespace toeplitz::weyl {

namespace {

// Polarization of |x|^2/4.
cplx psi0(const CVec& x, const CVec& y) { return 0.25 * (x.transpose() * y)(0); }

double phi0(const CVec& x) { return 0.25 * x.squaredNorm(); }

void require_hypothesis(cplx lambda) {
    if (!(lambda.real() < 0.25)) throw HypothesisFailed("Re lambda < 1/4 fails");
}

}  // namespace

std::string_view to_string(ExampleClass c) {
    switch (c) {
        case ExampleClass::Bounded: return "Bounded";
        case ExampleClass::Unbounded: return "Unbounded";
        case ExampleClass::MarginalBand: return "MarginalBand";
    }
    return "?";
}

cplx gamma(cplx lambda) {
    const cplx denom = 1.0 - 2.0 * lambda;
    if (denom == cplx{0.0, 0.0}) throw InputError("gamma: pole at lambda = 1/2");
    return 1.0 / denom;
}

ExampleClassification classify_example(cplx lambda, const CVec& c, const CVec& d, double tol, double band) {
    if (c.size() != d.size()) throw InputError("classify_example: c and d differ in dimension");
    require_hypothesis(lambda);
    ExampleClassification out;
    out.gamma = gamma(lambda);
    const double off = std::abs(out.gamma) - 1.0;
    if (std::abs(off) > tol) {
        out.bounded = off < 0.0;
        const bool nearEdge = std::abs(off) <= tol + band;
        out.result = nearEdge ? ExampleClass::MarginalBand
                              : (out.bounded ? ExampleClass::Bounded : ExampleClass::Unbounded);
        return out;
    }
    const double scale = c.norm() + d.norm();
    const double gap = (c - out.gamma * d).norm();
    out.bounded = gap <= tol * scale;
    const bool nearEdge = gap > tol * scale && gap <= (tol + band) * scale;
    out.result = nearEdge ? ExampleClass::MarginalBand
                          : (out.bounded ? ExampleClass::Bounded : ExampleClass::Unbounded);
    return out;
}

cplx CoherentState::operator()(const CVec& x) const {
    return std::exp(logPrefactor + (linear.transpose() * x)(0) + constant);
}

CoherentState coherent_state(const CVec& w) {
    const auto n = static_cast<double>(w.size());
    return {0.5 * w.conjugate(), cplx{-phi0(w), 0.0}, -0.5 * n * std::log(2.0 * std::numbers::pi)};
}

double kernel_log_norm(cplx g, const CVec& c, const CVec& d, const CVec& w) {
    if (c.size() != d.size() || w.size() != c.size()) throw InputError("kernel_log_norm: dimension mismatch");
    return phi0(std::conj(g) * (w + c)) - phi0(w) - 2.0 * psi0(d, g * w.conjugate()).real();
}

KernelImage toeplitz_on_kernel(cplx lambda, const CVec& c, const CVec& d, const CVec& w, double tol) {
    if (c.size() != d.size() || w.size() != c.size()) throw InputError("toeplitz_on_kernel: dimension mismatch");
    require_hypothesis(lambda);
    KernelImage k;
    k.gamma = gamma(lambda);
    const CVec shifted = k.gamma * (w.conjugate() + c.conjugate());
    k.linear = 0.5 * shifted;
    k.constant = -2.0 * psi0(d, shifted) - phi0(w);
    k.logNorm = kernel_log_norm(k.gamma, c, d, w);
    k.logNormConstant = -2.0 * psi0(d, k.gamma * c.conjugate()).real();
    if (std::abs(std::abs(k.gamma) - 1.0) <= tol) {
        k.reducedLogNorm = 2.0 * psi0(w, c.conjugate()).real() -
                           2.0 * psi0(w, std::conj(k.gamma) * d.conjugate()).real();
    }
    return k;
}

}  // namespace toeplitz::weyl
