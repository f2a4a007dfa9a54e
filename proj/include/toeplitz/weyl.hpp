#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "toeplitz/algebra.hpp"
#include "toeplitz/forms.hpp"
#include "toeplitz/symplectic.hpp"

namespace toeplitz::weyl {

using forms::ComplexQuadraticPolynomial;
using forms::PshWeight;

/// a(x, xi(x)) = exp(logC + P(x, xbar)) on Lambda_Phi0.
struct SymbolExponent {
    ComplexQuadraticPolynomial P;
    cplx logC{0.0, 0.0};

    cplx log_value(const CVec& x) const { return logC + P(x); }
};

/// a = exp(logC) exp(i (F + l)) on C^{2n}.
struct HolomorphicSymbol {
    symplectic::HolomorphicQuadratic F;
    symplectic::ComplexLinearForm ell;
    cplx logC{0.0, 0.0};
    /// Max relative mismatch against the source exponent on sample points of Lambda_Phi0.
    double restrictionResidual = 0.0;

    cplx log_value(const CVec& rho) const { return logC + I * (F(rho) + ell(rho)); }
};

/// Weyl symbol of Top(e^Q) by exact Gaussian integration of
/// exp(-4 Phi_herm(x - y)) e^{Q(y)} over y, normalized so that Q = 0 gives a = 1.
/// Throws HypothesisFailed if Re q < Phi_herm or the nondegeneracy condition fails.
SymbolExponent weyl_symbol(const PshWeight& phi0, const ComplexQuadraticPolynomial& Q, double tol = kDefaultTol);

enum class SymbolStatus { Yes, No, Marginal };
std::string_view to_string(SymbolStatus s);

struct SymbolBoundedness {
    SymbolStatus status = SymbolStatus::No;
    algebra::BoundednessReport report;
};

/// |a| bounded on Lambda_Phi0, i.e. Re P bounded above.
SymbolBoundedness symbol_bounded(const SymbolExponent& s, double tol = kDefaultTol, double band = kDefaultTol);

/// The same question asked of the holomorphic form: Im F >= 0 on Lambda_Phi0
/// and Im l = 0 on the zero set of Im F.
SymbolBoundedness symbol_bounded(const HolomorphicSymbol& h, const PshWeight& phi0, double tol = kDefaultTol,
                                 double band = kDefaultTol);

/// Unique holomorphic extension of the symbol off the maximally totally real
/// plane Lambda_Phi0, split into i F (quadratic), i l (linear) and logC.
HolomorphicSymbol holomorphic_extension(const SymbolExponent& s, const PshWeight& phi0);

enum class Conclusion { Bounded, SymbolUnbounded, Marginal, HypothesisFailed, SpectralObstruction, InternalInconsistency };
std::string_view to_string(Conclusion c);

enum class OperatorStatus { Bounded, Unbounded, Unknown };
std::string_view to_string(OperatorStatus s);

struct AnalyzeOptions {
    double tol = kDefaultTol;
    double band = kDefaultTol;
    /// Relative agreement required between the two routes to Psi.
    double routeTol = 1e-6;
};

struct Verdict {
    AnalyzeOptions options;
    forms::MajorizationReport majorization;
    forms::NondegeneracyReport nondegeneracy;
    std::optional<SymbolExponent> symbol;
    std::optional<SymbolBoundedness> symbolBounded;
    std::optional<HolomorphicSymbol> holomorphic;
    std::optional<symplectic::SpectralReport> spectral;
    std::optional<PshWeight> phi;
    std::optional<PshWeight> psi;
    std::optional<algebra::Definiteness> phi0MinusPhi;
    std::optional<double> psiRouteDiscrepancy;
    std::optional<algebra::BoundednessReport> weightCertificate;
    bool exampleFamily = false;
    Conclusion conclusion = Conclusion::HypothesisFailed;
    OperatorStatus operatorStatus = OperatorStatus::Unknown;
    std::string note;
};

/// Full boundedness pipeline for Top(e^Q) on H_Phi0.
Verdict analyze(const PshWeight& phi0, const ComplexQuadraticPolynomial& Q, const AnalyzeOptions& opts = {});

// ---------------------------------------------------------------------------
// The explicit family Phi0 = |x|^2/4, Q = lambda |x|^2 + c^*.x/2 - d.xbar/2.

struct ExampleProblem {
    PshWeight phi0;
    ComplexQuadraticPolynomial Q;
};

ExampleProblem example_problem(cplx lambda, const CVec& c, const CVec& d);

/// Recognizes problems of the explicit family (up to the constant term of Q).
bool is_example_family(const PshWeight& phi0, const ComplexQuadraticPolynomial& Q, double tol = 1e-12);

/// gamma = 1 / (1 - 2 lambda). Throws InputError at the pole lambda = 1/2.
cplx gamma(cplx lambda);

enum class ExampleClass { Bounded, Unbounded, MarginalBand };
std::string_view to_string(ExampleClass c);

struct ExampleClassification {
    ExampleClass result = ExampleClass::Bounded;
    bool bounded = true;  // decision reported even inside the marginal band
    cplx gamma{1.0, 0.0};
};

/// Throws HypothesisFailed unless Re lambda < 1/4.
ExampleClassification classify_example(cplx lambda, const CVec& c, const CVec& d, double tol = kDefaultTol,
                                       double band = kDefaultTol);

/// k_w(x) = (2 pi)^{-n/2} exp(linear.x + constant), the normalized reproducing
/// kernel of H_Phi0 for Phi0 = |x|^2/4.
struct CoherentState {
    CVec linear;     // coefficients of 2 Psi0(x, wbar) in x
    cplx constant;   // -Phi0(w)
    double logPrefactor;

    cplx operator()(const CVec& x) const;
};

CoherentState coherent_state(const CVec& w);

/// Closed form of Top(e^Q) k_w up to the undetermined factor C_lambda:
///   exp(linear.x + constant).
struct KernelImage {
    cplx gamma;
    CVec linear;    // 2 Psi0(x, gamma (wbar + cbar)) as a linear form in x
    cplx constant;  // -2 Psi0(d, gamma (wbar + cbar)) - Phi0(w)
    /// Phi0(conj(gamma)(w + c)) - Phi0(w) - 2 Re Psi0(d, gamma wbar).
    double logNorm;
    /// w-independent remainder -2 Re Psi0(d, gamma cbar); log|C_lambda| stays unknown.
    double logNormConstant;
    /// 2 Re Psi0(w, cbar) - 2 Re Psi0(w, conj(gamma) dbar); present when |gamma| = 1.
    std::optional<double> reducedLogNorm;
};

/// Phi0(conj(gamma)(w + c)) - Phi0(w) - 2 Re Psi0(d, gamma wbar) as an algebraic
/// expression in gamma; no hypothesis on lambda is checked.
double kernel_log_norm(cplx gamma, const CVec& c, const CVec& d, const CVec& w);

/// Throws HypothesisFailed unless Re lambda < 1/4.
KernelImage toeplitz_on_kernel(cplx lambda, const CVec& c, const CVec& d, const CVec& w, double tol = kDefaultTol);

}  // namespace toeplitz::weyl
