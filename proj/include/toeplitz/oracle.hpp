#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "toeplitz/forms.hpp"
#include "toeplitz/quadrature_kernels.hpp"
#include "toeplitz/types.hpp"

// Brute-force quadrature used to check the closed forms. Everything here is
// deliberately independent of the Gaussian engine in `algebra`.
namespace toeplitz::oracle {

enum class Scheme { Uniform, GaussHermite };

enum class Execution { Serial, Parallel };

/// Integrands whose mass beyond the truncation box exceeds this share are rejected.
inline constexpr double kBoundaryMassLimit = 1e-8;

struct QuadratureGrid {
    Scheme scheme = Scheme::Uniform;
    double radius = 0.0;  // per real coordinate, around the integrand center
    int pointsPerAxis = 32;

    void validate() const;
};

/// radius = sqrt(40 / decayRate): the Gaussian tail beyond carries less than e^-40.
double radius_for_decay(double decayRate);

struct Integrand {
    int dims = 2;  // real dimension, at most 4
    kernels::PointFn fn;
    /// Smallest rate c with |f(t)| <~ exp(-c |t - center|^2).
    double decayRate = 1.0;
    RVec center;  // empty means the origin
};

struct ProbeResult {
    cplx value{0.0, 0.0};
    /// |I(N) - I(2N)|; value is the 2N result.
    double errorEstimate = 0.0;
    QuadratureGrid gridUsed;
};

/// Tensor quadrature at pointsPerAxis and again at twice that. Throws
/// TruncationError when the outer shell of the refined grid carries too much mass.
ProbeResult quad_integrate(const Integrand& f, const QuadratureGrid& grid, Execution exec = Execution::Parallel);

/// Whitened integrand for exp(p(y)) over y in C^n, n <= 2, where Re p must be
/// strictly concave. The substitution y = y* + L t makes the decay isotropic.
Integrand gaussian_integrand(const forms::ComplexQuadraticPolynomial& p);

/// a(x) for Top(e^Q) on H_Phi0 as the ratio of two brute-force integrals of
/// exp(-4 Phi_herm(x - y) + Q(y)) and exp(-4 Phi_herm(x - y)).
ProbeResult symbol_by_quadrature(const forms::PshWeight& phi0, const forms::ComplexQuadraticPolynomial& Q,
                                 const CVec& x, const QuadratureGrid& grid, Execution exec = Execution::Parallel);

// ---------------------------------------------------------------------------
// n = 1 model with Phi0 = |x|^2/4.

using Function1 = std::function<cplx(cplx)>;

/// A square grid in C shared by every integral of a probe.
struct PlaneGrid {
    cplx center{0.0, 0.0};
    double radius = 10.0;
    int pointsPerAxis = 64;

    kernels::AxisRule re() const;
    kernels::AxisRule im() const;
    std::vector<cplx> nodes() const;  // real part slow, imaginary part fast
};

/// 1 / sum_y exp(-|y|^2/2) w_y, i.e. the constant that makes Pi k_0 = k_0 at x = 0
/// on this grid.
double projection_constant(const PlaneGrid& grid);

/// Pi u at the requested points. Throws TruncationError if u exp(-|y|^2/2)
/// is not negligible on the edge of the grid.
std::vector<cplx> projection_apply(const Function1& u, std::span<const cplx> xs, const PlaneGrid& grid,
                                   Execution exec = Execution::Parallel);

/// Probe grid covering both the inner and the outer integral of a Toeplitz probe.
PlaneGrid default_probe_grid(cplx lambda, cplx c, cplx d, cplx w, int pointsPerAxis = 64);

/// ||Top(e^Q) k_w|| for Q = lambda |x|^2 + cbar x / 2 - d xbar / 2, by nested
/// quadrature at pointsPerAxis and twice that. Throws HypothesisFailed unless Re lambda < 1/4.
ProbeResult oracle_toeplitz_norm(cplx lambda, cplx c, cplx d, cplx w, const PlaneGrid& grid,
                                 Execution exec = Execution::Parallel);

struct ProbeRow {
    cplx w;
    double closedLogNorm;  // log-norm from the closed form, without log|C|
    double oracleLogNorm;
    double oracleError;    // refinement estimate, relative
    double residual;       // |norm ratio - 1| after fitting C on the first row
};

struct ProbeComparison {
    std::vector<ProbeRow> rows;
    double fittedLogConstant = 0.0;
    double maxResidual = 0.0;
};

/// Oracle norms at each w against the closed form, with exactly one constant
/// fitted on the first point. Each w gets its own default_probe_grid.
ProbeComparison compare_probe(cplx lambda, cplx c, cplx d, std::span<const cplx> ws, int pointsPerAxis = 64,
                              Execution exec = Execution::Parallel);

struct ScanOptions {
    double tol = 1e-9;
    /// Radii at which the closed form is re-derived by quadrature; empty skips it.
    std::vector<double> oracleRadii;
    int oraclePoints = 64;
};

struct ScanResult {
    std::vector<double> radii;
    std::vector<double> logNorms;  // closed form, log|C| dropped
    double slope = 0.0;            // d logNorm / d |w|^2
    double expectedSlope = 0.0;    // (|gamma|^2 - 1) / 4
    bool hypothesisHolds = true;   // Re lambda < 1/4
    bool growing = false;          // slope > tol
    std::optional<double> oracleSlope;
    std::vector<double> oracleLogNorms;
};

/// Least-squares fit of log ||Top(e^Q) k_w|| against |w|^2 along w = r direction.
/// The fit model is s |w|^2 + t |w| + u so the linear terms from c and d do not
/// bias the quadratic coefficient. When Re lambda >= 1/4 the closed form is still
/// evaluated as an algebraic expression but no oracle check is attempted.
ScanResult unboundedness_scan(cplx lambda, const CVec& c, const CVec& d, const CVec& direction,
                              std::span<const double> radii, const ScanOptions& opts = {});

}  // namespace toeplitz::oracle
