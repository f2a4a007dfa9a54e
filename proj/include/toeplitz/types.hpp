#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace toeplitz {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

/// Default relative tolerance for eigenvalue/rank decisions.
inline constexpr double kDefaultTol = 1e-9;

// Error hierarchy. Every failure the pipeline can report maps onto one of
// these; the CLI turns them into exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : Error {
    using Error::Error;
};

struct DivergentIntegral : Error {
    using Error::Error;
};

struct SpectralObstruction : Error {
    SpectralObstruction(const std::string& what, cplx eig) : Error(what), eigenvalue(eig) {}
    cplx eigenvalue;
};

struct NotAGraph : Error {
    using Error::Error;
};

struct NotLagrangianConsistent : Error {
    using Error::Error;
};

struct PositivityViolation : Error {
    using Error::Error;
};

struct HypothesisFailed : Error {
    using Error::Error;
};

struct TruncationError : Error {
    TruncationError(const std::string& what, double suggested) : Error(what), suggestedRadius(suggested) {}
    double suggestedRadius;
};

// Spectral norm of a (possibly complex) matrix; 0 for empty input.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m.eval());
    return svd.singularValues()(0);
}

}  // namespace toeplitz
