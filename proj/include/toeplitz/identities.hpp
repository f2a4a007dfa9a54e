#pragma once

#include <string>
#include <vector>

#include "toeplitz/types.hpp"

namespace toeplitz::weyl {

struct IdentityResidual {
    std::string name;
    cplx fittedConstant{1.0, 0.0};
    double residual = 0.0;  // max relative mismatch over the sample points
};

struct IdentityReport {
    std::vector<IdentityResidual> identities;
    double maxResidual = 0.0;
};

/// Checks, for Phi0 = |x|^2/4 in one variable and h(x) = h0 + h1 x:
///   Top(e^q) e_w        = C gamma-scaled kernel        (oracle, one fitted constant)
///   Top(conj h) e_w     = conj h(w) e_w                (oracle, one fitted constant)
///   Top(conj h e^q) e_w = Top(conj h) Top(e^q) e_w     (coefficients, then oracle)
/// where e_w(x) = exp(x wbar / 2) and q = lambda |x|^2.
/// Throws HypothesisFailed unless Re lambda < 1/4.
IdentityReport metaplectic_identities_check(cplx lambda, cplx w, cplx h0, cplx h1, int pointsPerAxis = 64);

}  // namespace toeplitz::weyl
