#include "toeplitz/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "toeplitz/oracle.hpp"
#include "toeplitz/weyl.hpp"

namespace toeplitz::weyl {

namespace {

// Fits C on the first point and returns the worst relative mismatch of the rest.
IdentityResidual fit(std::string name, std::span<const cplx> oracle, std::span<const cplx> closed) {
    IdentityResidual r;
    r.name = std::move(name);
    r.fittedConstant = oracle[0] / closed[0];
    for (std::size_t k = 0; k < oracle.size(); ++k) {
        const cplx expected = r.fittedConstant * closed[k];
        r.residual = std::max(r.residual, std::abs(oracle[k] - expected) / std::abs(expected));
    }
    return r;
}

}  // namespace

IdentityReport metaplectic_identities_check(cplx lambda, cplx w, cplx h0, cplx h1, int pointsPerAxis) {
    if (!(lambda.real() < 0.25)) throw HypothesisFailed("metaplectic identities: Re lambda < 1/4 fails");
    const cplx g = gamma(lambda);
    const cplx wb = std::conj(w);
    const auto h = [=](cplx x) { return h0 + h1 * x; };
    const auto ew = [=](cplx x) { return std::exp(0.5 * x * wb); };
    const auto eq = [=](cplx x) { return std::exp(lambda * std::norm(x)); };

    const std::array<cplx, 5> xs = {cplx{0.0, 0.0}, cplx{0.5, 0.0}, cplx{-0.3, 0.4}, cplx{0.0, 1.0}, cplx{0.8, -0.2}};
    const auto grid = oracle::default_probe_grid(lambda, 0.0, 0.0, w, pointsPerAxis);

    IdentityReport report;
    std::vector<cplx> closed(xs.size());

    const auto topq = oracle::projection_apply([&](cplx y) { return eq(y) * ew(y); }, xs, grid);
    for (std::size_t k = 0; k < xs.size(); ++k) closed[k] = std::exp(0.5 * xs[k] * g * wb);
    report.identities.push_back(fit("Top(e^q) e_w", topq, closed));

    const auto toph = oracle::projection_apply([&](cplx y) { return std::conj(h(y)) * ew(y); }, xs, grid);
    for (std::size_t k = 0; k < xs.size(); ++k) closed[k] = std::conj(h(w)) * ew(xs[k]);
    report.identities.push_back(fit("Top(conj h) e_w", toph, closed));

    // Exact Gaussian moments of the left side against the composition on the right:
    //   int e^{x ybar/2} (conj h0 + conj h1 ybar) e^{-alpha |y|^2 + y wbar/2} dy
    //     = (pi/alpha) (conj h0 + conj h1 wbar/(2 alpha)) e^{x wbar/(4 alpha)}.
    const cplx a = 0.5 - lambda;
    const cplx lhsExp = 1.0 / (4.0 * a);
    const cplx lhsPre = (std::numbers::pi / a) * (std::conj(h0) + std::conj(h1) * wb / (2.0 * a));
    const cplx rhsExp = 0.5 * g;
    const cplx rhsPre = (std::numbers::pi / a) * std::conj(h(std::conj(g) * w));
    IdentityResidual coeff;
    coeff.name = "Top(conj h e^q) = Top(conj h) Top(e^q), coefficients";
    coeff.residual = std::max(std::abs(lhsExp - rhsExp) / std::abs(rhsExp),
                              std::abs(lhsPre - rhsPre) / std::max(std::abs(rhsPre), 1e-300));
    report.identities.push_back(coeff);

    const auto topqh = oracle::projection_apply([&](cplx y) { return std::conj(h(y)) * eq(y) * ew(y); }, xs, grid);
    for (std::size_t k = 0; k < xs.size(); ++k) closed[k] = std::conj(h(std::conj(g) * w)) * std::exp(0.5 * xs[k] * g * wb);
    report.identities.push_back(fit("Top(conj h e^q) e_w", topqh, closed));

    for (const auto& r : report.identities) report.maxResidual = std::max(report.maxResidual, r.residual);
    return report;
}

}  // namespace toeplitz::weyl
