#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toeplitz/weyl.hpp"

namespace toeplitz::cli {

inline constexpr const char* kToolVersion = "0.3.0";

namespace exit_code {
inline constexpr int kBounded = 0;
inline constexpr int kProbeMismatch = 1;
inline constexpr int kInputError = 2;
inline constexpr int kTruncation = 3;
inline constexpr int kSymbolUnbounded = 10;
inline constexpr int kMarginal = 11;
inline constexpr int kHypothesisFailed = 12;
inline constexpr int kSpectralObstruction = 13;
inline constexpr int kInternalInconsistency = 14;
}  // namespace exit_code

int exit_code_for(weyl::Conclusion c);

/// Parses "-0.5", "[re, im]" or "[[re, im], ...]" into a complex vector.
CVec parse_complex_vector(const std::string& text);
cplx parse_complex(const std::string& text);

struct LambdaGrid {
    double reMin = 0.0, reMax = 0.0;
    int reCount = 1;
    double imMin = 0.0, imMax = 0.0;
    int imCount = 1;

    std::vector<cplx> points() const;  // Re slow, Im fast
};

/// "reMin:reMax:count,imMin:imMax:count"; a bare "re,im" is a single point.
LambdaGrid parse_lambda_grid(const std::string& text);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toeplitz::cli
