#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "toeplitz/forms.hpp"
#include "toeplitz/weyl.hpp"

// JSON encoding. Complex numbers are [re, im] pairs, vectors are arrays of
// pairs and matrices are arrays of rows.
namespace toeplitz::io {

using nlohmann::json;

json to_json(cplx z);
json to_json(const CVec& v);
json to_json(const CMat& m);
json to_json(const RVec& v);
json to_json(const RMat& m);

cplx complex_from_json(const json& j);
CVec cvec_from_json(const json& j, Eigen::Index n);
CMat cmat_from_json(const json& j, Eigen::Index n);
RVec rvec_from_json(const json& j);
RMat rmat_from_json(const json& j);

struct ProblemFile {
    Eigen::Index n = 0;
    forms::PshWeight phi0;
    forms::ComplexQuadraticPolynomial Q;
};

/// Throws InputError on schema violations, asymmetric A or C, non-Hermitian H
/// (all within 1e-12) or H not positive definite.
ProblemFile parse_problem(const json& j);
ProblemFile load_problem(const std::filesystem::path& path);
json to_json(const ProblemFile& p);

json to_json(const forms::PshWeight& phi);
forms::PshWeight weight_from_json(const json& j);
json to_json(const forms::ComplexQuadraticPolynomial& q);
forms::ComplexQuadraticPolynomial polynomial_from_json(const json& j);
json to_json(const weyl::SymbolExponent& s);
weyl::SymbolExponent symbol_from_json(const json& j);

json to_json(const weyl::Verdict& v);
weyl::Verdict verdict_from_json(const json& j);

struct Tolerances {
    double tolPsd = 1e-9;
    double marginalBand = 1e-9;
    double oracleRel = 1e-3;
};

struct VerdictReport {
    std::string toolVersion;
    Tolerances tolerances;
    double analyzeSeconds = 0.0;
    weyl::Verdict verdict;
};

json to_json(const VerdictReport& r);
VerdictReport report_from_json(const json& j);

}  // namespace toeplitz::io
