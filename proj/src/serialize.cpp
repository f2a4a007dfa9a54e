#include "toeplitz/serialize.hpp"

#include <array>
#include <fstream>

#include <Eigen/Cholesky>

namespace toeplitz::io {

using algebra::Definiteness;
using weyl::Conclusion;
using weyl::OperatorStatus;
using weyl::SymbolStatus;

namespace {

constexpr double kSymmetryTol = 1e-12;

template <typename Enum, std::size_t N>
Enum enum_from_json(const json& j, const std::array<Enum, N>& all, const char* what) {
    const auto s = j.get<std::string>();
    for (Enum e : all)
        if (to_string(e) == s) return e;
    throw InputError(std::string("unknown ") + what + " '" + s + "'");
}

constexpr std::array kDefiniteness = {Definiteness::PosDef, Definiteness::PosSemiDef, Definiteness::Indefinite,
                                      Definiteness::NegSemiDef, Definiteness::NegDef, Definiteness::Zero};
constexpr std::array kSymbolStatus = {SymbolStatus::Yes, SymbolStatus::No, SymbolStatus::Marginal};
constexpr std::array kConclusion = {Conclusion::Bounded, Conclusion::SymbolUnbounded, Conclusion::Marginal,
                                    Conclusion::HypothesisFailed, Conclusion::SpectralObstruction,
                                    Conclusion::InternalInconsistency};
constexpr std::array kOperatorStatus = {OperatorStatus::Bounded, OperatorStatus::Unbounded, OperatorStatus::Unknown};

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
    return j.at(name);
}

template <typename T, typename F>
void put_optional(json& j, const char* name, const std::optional<T>& v, F&& enc) {
    j[name] = v ? enc(*v) : json(nullptr);
}

template <typename T, typename F>
std::optional<T> get_optional(const json& j, const char* name, F&& dec) {
    if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
    return dec(j.at(name));
}

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

json to_json(const algebra::BoundednessReport& r) {
    json j;
    j["bounded"] = r.bounded;
    j["marginal"] = r.marginal;
    put_optional(j, "witness", r.witness, [](const RVec& v) { return io::to_json(v); });
    j["maxEigenvalue"] = r.maxEigenvalue;
    j["kernelResidual"] = r.kernelResidual;
    j["threshold"] = r.threshold;
    return j;
}

algebra::BoundednessReport boundedness_from_json(const json& j) {
    algebra::BoundednessReport r;
    r.bounded = field(j, "bounded").get<bool>();
    r.marginal = field(j, "marginal").get<bool>();
    r.witness = get_optional<RVec>(j, "witness", [](const json& x) { return rvec_from_json(x); });
    r.maxEigenvalue = field(j, "maxEigenvalue").get<double>();
    r.kernelResidual = field(j, "kernelResidual").get<double>();
    r.threshold = field(j, "threshold").get<double>();
    return r;
}

json to_json(const weyl::HolomorphicSymbol& h) {
    return {{"theta", io::to_json(h.F.theta)},
            {"lx", io::to_json(h.ell.lx)},
            {"lxi", io::to_json(h.ell.lxi)},
            {"lconst", io::to_json(h.ell.constant)},
            {"logC", io::to_json(h.logC)},
            {"restrictionResidual", h.restrictionResidual}};
}

weyl::HolomorphicSymbol holomorphic_from_json(const json& j) {
    weyl::HolomorphicSymbol h;
    const auto theta = field(j, "theta");
    const auto n = static_cast<Eigen::Index>(theta.size()) / 2;
    h.F = symplectic::HolomorphicQuadratic(cmat_from_json(theta, 2 * n));
    h.ell.lx = cvec_from_json(field(j, "lx"), n);
    h.ell.lxi = cvec_from_json(field(j, "lxi"), n);
    h.ell.constant = complex_from_json(field(j, "lconst"));
    h.logC = complex_from_json(field(j, "logC"));
    h.restrictionResidual = field(j, "restrictionResidual").get<double>();
    return h;
}

json to_json(const symplectic::SpectralReport& s) {
    return {{"eigenvalues", io::to_json(s.eigenvalues)},
            {"distanceToPlusMinusTwo", s.distanceToPlusMinusTwo},
            {"threshold", s.threshold},
            {"admissible", s.admissible},
            {"offending", io::to_json(s.offending)}};
}

symplectic::SpectralReport spectral_from_json(const json& j) {
    symplectic::SpectralReport s;
    const auto& ev = field(j, "eigenvalues");
    s.eigenvalues = cvec_from_json(ev, static_cast<Eigen::Index>(ev.size()));
    s.distanceToPlusMinusTwo = field(j, "distanceToPlusMinusTwo").get<double>();
    s.threshold = field(j, "threshold").get<double>();
    s.admissible = field(j, "admissible").get<bool>();
    s.offending = complex_from_json(field(j, "offending"));
    return s;
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVec& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(to_json(v(i)));
    return j;
}

json to_json(const CMat& m) {
    json j = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        j.push_back(row);
    }
    return j;
}

json to_json(const RVec& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

json to_json(const RMat& m) {
    json j = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        j.push_back(row);
    }
    return j;
}

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("complex numbers must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

CVec cvec_from_json(const json& j, Eigen::Index n) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
        throw InputError("expected a vector of length " + std::to_string(n));
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
    return v;
}

CMat cmat_from_json(const json& j, Eigen::Index n) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
        throw InputError("expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    CMat m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) m.row(r) = cvec_from_json(j[static_cast<std::size_t>(r)], n).transpose();
    return m;
}

RVec rvec_from_json(const json& j) {
    if (!j.is_array()) throw InputError("expected a real vector");
    RVec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

RMat rmat_from_json(const json& j) {
    if (!j.is_array()) throw InputError("expected a real matrix");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    RMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const RVec row = rvec_from_json(j[static_cast<std::size_t>(r)]);
        if (row.size() != cols) throw InputError("ragged real matrix");
        m.row(r) = row.transpose();
    }
    return m;
}

ProblemFile parse_problem(const json& j) {
    try {
        ProblemFile p;
        const auto& jn = field(j, "n");
        if (!jn.is_number_integer() || jn.get<long long>() < 1) throw InputError("n must be a positive integer");
        p.n = jn.get<Eigen::Index>();
        const auto n = p.n;
        const auto& jp = field(j, "phi0");
        const auto& jq = field(j, "Q");
        const CMat A0 = cmat_from_json(field(jp, "A"), n);
        const CMat H0 = cmat_from_json(field(jp, "H"), n);
        const CMat A = cmat_from_json(field(jq, "A"), n);
        const CMat B = cmat_from_json(field(jq, "B"), n);
        const CMat C = cmat_from_json(field(jq, "C"), n);
        const CVec a = cvec_from_json(field(jq, "a"), n);
        const CVec b = cvec_from_json(field(jq, "b"), n);
        const cplx e = complex_from_json(field(jq, "e"));

        const auto bad = [](const CMat& d, const CMat& ref) { return max_abs(d) > kSymmetryTol * std::max(1.0, max_abs(ref)); };
        if (bad(A0 - A0.transpose(), A0)) throw InputError("phi0.A is not symmetric");
        if (bad(H0 - H0.adjoint(), H0)) throw InputError("phi0.H is not Hermitian");
        if (bad(A - A.transpose(), A)) throw InputError("Q.A is not symmetric");
        if (bad(C - C.transpose(), C)) throw InputError("Q.C is not symmetric");
        const CMat Hh = 0.5 * (H0 + H0.adjoint());
        Eigen::LLT<CMat> llt(Hh);
        if (llt.info() != Eigen::Success || Hh.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() <= 0.0)
            throw InputError("phi0.H is not positive definite");

        p.phi0 = forms::PshWeight::homogeneous(A0, H0);
        p.Q = forms::ComplexQuadraticPolynomial(A, B, C, a, b, e);
        return p;
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed problem file: ") + ex.what());
    }
}

ProblemFile load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw InputError("malformed problem file: " + std::string(ex.what()));
    }
    return parse_problem(j);
}

json to_json(const ProblemFile& p) {
    return {{"n", p.n},
            {"phi0", {{"A", to_json(p.phi0.A())}, {"H", to_json(p.phi0.H())}}},
            {"Q",
             {{"A", to_json(p.Q.A())},
              {"B", to_json(p.Q.B())},
              {"C", to_json(p.Q.C())},
              {"a", to_json(p.Q.a())},
              {"b", to_json(p.Q.b())},
              {"e", to_json(p.Q.e())}}}};
}

json to_json(const forms::PshWeight& phi) {
    return {{"A", to_json(phi.A())}, {"H", to_json(phi.H())}, {"a", to_json(phi.a())}, {"e", phi.e()}};
}

forms::PshWeight weight_from_json(const json& j) {
    const auto& ja = field(j, "a");
    const auto n = static_cast<Eigen::Index>(ja.size());
    return {cmat_from_json(field(j, "A"), n), cmat_from_json(field(j, "H"), n), cvec_from_json(ja, n),
            field(j, "e").get<double>()};
}

json to_json(const forms::ComplexQuadraticPolynomial& q) {
    return {{"A", to_json(q.A())}, {"B", to_json(q.B())}, {"C", to_json(q.C())},
            {"a", to_json(q.a())}, {"b", to_json(q.b())}, {"e", to_json(q.e())}};
}

forms::ComplexQuadraticPolynomial polynomial_from_json(const json& j) {
    const auto& ja = field(j, "a");
    const auto n = static_cast<Eigen::Index>(ja.size());
    return {cmat_from_json(field(j, "A"), n), cmat_from_json(field(j, "B"), n), cmat_from_json(field(j, "C"), n),
            cvec_from_json(ja, n),           cvec_from_json(field(j, "b"), n), complex_from_json(field(j, "e"))};
}

json to_json(const weyl::SymbolExponent& s) {
    // the phase of logC depends on the principal-branch choice for det^{-1/2}
    return {{"P", to_json(s.P)}, {"logC", to_json(s.logC)}, {"logCPhase", "branch-convention"}};
}

weyl::SymbolExponent symbol_from_json(const json& j) {
    return {polynomial_from_json(field(j, "P")), complex_from_json(field(j, "logC"))};
}

json to_json(const weyl::Verdict& v) {
    json j;
    j["options"] = {{"tol", v.options.tol}, {"band", v.options.band}, {"routeTol", v.options.routeTol}};
    j["majorization"] = {{"holds", v.majorization.holds},
                         {"margin", v.majorization.margin},
                         {"definiteness", std::string(to_string(v.majorization.definiteness))}};
    j["nondegeneracy"] = {{"holds", v.nondegeneracy.holds}, {"det", to_json(v.nondegeneracy.det)}};
    put_optional(j, "symbol", v.symbol, [](const auto& s) { return io::to_json(s); });
    put_optional(j, "symbolBounded", v.symbolBounded, [](const weyl::SymbolBoundedness& s) {
        return json{{"status", std::string(to_string(s.status))}, {"report", to_json(s.report)}};
    });
    put_optional(j, "holomorphic", v.holomorphic, [](const auto& h) { return to_json(h); });
    put_optional(j, "spectral", v.spectral, [](const auto& s) { return to_json(s); });
    put_optional(j, "phi", v.phi, [](const auto& p) { return io::to_json(p); });
    put_optional(j, "psi", v.psi, [](const auto& p) { return io::to_json(p); });
    put_optional(j, "phi0MinusPhi", v.phi0MinusPhi, [](Definiteness d) { return json(std::string(to_string(d))); });
    put_optional(j, "psiRouteDiscrepancy", v.psiRouteDiscrepancy, [](double d) { return json(d); });
    put_optional(j, "weightCertificate", v.weightCertificate, [](const auto& r) { return to_json(r); });
    j["exampleFamily"] = v.exampleFamily;
    j["conclusion"] = std::string(to_string(v.conclusion));
    j["operatorStatus"] = std::string(to_string(v.operatorStatus));
    j["note"] = v.note;
    return j;
}

weyl::Verdict verdict_from_json(const json& j) {
    try {
        weyl::Verdict v;
        const auto& o = field(j, "options");
        v.options = {field(o, "tol").get<double>(), field(o, "band").get<double>(), field(o, "routeTol").get<double>()};
        const auto& m = field(j, "majorization");
        v.majorization.holds = field(m, "holds").get<bool>();
        v.majorization.margin = field(m, "margin").get<double>();
        v.majorization.definiteness = enum_from_json(field(m, "definiteness"), kDefiniteness, "definiteness");
        const auto& nd = field(j, "nondegeneracy");
        v.nondegeneracy.holds = field(nd, "holds").get<bool>();
        v.nondegeneracy.det = complex_from_json(field(nd, "det"));
        v.symbol = get_optional<weyl::SymbolExponent>(j, "symbol", [](const json& x) { return symbol_from_json(x); });
        v.symbolBounded = get_optional<weyl::SymbolBoundedness>(j, "symbolBounded", [](const json& x) {
            return weyl::SymbolBoundedness{enum_from_json(field(x, "status"), kSymbolStatus, "symbol status"),
                                           boundedness_from_json(field(x, "report"))};
        });
        v.holomorphic = get_optional<weyl::HolomorphicSymbol>(j, "holomorphic", holomorphic_from_json);
        v.spectral = get_optional<symplectic::SpectralReport>(j, "spectral", spectral_from_json);
        v.phi = get_optional<forms::PshWeight>(j, "phi", weight_from_json);
        v.psi = get_optional<forms::PshWeight>(j, "psi", weight_from_json);
        v.phi0MinusPhi = get_optional<Definiteness>(
            j, "phi0MinusPhi", [](const json& x) { return enum_from_json(x, kDefiniteness, "definiteness"); });
        v.psiRouteDiscrepancy = get_optional<double>(j, "psiRouteDiscrepancy", [](const json& x) { return x.get<double>(); });
        v.weightCertificate = get_optional<algebra::BoundednessReport>(j, "weightCertificate", boundedness_from_json);
        v.exampleFamily = field(j, "exampleFamily").get<bool>();
        v.conclusion = enum_from_json(field(j, "conclusion"), kConclusion, "conclusion");
        v.operatorStatus = enum_from_json(field(j, "operatorStatus"), kOperatorStatus, "operator status");
        v.note = field(j, "note").get<std::string>();
        return v;
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed verdict: ") + ex.what());
    }
}

json to_json(const VerdictReport& r) {
    return {{"toolVersion", r.toolVersion},
            {"tolerances",
             {{"tolPsd", r.tolerances.tolPsd},
              {"marginalBand", r.tolerances.marginalBand},
              {"oracleRel", r.tolerances.oracleRel}}},
            {"timings", {{"analyzeSeconds", r.analyzeSeconds}}},
            {"verdict", to_json(r.verdict)}};
}

VerdictReport report_from_json(const json& j) {
    try {
        VerdictReport r;
        r.toolVersion = field(j, "toolVersion").get<std::string>();
        const auto& t = field(j, "tolerances");
        r.tolerances = {field(t, "tolPsd").get<double>(), field(t, "marginalBand").get<double>(),
                        field(t, "oracleRel").get<double>()};
        r.analyzeSeconds = field(field(j, "timings"), "analyzeSeconds").get<double>();
        r.verdict = verdict_from_json(field(j, "verdict"));
        return r;
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed report: ") + ex.what());
    }
}

}  // namespace toeplitz::io
