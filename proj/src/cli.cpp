#include "toeplitz/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "toeplitz/oracle.hpp"
#include "toeplitz/serialize.hpp"

namespace toeplitz::cli {

using io::json;

int exit_code_for(weyl::Conclusion c) {
    switch (c) {
        case weyl::Conclusion::Bounded: return exit_code::kBounded;
        case weyl::Conclusion::SymbolUnbounded: return exit_code::kSymbolUnbounded;
        case weyl::Conclusion::Marginal: return exit_code::kMarginal;
        case weyl::Conclusion::HypothesisFailed: return exit_code::kHypothesisFailed;
        case weyl::Conclusion::SpectralObstruction: return exit_code::kSpectralObstruction;
        case weyl::Conclusion::InternalInconsistency: return exit_code::kInternalInconsistency;
    }
    return exit_code::kInternalInconsistency;
}

CVec parse_complex_vector(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception&) {
        throw InputError("cannot parse complex value '" + text + "'");
    }
    if (j.is_number()) return CVec::Constant(1, cplx{j.get<double>(), 0.0});
    if (j.is_array() && j.size() == 2 && j[0].is_number()) return CVec::Constant(1, io::complex_from_json(j));
    if (j.is_array() && !j.empty()) return io::cvec_from_json(j, static_cast<Eigen::Index>(j.size()));
    throw InputError("expected a number, [re, im] or a list of pairs: '" + text + "'");
}

cplx parse_complex(const std::string& text) {
    const CVec v = parse_complex_vector(text);
    if (v.size() != 1) throw InputError("expected a single complex number: '" + text + "'");
    return v(0);
}

std::vector<cplx> LambdaGrid::points() const {
    std::vector<cplx> out;
    const auto at = [](double lo, double hi, int count, int k) {
        return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    };
    for (int a = 0; a < reCount; ++a)
        for (int b = 0; b < imCount; ++b) out.emplace_back(at(reMin, reMax, reCount, a), at(imMin, imMax, imCount, b));
    return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InputError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw InputError("not a number: '" + s + "'");
    return v;
}

void parse_axis(const std::string& s, double& lo, double& hi, int& count) {
    const auto p = split(s, ':');
    if (p.size() == 1) {
        lo = hi = to_double(p[0]);
        count = 1;
    } else if (p.size() == 3) {
        lo = to_double(p[0]);
        hi = to_double(p[1]);
        const double c = to_double(p[2]);
        if (c < 1 || c != std::floor(c)) throw InputError("grid count must be a positive integer");
        count = static_cast<int>(c);
        if (count == 1) hi = lo;
    } else {
        throw InputError("grid axis must be 'value' or 'min:max:count'");
    }
}

}  // namespace

LambdaGrid parse_lambda_grid(const std::string& text) {
    const auto axes = split(text, ',');
    if (axes.size() != 2) throw InputError("lambda grid needs a real and an imaginary axis separated by ','");
    LambdaGrid g;
    parse_axis(axes[0], g.reMin, g.reMax, g.reCount);
    parse_axis(axes[1], g.imMin, g.imMax, g.imCount);
    return g;
}

namespace {

struct Common {
    io::Tolerances tol;
    bool timings = false;
};

weyl::AnalyzeOptions analyze_options(const Common& c) {
    weyl::AnalyzeOptions o;
    o.tol = c.tol.tolPsd;
    o.band = c.tol.marginalBand;
    return o;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

int cmd_analyze(const std::string& path, const Common& c, std::ostream& out) {
    const auto problem = io::load_problem(path);
    const auto t0 = std::chrono::steady_clock::now();
    io::VerdictReport r;
    r.toolVersion = kToolVersion;
    r.tolerances = c.tol;
    r.verdict = weyl::analyze(problem.phi0, problem.Q, analyze_options(c));
    if (c.timings)
        r.analyzeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << io::to_json(r).dump(2) << '\n';
    return exit_code_for(r.verdict.conclusion);
}

// Deterministic sample points for the quadrature comparison.
std::vector<CVec> weyl_sample_points(Eigen::Index n) {
    std::vector<CVec> pts;
    pts.push_back(CVec::Zero(n));
    for (int k = 1; k <= 3; ++k) {
        CVec x(n);
        for (Eigen::Index i = 0; i < n; ++i)
            x(i) = cplx(0.4 * k - 0.3 * static_cast<double>(i), 0.25 * k * (i % 2 ? -1.0 : 1.0));
        pts.push_back(x);
    }
    return pts;
}

int cmd_weyl(const std::string& path, bool withOracle, const Common& c, std::ostream& out) {
    const auto problem = io::load_problem(path);
    weyl::SymbolExponent s;
    try {
        s = weyl::weyl_symbol(problem.phi0, problem.Q, c.tol.tolPsd);
    } catch (const HypothesisFailed& e) {
        out << json{{"error", e.what()}}.dump(2) << '\n';
        return exit_code::kHypothesisFailed;
    }
    json j = {{"toolVersion", kToolVersion}, {"symbol", io::to_json(s)}};
    int code = exit_code::kBounded;
    if (withOracle) {
        if (problem.n > 2) throw InputError("--oracle supports n <= 2");
        const oracle::QuadratureGrid grid{oracle::Scheme::Uniform, 0.0, problem.n == 1 ? 48 : 16};
        json rows = json::array();
        double worst = 0.0;
        for (const CVec& x : weyl_sample_points(problem.n)) {
            const cplx closed = std::exp(s.log_value(x));
            const auto q = oracle::symbol_by_quadrature(problem.phi0, problem.Q, x, grid);
            const double rel = std::abs(q.value - closed) / std::abs(closed);
            worst = std::max(worst, rel);
            rows.push_back({{"x", io::to_json(x)},
                            {"closedForm", io::to_json(closed)},
                            {"quadrature", io::to_json(q.value)},
                            {"errorEstimate", q.errorEstimate},
                            {"relativeError", rel}});
        }
        j["oracle"] = {{"points", rows}, {"maxRelativeError", worst}, {"threshold", c.tol.oracleRel}};
        if (worst > c.tol.oracleRel) code = exit_code::kProbeMismatch;
    }
    out << j.dump(2) << '\n';
    return code;
}

int example_exit(weyl::ExampleClass k) {
    switch (k) {
        case weyl::ExampleClass::Bounded: return exit_code::kBounded;
        case weyl::ExampleClass::Unbounded: return exit_code::kSymbolUnbounded;
        case weyl::ExampleClass::MarginalBand: return exit_code::kMarginal;
    }
    return exit_code::kInternalInconsistency;
}

int cmd_example(const std::string& lam, const std::string& cs, const std::string& ds, const Common& c,
                std::ostream& out) {
    const cplx lambda = parse_complex(lam);
    const CVec cv = parse_complex_vector(cs);
    CVec dv = parse_complex_vector(ds);
    if (dv.size() == 1 && cv.size() > 1 && dv(0) == cplx{0.0, 0.0}) dv = CVec::Zero(cv.size());
    if (dv.size() != cv.size()) throw InputError("--c and --d must have the same length");

    weyl::ExampleClassification cls;
    try {
        cls = weyl::classify_example(lambda, cv, dv, c.tol.tolPsd, c.tol.marginalBand);
    } catch (const HypothesisFailed& e) {
        out << json{{"error", e.what()}, {"lambda", io::to_json(lambda)}}.dump(2) << '\n';
        return exit_code::kHypothesisFailed;
    }
    const auto problem = weyl::example_problem(lambda, cv, dv);
    const auto s = weyl::weyl_symbol(problem.phi0, problem.Q, c.tol.tolPsd);
    const cplx g = cls.gamma;
    const double g2 = std::norm(g);
    const CVec u = 0.5 * g2 * cv - 0.5 * g * dv;
    json j = {{"toolVersion", kToolVersion},
              {"lambda", io::to_json(lambda)},
              {"gamma", io::to_json(g)},
              {"absGamma", std::abs(g)},
              {"classification", std::string(weyl::to_string(cls.result))},
              {"bounded", cls.bounded},
              {"symbol",
               {{"quadratic", io::to_json(lambda / (1.0 - lambda))},
                {"linearX", io::to_json(CVec(cv.conjugate() / (2.0 * (1.0 - lambda))))},
                {"linearXbar", io::to_json(CVec(-dv / (2.0 * (1.0 - lambda))))},
                {"computed", io::to_json(s)}}},
              // log ||Top(e^Q) k_w|| = log|C| + quadratic |w|^2 + Re(wbar . linear) + constant
              {"logNorm",
               {{"quadratic", 0.25 * (g2 - 1.0)},
                {"linear", io::to_json(u)},
                {"constant", 0.25 * g2 * cv.squaredNorm()}}},
              {"tolerances", {{"tolPsd", c.tol.tolPsd}, {"marginalBand", c.tol.marginalBand}}}};
    out << j.dump(2) << '\n';
    return example_exit(cls.result);
}

struct ScanRow {
    cplx lambda;
    double absGamma = 0.0;
    std::string verdict;
    double slope = 0.0;
};

int cmd_scan(const std::string& gridText, const std::string& cs, const std::string& ds, const std::string& outPath,
             const Common& c, std::ostream& out) {
    const auto lambdas = parse_lambda_grid(gridText).points();
    const CVec cv = parse_complex_vector(cs);
    const CVec dv = parse_complex_vector(ds);
    if (dv.size() != cv.size()) throw InputError("--c and --d must have the same length");
    const CVec dir = CVec::Unit(cv.size(), 0);
    const std::vector<double> radii = {1.0, 2.0, 3.0, 4.0, 5.0};

    std::vector<ScanRow> rows(lambdas.size());
    const auto count = static_cast<std::ptrdiff_t>(lambdas.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        auto& row = rows[static_cast<std::size_t>(k)];
        row.lambda = lambdas[static_cast<std::size_t>(k)];
        if (row.lambda == cplx{0.5, 0.0}) {
            row.absGamma = std::numeric_limits<double>::infinity();
            row.verdict = "HypothesisFailed";
            row.slope = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        row.absGamma = std::abs(weyl::gamma(row.lambda));
        row.slope = oracle::unboundedness_scan(row.lambda, cv, dv, dir, radii).slope;
        if (!(row.lambda.real() < 0.25)) {
            row.verdict = "HypothesisFailed";
        } else {
            const auto cls = weyl::classify_example(row.lambda, cv, dv, c.tol.tolPsd, c.tol.marginalBand);
            row.verdict = std::string(weyl::to_string(cls.result));
        }
    }

    if (!outPath.empty()) {
        std::ofstream csv(outPath);
        if (!csv) throw InputError("cannot write " + outPath);
        csv << "lambda_re,lambda_im,abs_gamma,verdict,slope\n";
        for (const auto& r : rows)
            csv << fmt(r.lambda.real()) << ',' << fmt(r.lambda.imag()) << ',' << fmt(r.absGamma) << ',' << r.verdict
                << ',' << fmt(r.slope) << '\n';
        out << json{{"rows", rows.size()}, {"csv", outPath}}.dump() << '\n';
    } else {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"lambda", io::to_json(r.lambda)},
                           {"absGamma", r.absGamma},
                           {"verdict", r.verdict},
                           {"slope", r.slope}});
        out << json{{"toolVersion", kToolVersion}, {"rows", arr}}.dump(2) << '\n';
    }
    return exit_code::kBounded;
}

int cmd_probe(const std::string& lam, const std::string& cs, const std::string& ds, const std::string& ws,
              int points, const std::string& outPath, const Common& c, std::ostream& out) {
    const cplx lambda = parse_complex(lam);
    const cplx cc = parse_complex(cs);
    const cplx dd = parse_complex(ds);
    const CVec wv = parse_complex_vector(ws);
    std::vector<cplx> w(wv.data(), wv.data() + wv.size());
    oracle::ProbeComparison cmp;
    try {
        cmp = oracle::compare_probe(lambda, cc, dd, w, points);
    } catch (const HypothesisFailed& e) {
        out << json{{"error", e.what()}}.dump(2) << '\n';
        return exit_code::kHypothesisFailed;
    } catch (const TruncationError& e) {
        out << json{{"error", e.what()}, {"suggestedRadius", e.suggestedRadius}}.dump(2) << '\n';
        return exit_code::kTruncation;
    }
    const bool ok = cmp.maxResidual <= c.tol.oracleRel;
    if (!outPath.empty()) {
        std::ofstream csv(outPath);
        if (!csv) throw InputError("cannot write " + outPath);
        csv << "w_re,w_im,closed_log_norm,oracle_log_norm,oracle_error,residual\n";
        for (const auto& r : cmp.rows)
            csv << fmt(r.w.real()) << ',' << fmt(r.w.imag()) << ',' << fmt(r.closedLogNorm) << ','
                << fmt(r.oracleLogNorm) << ',' << fmt(r.oracleError) << ',' << fmt(r.residual) << '\n';
    }
    json rows = json::array();
    for (const auto& r : cmp.rows)
        rows.push_back({{"w", io::to_json(r.w)},
                        {"closedLogNorm", r.closedLogNorm},
                        {"oracleLogNorm", r.oracleLogNorm},
                        {"oracleError", r.oracleError},
                        {"residual", r.residual}});
    out << json{{"toolVersion", kToolVersion},
                {"gamma", io::to_json(weyl::gamma(lambda))},
                {"fittedLogConstant", cmp.fittedLogConstant},
                {"rows", rows},
                {"maxResidual", cmp.maxResidual},
                {"threshold", c.tol.oracleRel},
                {"pass", ok}}
               .dump(2)
        << '\n';
    return ok ? exit_code::kBounded : exit_code::kProbeMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boundedness of Toeplitz operators with complex Gaussian symbols"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    Common c;
    app.option_defaults()->always_capture_default();
    app.add_option("--tol-psd", c.tol.tolPsd, "relative eigenvalue threshold for definiteness decisions");
    app.add_option("--marginal-band", c.tol.marginalBand, "extra band flagged as marginal");
    app.add_option("--oracle-rel", c.tol.oracleRel, "relative tolerance for oracle comparisons");
    app.add_flag("--timings", c.timings, "record wall-clock timings in the report");
    app.fallthrough();

    std::string input;
    auto* analyze = app.add_subcommand("analyze", "full boundedness pipeline for a problem file");
    analyze->add_option("input", input, "problem file (JSON)")->required();
    analyze->fallthrough();

    bool withOracle = false;
    auto* weylCmd = app.add_subcommand("weyl", "Weyl symbol exponent of Top(e^Q)");
    weylCmd->add_option("input", input, "problem file (JSON)")->required();
    weylCmd->add_flag("--oracle", withOracle, "compare against brute-force quadrature at sample points");
    weylCmd->fallthrough();

    std::string lam = "0", cs = "0", ds = "0";
    auto* example = app.add_subcommand("example", "explicit family Phi0 = |x|^2/4, Q = lambda|x|^2 + cbar.x/2 - d.xbar/2");
    example->add_option("--lambda", lam, "lambda as a number or [re, im]")->required();
    example->add_option("--c", cs, "c as [re, im] or a list of pairs");
    example->add_option("--d", ds, "d as [re, im] or a list of pairs");
    example->fallthrough();

    std::string gridText, outPath;
    auto* scan = app.add_subcommand("scan", "classification over a grid of lambda");
    scan->add_option("--lambda-grid", gridText, "reMin:reMax:count,imMin:imMax:count")->required();
    scan->add_option("--c", cs, "c as [re, im] or a list of pairs");
    scan->add_option("--d", ds, "d as [re, im] or a list of pairs");
    scan->add_option("--out", outPath, "write CSV here instead of JSON to stdout");
    scan->fallthrough();

    std::string ws = "[[0,0]]";
    int points = 64;
    auto* probe = app.add_subcommand("probe", "oracle norms of Top(e^Q) k_w against the closed form (n = 1)");
    probe->add_option("--lambda", lam, "lambda as a number or [re, im]")->required();
    probe->add_option("--c", cs, "c as a number or [re, im]");
    probe->add_option("--d", ds, "d as a number or [re, im]");
    probe->add_option("--w", ws, "probe points as a list of [re, im] pairs");
    probe->add_option("--points", points, "grid points per axis (doubled once for the error estimate)")
        ->check(CLI::Range(8, 4096));
    probe->add_option("--out", outPath, "also write the table as CSV");
    probe->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kInputError;
    }

    try {
        if (*analyze) return cmd_analyze(input, c, out);
        if (*weylCmd) return cmd_weyl(input, withOracle, c, out);
        if (*example) return cmd_example(lam, cs, ds, c, out);
        if (*scan) return cmd_scan(gridText, cs, ds, outPath, c, out);
        if (*probe) return cmd_probe(lam, cs, ds, ws, points, outPath, c, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_code::kInputError;
    } catch (const TruncationError& e) {
        err << "truncation: " << e.what() << " (suggested radius " << e.suggestedRadius << ")\n";
        return exit_code::kTruncation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kInternalInconsistency;
    }
    return exit_code::kInputError;
}

}  // namespace toeplitz::cli
