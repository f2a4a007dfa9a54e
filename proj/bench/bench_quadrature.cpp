// Serial reference against the OpenMP kernels on the two hot loops of the
// oracle: 4D tensor evaluation and the nested projection sums.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "toeplitz/oracle.hpp"
#include "toeplitz/weyl.hpp"

using namespace toeplitz;
using oracle::Execution;

namespace {

template <typename F>
double seconds(F&& f, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-28s serial %8.4f s  parallel %8.4f s  speedup %5.2fx  bit-identical %s\n", name, serial, parallel,
                serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    const int points = argc > 1 ? std::atoi(argv[1]) : 24;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    std::printf("threads %d, points per axis %d (refined to %d), best of %d\n", omp_get_max_threads(), points,
                2 * points, reps);

    const auto ex = weyl::example_problem({-0.3, 0.2}, CVec::Constant(2, {0.4, -0.1}), CVec::Constant(2, {0.2, 0.3}));
    const CVec x = CVec::Constant(2, {0.3, 0.1});
    const oracle::QuadratureGrid grid{oracle::Scheme::Uniform, 0.0, points};

    oracle::ProbeResult s, p;
    const double ts = seconds([&] { s = oracle::symbol_by_quadrature(ex.phi0, ex.Q, x, grid, Execution::Serial); }, reps);
    const double tp = seconds([&] { p = oracle::symbol_by_quadrature(ex.phi0, ex.Q, x, grid, Execution::Parallel); }, reps);
    report("4D symbol quadrature", ts, tp, s.value == p.value && s.errorEstimate == p.errorEstimate);

    const auto probeGrid = oracle::default_probe_grid({-0.5, 0.0}, 0.3, 0.1, {1.0, 0.5}, 4 * points / 3);
    const double ns = seconds([&] {
        s = oracle::oracle_toeplitz_norm({-0.5, 0.0}, 0.3, 0.1, {1.0, 0.5}, probeGrid, Execution::Serial);
    }, reps);
    const double np = seconds([&] {
        p = oracle::oracle_toeplitz_norm({-0.5, 0.0}, 0.3, 0.1, {1.0, 0.5}, probeGrid, Execution::Parallel);
    }, reps);
    report("nested Toeplitz probe", ns, np, s.value == p.value && s.errorEstimate == p.errorEstimate);
    return 0;
}
