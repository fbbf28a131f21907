// Benchmark comparing the serial reference estimator against the
// OpenMP-sharded one on a fixed workload.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "conetail/montecarlo.hpp"

using namespace conetail;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run_case(const char* name, const SampleKind& kind, const JumpModel& m, const RectSet& a,
              double t, long long n) {
    auto t0 = std::chrono::steady_clock::now();
    const Estimate serial = estimate_tail_prob_serial(kind, m, a, t, n, 7);
    const double ts = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const Estimate parallel = estimate_tail_prob(kind, m, a, t, n, 7);
    const double tp = seconds_since(t0);

    std::printf("%-28s n=%lld  serial %.3fs  parallel %.3fs  speedup %.2fx  hits %lld/%lld %s\n",
                name, n, ts, tp, ts / tp, serial.hits, parallel.hits,
                serial.hits == parallel.hits ? "(identical)" : "(MISMATCH)");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled (serial build)\n");
#endif
    const RectSet diag2(2, {{0, 1.0}, {1, 1.0}});
    const long long n = 4'000'000;

    run_case("independence vector", SampleKind::vector(), make_independence_model(2, 2.0), diag2,
             5.0, n);
    run_case("independence sum(2)", SampleKind::sum(2), make_independence_model(2, 2.0), diag2,
             10.0, n);
    run_case("marshall-olkin sum(3)", SampleKind::sum(3), make_marshall_olkin_equal(2, 1.0, 1.0),
             diag2, 50.0, n);
    run_case("mixture compound poisson", SampleKind::compound_poisson(2.0, 1.0),
             make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false), diag2, 30.0, n);
    return 0;
}
