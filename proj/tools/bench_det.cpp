// Benchmark comparing the serial reference kernels with the OpenMP ones:
// fraction-free Bareiss determinants on the half-size Legendre matrices and
// cyclotomic matrix products from the Vsemirnov decomposition.

#include "legdet/cyclotomic.hpp"
#include "legdet/det.hpp"
#include "legdet/identities.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace legdet;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void bench_bareiss(std::uint64_t pv) {
    OddPrime p(pv);
    Assignment a{Rational(1, 3), Rational(0), Rational(0), Rational(0)};
    RatMatrix m = build(Family::SIMPLE, p, a);
    Rational ds, dp;
    double serial = time_ms([&] { ds = det_serial(m); });
    double parallel = time_ms([&] { dp = det(m); });
    if (ds != dp) {
        std::printf("MISMATCH at p=%llu\n", static_cast<unsigned long long>(pv));
        return;
    }
    std::printf("bareiss  order %3llu (p=%3llu)  serial %8.1f ms  openmp %8.1f ms  speedup %.2fx\n",
                static_cast<unsigned long long>(p.half()),
                static_cast<unsigned long long>(pv), serial, parallel, serial / parallel);
}

void bench_cyc_matmul(std::uint64_t pv) {
    OddPrime p(pv);
    VsemirnovMatrices vs = vsemirnov_matrices(p, Rational(0));
    CycloMatrix r1 = vs.V, r2 = vs.V;
    double serial = time_ms([&] { r1 = cyc_matmul_serial(vs.U, vs.V); });
    double parallel = time_ms([&] { r2 = cyc_matmul(vs.U, vs.V); });
    if (!(r1 == r2)) {
        std::printf("MISMATCH at p=%llu\n", static_cast<unsigned long long>(pv));
        return;
    }
    std::printf("cyc mul  order %3llu (p=%3llu)  serial %8.1f ms  openmp %8.1f ms  speedup %.2fx\n",
                static_cast<unsigned long long>(p.half() + 1),
                static_cast<unsigned long long>(pv), serial, parallel, serial / parallel);
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    for (std::uint64_t p : {101ULL, 151ULL, 199ULL}) bench_bareiss(p);
    for (std::uint64_t p : {29ULL, 37ULL, 53ULL}) bench_cyc_matmul(p);
    return 0;
}
