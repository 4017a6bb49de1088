// Compares the parallel kernels against their serial reference paths on
// fixed inputs: vertex enumeration, the group DP behind cone_genfun, and the
// oracle's box scan.  Prints wall times; correctness is asserted by equality
// of the results, not by the clock.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>

#include "latcount/counting.hpp"
#include "latcount/genfun.hpp"
#include "latcount/oracle.hpp"
#include "latcount/polyhedron.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace latcount;

namespace {

template <typename F>
double wall_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serialMs, double parallelMs) {
    std::cout << std::left << std::setw(26) << name << std::right << std::fixed
              << std::setprecision(1) << std::setw(10) << serialMs << " ms" << std::setw(10)
              << parallelMs << " ms" << std::setw(9) << std::setprecision(2)
              << (parallelMs > 0 ? serialMs / parallelMs : 0.0) << "x" << std::endl;
}

CanonicalSystem vertex_fixture() {
    // 3 variables, a deterministic mix of slanted rows plus a bounding box.
    const int rowsRaw[][3] = {{2, -1, 3},  {-3, 2, 1},  {1, 4, -2}, {4, 1, 1},
                              {-2, -3, 2}, {1, -2, -4}, {3, 3, -1}, {-1, 2, 3}};
    const std::size_t extra = 8;
    Matrix a(extra + 6, 3);
    std::vector<Rat> b(extra + 6);
    for (std::size_t i = 0; i < extra; ++i) {
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = rowsRaw[i][j];
        b[i] = Rat(17) + Rat(static_cast<int>(i));
    }
    for (std::size_t j = 0; j < 3; ++j) {
        a(extra + 2 * j, j) = 1;
        b[extra + 2 * j] = Rat(9);
        a(extra + 2 * j + 1, j) = -1;
        b[extra + 2 * j + 1] = Rat(9);
    }
    return CanonicalSystem(std::move(a), std::move(b));
}

void bench_vertices() {
    CanonicalSystem sys = vertex_fixture();
    std::vector<Vertex> vs, vp;
    double s = wall_ms([&] { vs = enumerate_vertices_serial(sys); });
    double p = wall_ms([&] { vp = enumerate_vertices(sys); });
    if (vs.size() != vp.size()) {
        std::cout << "vertex enumeration MISMATCH: " << vs.size() << " vs " << vp.size() << "\n";
        return;
    }
    row("vertex enumeration", s, p);
}

void bench_group_dp() {
    // Triangular system with determinant 125.  The DP table is delta
    // elements wide and each entry is a polynomial of up to ~n*sigma*chi
    // coefficients, so the determinant has to stay modest here.
    Matrix a(3, 3);
    a(0, 0) = 5; a(0, 1) = 2;  a(0, 2) = 1;
    a(1, 1) = 5; a(1, 2) = 3;
    a(2, 2) = 5;
    std::vector<Int> b{Int(4), Int(3), Int(2)};
    std::vector<Int> c{Int(1), Int(2), Int(5)};

    // Threading axis: the sliding-window update with cosets handled serially
    // versus in parallel.  Same algorithm in both columns.
    GroupDp serialDp(a, b, c), parallelDp(a, b, c);
    double s = wall_ms([&] {
        while (serialDp.level() < serialDp.levels()) serialDp.step(true, false);
    });
    double p = wall_ms([&] {
        while (parallelDp.level() < parallelDp.levels()) parallelDp.step(true, true);
    });
    ShortRatExpFun fs = serialDp.finish();
    ShortRatExpFun fp = parallelDp.finish();
    if (constant_term(fs) != constant_term(fp)) {
        std::cout << "group DP MISMATCH between serial and parallel cosets\n";
        return;
    }
    row("cone dp (sliding window)", s, p);

    // Algorithm axis, reported separately: full convolution per group element
    // versus the three-term sliding window, both timed on one thread.
    GroupDp naiveDp(a, b, c);
    double naiveMs = wall_ms([&] {
        while (naiveDp.level() < naiveDp.levels()) naiveDp.step(false, false);
    });
    if (constant_term(naiveDp.finish()) != constant_term(fs)) {
        std::cout << "group DP MISMATCH between naive and sliding-window updates\n";
        return;
    }
    std::cout << "window vs naive update (1 thread): " << std::fixed << std::setprecision(1)
              << s << " ms vs " << naiveMs << " ms (" << std::setprecision(2)
              << (s > 0 ? naiveMs / s : 0.0) << "x)\n";
}

void bench_oracle() {
    // One slanted cut through a 4-dimensional box of a million points.
    Matrix a(1, 4);
    a(0, 0) = 1; a(0, 1) = 1; a(0, 2) = 1; a(0, 3) = 1;
    std::vector<Rat> b{Rat(62)};
    CanonicalSystem sys(std::move(a), std::move(b));
    BoxSpec box;
    box.lo.assign(4, Int(0));
    box.hi.assign(4, Int(31));
    Int cs, cp;
    double s = wall_ms([&] { cs = oracle_count_serial(sys, box); });
    double p = wall_ms([&] { cp = oracle_count(sys, box); });
    if (cs != cp) {
        std::cout << "oracle MISMATCH: " << cs.get_str() << " vs " << cp.get_str() << "\n";
        return;
    }
    row("oracle box scan", s, p);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; both columns run serially\n";
#endif
    std::cout << std::left << std::setw(26) << "kernel" << std::right << std::setw(13) << "serial"
              << std::setw(13) << "parallel" << std::setw(10) << "speedup\n";
    bench_vertices();
    bench_oracle();
    bench_group_dp();
    return 0;
}
