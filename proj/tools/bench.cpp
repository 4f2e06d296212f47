// Timing comparison of the OpenMP kernels against their serial
// reference implementations: dense multiply and the Jacobi eigensolver.
//
//   hyperspec-bench [size ...]     (defaults: 128 256 384)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "hyperspec/eigen.hpp"
#include "hyperspec/matrix.hpp"

using hyperspec::DenseMatrix;

namespace {

DenseMatrix random_symmetric(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
    return m;
}

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> sizes;
    for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
    if (sizes.empty()) sizes = {128, 256, 384};

    std::printf("%-8s %-12s %12s %12s %8s\n", "size", "kernel", "serial(ms)", "parallel(ms)",
                "speedup");
    for (int n : sizes) {
        const DenseMatrix a = random_symmetric(n, 7);
        const DenseMatrix b = random_symmetric(n, 11);

        DenseMatrix out_p(n, n), out_s(n, n);
        const double mm_s = time_ms([&] { out_s = hyperspec::multiply_serial(a, b); });
        const double mm_p = time_ms([&] { out_p = hyperspec::multiply(a, b); });
        std::printf("%-8d %-12s %12.2f %12.2f %8.2f\n", n, "multiply", mm_s, mm_p,
                    mm_s / mm_p);
        if (hyperspec::max_abs_diff(out_p, out_s) > 1e-12)
            std::printf("  WARNING: multiply results differ\n");

        hyperspec::RealSpectrum sp_s, sp_p;
        const double ev_s = time_ms([&] { sp_s = hyperspec::symmetric_eigenvalues_serial(a); });
        const double ev_p = time_ms([&] { sp_p = hyperspec::symmetric_eigenvalues(a); });
        std::printf("%-8d %-12s %12.2f %12.2f %8.2f\n", n, "jacobi", ev_s, ev_p, ev_s / ev_p);
        double worst = 0.0;
        for (std::size_t i = 0; i < sp_s.values.size(); ++i)
            worst = std::max(worst, std::abs(sp_s.values[i] - sp_p.values[i]));
        if (worst > 1e-8 * n) std::printf("  WARNING: eigenvalues differ by %.3e\n", worst);
    }
    return 0;
}
