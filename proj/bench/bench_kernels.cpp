// Wall-clock comparison of the OpenMP kernels against their serial references.
//
//   bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "hxray/kernels.hpp"

using namespace hxray;

namespace {

template <class F>
double best_of(int repeats, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-18s serial %9.4f s  openmp %9.4f s  speedup %5.2fx  %s\n", name, serial, parallel, serial / parallel,
              identical ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads %d, best of %d\n", omp_get_max_threads(), repeats);

  const Phantom f = gaussian_phantom(1.0, 2.0, {0.1, -0.3, 0.2});
  const PlanarGrid z = square_grid(5.0, 24, 8, 5.0);
  std::vector<double> t;
  for (int m = 0; m < 48; ++m) t.push_back(-3.0 + 0.125 * m);

  std::vector<cplx> a, b;
  const double ts = best_of(repeats, [&] { b = kernels::serial::sample_grid(f, z, t); });
  const double tp = best_of(repeats, [&] { a = kernels::sample_grid(f, z, t); });
  report("sample_grid", ts, tp, std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0);

  std::vector<cplx> T(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) T[i] = b[i * t.size() + 24];
  Eigen::MatrixXcd P, S;
  const double fs = best_of(repeats, [&] { S = kernels::serial::fourier_assemble(z, T, 1.3, 32); });
  const double fp = best_of(repeats, [&] { P = kernels::fourier_assemble(z, T, 1.3, 32); });
  report("fourier_assemble", fs, fp, std::memcmp(P.data(), S.data(), P.size() * sizeof(cplx)) == 0);
  return 0;
}
