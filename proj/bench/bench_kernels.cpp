// bench_kernels -- serial reference vs OpenMP-sharded kernels.
//
//   ./zgl_bench [t_max]     (default 30000)
//
// Times the zero scan, the zero-side Weyl sum, the prime-side sum and the
// mod-1 histogram in both variants and reports the speedup plus the largest
// result deviation (the sharded reductions are deterministic, so deviations
// reflect only summation-order rounding).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zgl/arith.hpp"
#include "zgl/stats.hpp"
#include "zgl/util.hpp"
#include "zgl/weyl.hpp"
#include "zgl/zeros.hpp"

using namespace zgl;
using clk = std::chrono::steady_clock;

static double secs(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
  double t_max = argc > 1 ? std::atof(argv[1]) : 30000.0;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
  std::printf("%-22s %10s %10s %8s %12s\n", "kernel", "serial_s", "parallel_s",
              "speedup", "max_diff");

  // zero scan
  auto t0 = clk::now();
  auto zs = zeros::scan_zeros_serial(10.0, t_max);
  auto t1 = clk::now();
  auto zp = zeros::scan_zeros(10.0, t_max);
  auto t2 = clk::now();
  double dz = 0.0;
  for (size_t i = 0; i < zs.gammas.size(); i++)
    dz = std::max(dz, std::fabs(zs.gammas[i] - zp.gammas[i]));
  std::printf("%-22s %10.3f %10.3f %8.2f %12.3g  (%zu zeros)\n", "scan_zeros",
              secs(t0, t1), secs(t1, t2), secs(t0, t1) / secs(t1, t2), dz,
              zp.gammas.size());

  // zero-side Weyl sum
  t0 = clk::now();
  cplx us{};
  for (int rep = 0; rep < 5; rep++)
    us = weyl::zero_side_sum_serial(zp, t_max, 1.0 + 0.01 * rep);
  t1 = clk::now();
  cplx up{};
  for (int rep = 0; rep < 5; rep++)
    up = weyl::zero_side_sum(zp, t_max, 1.0 + 0.01 * rep);
  t2 = clk::now();
  std::printf("%-22s %10.3f %10.3f %8.2f %12.3g\n", "zero_side_sum",
              secs(t0, t1), secs(t1, t2), secs(t0, t1) / secs(t1, t2),
              std::abs(us - up));

  // prime-side sum
  auto table = arith::lambda_sieve(uint64_t(std::pow(t_max / 6.283, 1.2)) + 2);
  t0 = clk::now();
  cplx ps{};
  for (int rep = 0; rep < 5; rep++)
    ps = arith::prime_side_sum_serial_value(t_max, 1.2, table);
  t1 = clk::now();
  cplx pp{};
  for (int rep = 0; rep < 5; rep++)
    pp = arith::prime_side_sum(t_max, 1.2, table).value;
  t2 = clk::now();
  std::printf("%-22s %10.3f %10.3f %8.2f %12.3g\n", "prime_side_sum",
              secs(t0, t1), secs(t1, t2), secs(t0, t1) / secs(t1, t2),
              std::abs(ps - pp));

  // histogram
  auto xs = weyl::normalized_zeros(zp);
  std::vector<double> fr;
  fr.reserve(xs.size());
  for (auto& z : xs) fr.push_back(z.frac);
  t0 = clk::now();
  stats::Histogram hs{};
  for (int rep = 0; rep < 200; rep++) hs = stats::histogram_mod1_serial(fr, 50);
  t1 = clk::now();
  stats::Histogram hp{};
  for (int rep = 0; rep < 200; rep++) hp = stats::histogram_mod1(fr, 50);
  t2 = clk::now();
  uint64_t dh = 0;
  for (int b = 0; b < 50; b++)
    dh = std::max<uint64_t>(
        dh, hs.counts[size_t(b)] > hp.counts[size_t(b)]
                ? hs.counts[size_t(b)] - hp.counts[size_t(b)]
                : hp.counts[size_t(b)] - hs.counts[size_t(b)]);
  std::printf("%-22s %10.3f %10.3f %8.2f %12llu\n", "histogram_mod1",
              secs(t0, t1), secs(t1, t2), secs(t0, t1) / secs(t1, t2),
              (unsigned long long)dh);
  return 0;
}
