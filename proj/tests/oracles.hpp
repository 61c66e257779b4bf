#pragma once
// Shared test-side oracles, kept independent of the implementation paths
// they check: brute-force dense-grid zero scanning with plain bisection,
// a power-series Fresnel reference, trial-division Lambda, and a bisection
// root finder over arbitrary callables.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "zgl/rs.hpp"

namespace test_oracle {

// root of a monotone-crossing f on [a,b] by plain bisection
inline double bisect(const std::function<double(double)>& f, double a, double b,
                     int iters = 120) {
  double fa = f(a);
  for (int i = 0; i < iters; i++) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if ((fa < 0) == (fm < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// all zeros of Z in (t_lo, t_hi] from a step-0.01 grid + bisection
inline std::vector<double> dense_scan(double t_lo, double t_hi,
                                      double step = 0.01) {
  std::vector<double> zs;
  double prev = zgl::rs::z_function(t_lo);
  long n = long(std::ceil((t_hi - t_lo) / step));
  double x_prev = t_lo;
  for (long i = 1; i <= n; i++) {
    double x = t_lo + (t_hi - t_lo) * double(i) / double(n);
    double cur = zgl::rs::z_function(x);
    if ((prev < 0) != (cur < 0))
      zs.push_back(bisect([](double t) { return zgl::rs::z_function(t); },
                          x_prev, x));
    prev = cur;
    x_prev = x;
  }
  return zs;
}

// int_0^1 e^{2 pi i x^2} dx = sum_k (2 pi i)^k / (k! (2k+1))
inline std::complex<double> fresnel_series() {
  std::complex<long double> term(1.0L, 0.0L), sum(0.0L, 0.0L);
  const std::complex<long double> tpii(0.0L, 6.283185307179586476925286766559L);
  long double fact = 1.0L;
  for (int k = 0; k < 80; k++) {
    sum += term / (fact * (2.0L * k + 1.0L));
    term *= tpii;
    fact *= (k + 1.0L);
  }
  return {double(sum.real()), double(sum.imag())};
}

// Lambda(n) by trial division
inline double lambda_trial(unsigned long n) {
  if (n < 2) return 0.0;
  unsigned long m = n, p = 0;
  for (unsigned long d = 2; d * d <= m; d++) {
    if (m % d == 0) {
      p = d;
      while (m % d == 0) m /= d;
      break;
    }
  }
  if (p == 0) return std::log(double(n));  // n prime
  return m == 1 ? std::log(double(p)) : 0.0;  // prime power iff fully divided
}

}  // namespace test_oracle
