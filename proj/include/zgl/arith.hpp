#pragma once
// arith.hpp -- von Mangoldt sieve, Chebyshev psi, the prime-side sum
//
//   P(T,kappa) = -(e^{i pi (1-kappa)/4} / sqrt(kappa))
//                 * sum_{n <= (T/2pi)^kappa} Lambda(n) n^{-(1/2 - 1/(2kappa))}
//                   e^{-2 pi i kappa n^{1/kappa}},
//
// and the prime exponential sum  sum_{p <= x} e^{2 pi i k p^gamma}.
//
// Phase arguments kappa n^{1/kappa} (resp. k p^gamma) are computed as
// exp(log(n)/kappa) in double-double and reduced mod 1 before scaling by
// 2 pi, keeping absolute phase error far below 1e-9 across the whole
// supported range.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace zgl::arith {

struct LambdaTable {
  uint64_t limit = 0;
  std::vector<double> values;    // values[n] = Lambda(n), n <= limit
  std::vector<uint8_t> is_prime;  // sieve byproduct, used by the prime sums

  double lambda(uint64_t n) const { return values[n]; }
};

// Exact Lambda(n) for n <= limit; limit <= 1e8 (memory budget).
LambdaTable lambda_sieve(uint64_t limit);

// psi(x) = sum_{n <= x} Lambda(n); requires x <= table.limit.
double chebyshev_psi(double x, const LambdaTable& table);

struct PrimeSideSum {
  double T = 0.0;
  double kappa = 0.0;
  uint64_t cutoff = 0;  // floor((T/2pi)^kappa)
  std::complex<double> value;
};

// Right-hand side of the zero/prime identity; requires cutoff <= limit.
PrimeSideSum prime_side_sum(double T, double kappa, const LambdaTable& table);
std::complex<double> prime_side_sum_serial_value(double T, double kappa,
                                                 const LambdaTable& table);

// sum_{p <= x} e^{2 pi i k p^gamma}, 2/3 < gamma < 1.
std::complex<double> ps_prime_exp_sum(double x, double k, double gamma_exp,
                                      const LambdaTable& table);

// frac(kappa * n^{1/kappa}) in [0,1); exposed for the phase-accuracy tests.
double reduced_power_phase(uint64_t n, double kappa);
// frac(k * b^e) in [0,1).
double reduced_phase(double b, double e, double k);

// debug dump "n,lambda"
void export_csv(const LambdaTable& table, const std::string& path);

}  // namespace zgl::arith
