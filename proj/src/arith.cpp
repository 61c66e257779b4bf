#include "zgl/arith.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "zgl/dd.hpp"
#include "zgl/shard.hpp"
#include "zgl/util.hpp"

namespace zgl::arith {

namespace {
constexpr double PI = 3.141592653589793;
constexpr uint64_t SIEVE_CAP = 100000000;  // 1e8: ~0.9 GB of table
}  // namespace

LambdaTable lambda_sieve(uint64_t limit) {
  if (limit < 1) throw validation_error("lambda_sieve: limit must be >= 1");
  if (limit > SIEVE_CAP)
    throw validation_error("lambda_sieve: limit exceeds 1e8 memory budget");
  LambdaTable t;
  t.limit = limit;
  t.values.assign(limit + 1, 0.0);
  t.is_prime.assign(limit + 1, 1);
  t.is_prime[0] = 0;
  if (limit >= 1) t.is_prime[1] = 0;
  for (uint64_t p = 2; p <= limit; p++) {
    if (!t.is_prime[p]) continue;
    for (uint64_t q = p * p; q <= limit; q += p) t.is_prime[q] = 0;
    double lp = std::log(double(p));
    for (uint64_t q = p; q <= limit; q *= p) {
      t.values[q] = lp;
      if (q > limit / p) break;  // q*p would overflow past limit
    }
  }
  return t;
}

double chebyshev_psi(double x, const LambdaTable& table) {
  if (!(x >= 0.0)) throw validation_error("chebyshev_psi: x must be >= 0");
  if (x > double(table.limit))
    throw validation_error("chebyshev_psi: x beyond sieve limit");
  uint64_t n_max = uint64_t(std::floor(x));
  kahan sum;
  for (uint64_t n = 2; n <= n_max; n++) sum.add(table.values[n]);
  return sum.total();
}

double reduced_phase(double b, double e, double k) {
  // frac(k * b^e) via dd exp/log
  dd p = dd_exp(dd_mul(dd_log(dd(b)), e));
  return dd_frac(dd_mul(p, k));
}

double reduced_power_phase(uint64_t n, double kappa) {
  dd p = dd_exp(dd_mul(dd_log(dd(double(n))), 1.0 / kappa));
  return dd_frac(dd_mul(p, kappa));
}

namespace {

cplx prime_side_partial(uint64_t lo, uint64_t hi, double kappa,
                        const LambdaTable& table, kahan_c& acc) {
  double sexp = -(0.5 - 0.5 / kappa);  // exponent of n
  double inv_kappa = 1.0 / kappa;
  for (uint64_t n = lo; n < hi; n++) {
    double lam = table.values[n];
    if (lam == 0.0) continue;
    dd ln = dd_log(dd(double(n)));
    double mag = lam * std::exp(sexp * to_double(ln));
    double ph = -2.0 * PI * dd_frac(dd_mul(dd_exp(dd_mul(ln, inv_kappa)), kappa));
    acc.add(cplx(mag * std::cos(ph), mag * std::sin(ph)));
  }
  return acc.total();
}

uint64_t prime_cutoff(double T, double kappa) {
  // floor((T/2pi)^kappa) in dd so the boundary is deterministic
  dd u = dd_div(dd(T), ddc::two_pi);
  dd c = dd_exp(dd_mul(dd_log(u), kappa));
  double f = to_double(dd_floor(c));
  return f < 2.0 ? 0 : uint64_t(f);
}

cplx prime_side_prefactor(double kappa) {
  double ang = 0.25 * PI * (1.0 - kappa);
  return -cplx(std::cos(ang), std::sin(ang)) / std::sqrt(kappa);
}

}  // namespace

PrimeSideSum prime_side_sum(double T, double kappa, const LambdaTable& table) {
  if (!(kappa > 0.0)) throw validation_error("prime_side_sum: kappa must be > 0");
  uint64_t cutoff = prime_cutoff(T, kappa);
  if (cutoff > table.limit)
    throw validation_error("prime_side_sum: cutoff beyond sieve limit");
  PrimeSideSum out{T, kappa, cutoff, {0.0, 0.0}};
  if (cutoff < 2) return out;
  auto parts = map_blocks<cplx>(2, long(cutoff) + 1, 8192,
                                [&](long a, long b) {
                                  kahan_c acc;
                                  return prime_side_partial(uint64_t(a),
                                                            uint64_t(b), kappa,
                                                            table, acc);
                                });
  kahan_c total;
  for (auto& p : parts) total.add(p);
  out.value = prime_side_prefactor(kappa) * total.total();
  return out;
}

cplx prime_side_sum_serial_value(double T, double kappa,
                                 const LambdaTable& table) {
  if (!(kappa > 0.0)) throw validation_error("prime_side_sum: kappa must be > 0");
  uint64_t cutoff = prime_cutoff(T, kappa);
  if (cutoff > table.limit)
    throw validation_error("prime_side_sum: cutoff beyond sieve limit");
  if (cutoff < 2) return {0.0, 0.0};
  kahan_c acc;
  prime_side_partial(2, cutoff + 1, kappa, table, acc);
  return prime_side_prefactor(kappa) * acc.total();
}

cplx ps_prime_exp_sum(double x, double k, double gamma_exp,
                      const LambdaTable& table) {
  if (!(gamma_exp > 2.0 / 3.0) || !(gamma_exp < 1.0))
    throw validation_error("ps_prime_exp_sum: gamma must be in (2/3, 1)");
  if (!(k >= 1.0)) throw validation_error("ps_prime_exp_sum: k must be >= 1");
  if (!(x >= 0.0) || x > double(table.limit))
    throw validation_error("ps_prime_exp_sum: x beyond sieve limit");
  uint64_t n_max = uint64_t(std::floor(x));
  auto parts = map_blocks<cplx>(2, long(n_max) + 1, 8192, [&](long a, long b) {
    kahan_c acc;
    for (long p = a; p < b; p++) {
      if (!table.is_prime[size_t(p)]) continue;
      double ph =
          2.0 * PI *
          dd_frac(dd_mul(dd_exp(dd_mul(dd_log(dd(double(p))), gamma_exp)), k));
      acc.add(cplx(std::cos(ph), std::sin(ph)));
    }
    return acc.total();
  });
  kahan_c total;
  for (auto& p : parts) total.add(p);
  return total.total();
}

void export_csv(const LambdaTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("export_csv: cannot open " + path);
  out << "n,lambda\n";
  char buf[64];
  for (uint64_t n = 1; n <= table.limit; n++) {
    std::snprintf(buf, sizeof buf, "%llu,%.15g\n",
                  (unsigned long long)n, table.values[n]);
    out << buf;
  }
}

}  // namespace zgl::arith
