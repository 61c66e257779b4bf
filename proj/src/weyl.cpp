#include "zgl/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "zgl/rs.hpp"
#include "zgl/shard.hpp"
#include "zgl/util.hpp"

namespace zgl::weyl {

namespace {
constexpr double TWO_PI = 6.283185307179586;

long count_up_to(const zeros::ZeroList& zl, double T) {
  return std::upper_bound(zl.gammas.begin(), zl.gammas.end(), T) -
         zl.gammas.begin();
}
}  // namespace

std::vector<NormalizedZero> normalized_zeros(const zeros::ZeroList& zl) {
  if (zl.gammas.empty())
    throw validation_error("normalized_zeros: empty zero list");
  if (zl.gammas.front() < 10.0)
    throw validation_error("normalized_zeros: zeros below t = 10 unsupported");
  std::vector<NormalizedZero> out(zl.gammas.size());
  map_blocks<int>(0, long(zl.gammas.size()), 4096, [&](long a, long b) {
    for (long i = a; i < b; i++) {
      double gamma = zl.gammas[size_t(i)];
      dd x = dd_div(rs::theta_dd(gamma), ddc::pi);
      out[size_t(i)] = {i + 1, gamma, to_double(x), dd_frac(x)};
    }
    return 0;
  });
  return out;
}

namespace {

cplx zsum_range(const zeros::ZeroList& zl, long lo, long hi, double kappa) {
  kahan_c acc;
  for (long i = lo; i < hi; i++) {
    dd x = dd_div(rs::theta_dd(zl.gammas[size_t(i)]), ddc::pi);
    double ph = TWO_PI * dd_frac(dd_mul(x, kappa));
    acc.add(cplx(std::cos(ph), std::sin(ph)));
  }
  return acc.total();
}

}  // namespace

std::complex<double> zero_side_sum(const zeros::ZeroList& zl, double T,
                                   double kappa) {
  if (!(kappa >= 0.0)) throw validation_error("zero_side_sum: kappa must be >= 0");
  if (T > zl.t_max)
    throw validation_error("zero_side_sum: T beyond zero coverage");
  long n = count_up_to(zl, T);
  if (kappa == 0.0) return {double(n), 0.0};
  auto parts = map_blocks<cplx>(0, n, 4096, [&](long a, long b) {
    return zsum_range(zl, a, b, kappa);
  });
  kahan_c total;
  for (auto& p : parts) total.add(p);
  return total.total();
}

std::complex<double> zero_side_sum_serial(const zeros::ZeroList& zl, double T,
                                          double kappa) {
  if (!(kappa >= 0.0)) throw validation_error("zero_side_sum: kappa must be >= 0");
  if (T > zl.t_max)
    throw validation_error("zero_side_sum: T beyond zero coverage");
  long n = count_up_to(zl, T);
  if (kappa == 0.0) return {double(n), 0.0};
  return zsum_range(zl, 0, n, kappa);
}

std::complex<double> mean_value(const zeros::ZeroList& zl, double T,
                                double kappa) {
  long n = count_up_to(zl, T);
  if (n == 0) throw validation_error("mean_value: N(T) = 0");
  return zero_side_sum(zl, T, kappa) / double(n);
}

WeylReport main_theorem_report(const zeros::ZeroList& zl,
                               const arith::LambdaTable& table, double T,
                               double kappa) {
  if (!(kappa > 0.0))
    throw validation_error("main_theorem_report: kappa must be > 0");
  WeylReport r;
  r.T = T;
  r.kappa = kappa;
  r.N_T = count_up_to(zl, T);
  r.U = zero_side_sum(zl, T, kappa);
  r.P = arith::prime_side_sum(T, kappa, table).value;
  r.residual = r.U - r.P;
  r.bound_exponent = std::max(0.5 * (1.0 - kappa), 0.5 * kappa);
  double lt = std::log(T);
  r.normalized_residual =
      std::abs(r.residual) / (std::pow(T, r.bound_exponent) * lt * lt);
  return r;
}

namespace {
void put(std::string& s, const char* fmt, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  s += buf;
}
}  // namespace

std::string normalized_csv(const std::vector<NormalizedZero>& xs) {
  std::string s = "n,gamma,x,frac\n";
  for (const auto& z : xs) {
    s += std::to_string(z.index);
    s += ',';
    put(s, "%.12g", z.gamma);
    s += ',';
    put(s, "%.12g", z.x);
    s += ',';
    put(s, "%.12g", z.frac);
    s += '\n';
  }
  return s;
}

std::string report_csv(const std::vector<WeylReport>& reports) {
  std::string s = "T,kappa,ReU,ImU,ReP,ImP,abs_residual,normalized_residual\n";
  for (const auto& r : reports) {
    put(s, "%.12g", r.T);
    s += ',';
    put(s, "%.12g", r.kappa);
    s += ',';
    put(s, "%.12g", r.U.real());
    s += ',';
    put(s, "%.12g", r.U.imag());
    s += ',';
    put(s, "%.12g", r.P.real());
    s += ',';
    put(s, "%.12g", r.P.imag());
    s += ',';
    put(s, "%.12g", std::abs(r.residual));
    s += ',';
    put(s, "%.12g", r.normalized_residual);
    s += '\n';
  }
  return s;
}

}  // namespace zgl::weyl
