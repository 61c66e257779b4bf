#pragma once
// dd.hpp -- double-double arithmetic for phase-critical paths.
//
// theta(t) grows like (t/2)log(t/2pi): ~7e7 radians at t = 1e7.  Every
// downstream consumer needs the value mod 2pi (or mod 1 after dividing by
// pi), so the representation has to carry ~56 bits beyond the binary64
// mantissa.  An unevaluated hi/lo double pair gives ~106 bits and keeps the
// hot loops in plain registers: no allocation, no x87 portability traps.
//
// The building blocks are the classical error-free transformations
// (Knuth two_sum, fma-based two_prod) plus exp/log in the usual style:
// exp by 2^k range reduction + short Taylor + repeated squaring, log by
// Newton iteration against exp.  Relative accuracy is ~1e-31; every
// consumer in this project needs far less.

#include <array>
#include <cmath>

namespace zgl {

struct dd {
  double hi = 0.0;
  double lo = 0.0;
  dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}
};

// error-free transformations
inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}
inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}
inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  dd r = quick_two_sum(s.hi, s.lo + t.hi);
  return quick_two_sum(r.hi, r.lo + t.lo);
}
inline dd dd_add(dd a, double b) {
  dd s = two_sum(a.hi, b);
  return quick_two_sum(s.hi, s.lo + a.lo);
}
inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }
inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }
inline dd dd_sub(dd a, double b) { return dd_add(a, -b); }
inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}
inline dd dd_mul(dd a, double b) {
  dd p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}
inline dd dd_mul_pwr2(dd a, double p) { return {a.hi * p, a.lo * p}; }
inline dd dd_div(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return dd_add(q, q3);
}
inline double to_double(dd a) { return a.hi + a.lo; }

inline dd dd_sqrt(dd a) {
  if (a.hi == 0.0) return {0.0, 0.0};
  double x = std::sqrt(a.hi);
  dd x2 = two_prod(x, x);
  double corr = to_double(dd_sub(a, x2)) / (2.0 * x);
  return quick_two_sum(x, corr);
}

inline dd dd_floor(dd a) {
  double f = std::floor(a.hi);
  if (f != a.hi) return {f, 0.0};
  // hi integral: floor(hi+lo) = hi + floor(lo), floor(lo) in {-1, 0}
  return two_sum(f, std::floor(a.lo));
}

namespace ddc {
inline constexpr dd pi{3.141592653589793116e+00, 1.2246467991473531772e-16};
inline constexpr dd two_pi{6.283185307179586232e+00, 2.4492935982947063545e-16};
inline constexpr dd ln2{6.9314718055994530942e-01, 2.3190468138462995584e-17};
}  // namespace ddc

namespace detail {
inline const dd* inv_fact() {  // 1/3!, 1/4!, ..., 1/17!
  static const std::array<dd, 15> tab = [] {
    std::array<dd, 15> t{};
    double f = 2.0;
    for (int i = 0; i < 15; i++) {
      f *= double(i + 3);  // exact up to 17! < 2^53
      t[size_t(i)] = dd_div(dd(1.0), dd(f));
    }
    return t;
  }();
  return tab.data();
}
}  // namespace detail

inline dd dd_exp(dd a) {
  // exp(a) = 2^m * (exp(r/512))^512 with r = a - m ln2, |r| <= ln2/2
  if (a.hi <= -709.0) return {0.0, 0.0};
  if (a.hi >= 709.0) return {HUGE_VAL, 0.0};
  if (a.hi == 0.0 && a.lo == 0.0) return {1.0, 0.0};
  double m = std::floor(a.hi / ddc::ln2.hi + 0.5);
  dd r = dd_mul_pwr2(dd_sub(a, dd_mul(ddc::ln2, m)), 1.0 / 512.0);
  // Taylor for exp(r) - 1, |r| <= 6.8e-4
  const dd* inv_fact = detail::inv_fact();
  dd p = dd_mul(r, r);
  dd s = dd_add(r, dd_mul_pwr2(p, 0.5));
  p = dd_mul(p, r);
  dd t = dd_mul(p, inv_fact[0]);
  int i = 0;
  do {
    s = dd_add(s, t);
    p = dd_mul(p, r);
    t = dd_mul(p, inv_fact[++i]);
  } while (std::fabs(to_double(t)) > 1e-40 && i < 13);
  s = dd_add(s, t);
  for (int j = 0; j < 9; j++) s = dd_add(dd_mul_pwr2(s, 2.0), dd_mul(s, s));
  s = dd_add(s, 1.0);
  int mi = int(m);
  return {std::ldexp(s.hi, mi), std::ldexp(s.lo, mi)};
}

inline dd dd_log(dd a) {
  // Newton against exp: x <- x + a e^{-x} - 1; doubles the digits per step.
  dd x{std::log(a.hi), 0.0};
  for (int i = 0; i < 2; i++) {
    dd u = dd_mul(a, dd_exp(dd_neg(x)));
    x = dd_add(x, dd_add(u, -1.0));
  }
  return x;
}

inline dd dd_ln_2pi() {
  static const dd v = dd_log(ddc::two_pi);
  return v;
}

// a mod 2pi, folded near (-pi, pi]; the multiple k*2pi is subtracted in dd
// so the result is accurate to ~1e-25 even for |a| ~ 1e8.
inline double mod_2pi(dd a) {
  double k = std::nearbyint(to_double(a) / ddc::two_pi.hi);
  dd km = dd_add(two_prod(k, ddc::two_pi.hi), k * ddc::two_pi.lo);
  return to_double(dd_sub(a, km));
}

// frac(a) in [0,1)
inline double dd_frac(dd a) {
  double x = to_double(dd_sub(a, dd_floor(a)));
  if (x < 0.0) x += 1.0;
  if (x >= 1.0) x -= 1.0;
  return x;
}

}  // namespace zgl
