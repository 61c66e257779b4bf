#include "zgl/rs.hpp"

#include <array>
#include <vector>

namespace zgl::rs {

namespace {

constexpr double PI = 3.141592653589793;
constexpr double TWO_PI = 6.283185307179586;

// B_{2k} / (2k (2k-1)), k = 1..10  (Stirling series for log Gamma)
constexpr double stirling_c[10] = {
    1.0 / 12,           -1.0 / 360,          1.0 / 1260,
    -1.0 / 1680,        1.0 / 1188,          -691.0 / 360360,
    1.0 / 156,          -3617.0 / 122400,    43867.0 / 244188,
    -174611.0 / 125400,
};

// B_{2k} / (2k), k = 1..10  (Stirling series for digamma)
constexpr double digamma_c[10] = {
    1.0 / 12,         -1.0 / 120,       1.0 / 252,       -1.0 / 240,
    1.0 / 132,        -691.0 / 32760,   1.0 / 12,        -3617.0 / 8160,
    43867.0 / 14364,  -174611.0 / 6600,
};

}  // namespace

namespace detail {

std::complex<double> log_gamma_any(std::complex<double> z) {
  // Recursion shift into |z| >= 12, then Stirling.  For Re z > 0 the shift
  // path stays in the right half-plane; for Re z <= 0 the callers guarantee
  // |Im z| >= 1, so no point approaches the branch cut on the negative real
  // axis and the principal logs compose to the canonical branch.
  std::complex<double> shift(0.0);
  while (std::abs(z) < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  std::complex<double> iz = 1.0 / z;
  std::complex<double> iz2 = iz * iz;
  std::complex<double> acc(stirling_c[9], 0.0);
  for (int k = 8; k >= 0; --k) acc = acc * iz2 + stirling_c[k];
  std::complex<double> lg =
      (z - 0.5) * std::log(z) - z + 0.5 * std::log(TWO_PI) + acc * iz;
  return lg - shift;
}

namespace {
std::complex<double> digamma_any(std::complex<double> z) {
  std::complex<double> shift(0.0);
  while (std::abs(z) < 12.0) {
    shift += 1.0 / z;
    z += 1.0;
  }
  std::complex<double> iz2 = 1.0 / (z * z);
  std::complex<double> acc(digamma_c[9], 0.0);
  for (int k = 8; k >= 0; --k) acc = acc * iz2 + digamma_c[k];
  return std::log(z) - 0.5 / z - acc * iz2 - shift;
}
}  // namespace

dd log_int(long n) {
  // z_function needs t*ln n mod 2pi per term; the dd logs of all n up to
  // floor(sqrt(1e7/2pi)) are cached (t <= 1e7 ceiling => n <= 1262).
  constexpr long TABLE = 4096;
  static const std::vector<dd>& tab = *[] {
    auto* v = new std::vector<dd>(TABLE + 1);
    (*v)[1] = dd(0.0);
    for (long i = 2; i <= TABLE; i++) (*v)[size_t(i)] = dd_log(dd(double(i)));
    return v;
  }();
  if (n <= TABLE) return tab[size_t(n)];
  return dd_log(dd(double(n)));
}

}  // namespace detail

double theta_reference(double t) {
  std::complex<double> lg = detail::log_gamma_any({0.25, 0.5 * t});
  return lg.imag() - 0.5 * t * std::log(PI);
}

dd theta_dd(double t) {
  if (!(t >= 0.0)) throw validation_error("theta: t must be >= 0");
  if (t < 10.0) return dd(theta_reference(t));
  dd u = dd_div(dd(t), ddc::two_pi);
  dd th = dd_mul(dd_mul_pwr2(dd(t), 0.5), dd_sub(dd_log(u), 1.0));
  th = dd_sub(th, dd_mul_pwr2(ddc::pi, 0.125));
  double inv = 1.0 / t, inv2 = inv * inv;
  double corr =
      inv * (1.0 / 48 +
             inv2 * (7.0 / 5760 + inv2 * (31.0 / 80640 + inv2 * (127.0 / 430080))));
  return dd_add(th, corr);
}

ThetaValue theta(double t) {
  dd th = theta_dd(t);
  double err;
  if (t >= 10.0) {
    // first omitted series term + evaluation slop
    err = 511.0 / (1216512.0 * std::pow(t, 9)) + 1e-12;
  } else {
    err = 1e-11;  // log-gamma route, |theta| <= ~3 here
  }
  return {t, th.hi, th.lo, err};
}

double theta_deriv(double t) {
  if (!(t > 0.0)) throw validation_error("theta_deriv: t must be > 0");
  if (t < 10.0)
    return 0.5 * detail::digamma_any({0.25, 0.5 * t}).real() -
           0.5 * std::log(PI);
  double inv = 1.0 / t, inv2 = inv * inv;
  return 0.5 * std::log(t / TWO_PI) -
         inv2 * (1.0 / 48 +
                 inv2 * (7.0 / 1920 +
                         inv2 * (31.0 / 16128 + inv2 * (127.0 / 61440))));
}

std::complex<double> log_gamma_complex(std::complex<double> s) {
  if (!(s.real() > 0.0))
    throw validation_error("log_gamma_complex: Re s must be > 0");
  return detail::log_gamma_any(s);
}

// ---------------------------------------------------------------------------
// Riemann-Siegel remainder machinery.
//
// Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p) is entire (the denominator
// zeros at quarter-integers are cancelled by the numerator).  The correction
// terms are the classical combinations of its derivatives:
//
//   C0 =  Psi
//   C1 = -Psi'''/(96 pi^2)
//   C2 =  Psi''/(64 pi^2) + Psi^(6)/(18432 pi^4)
//   C3 = -Psi'/(64 pi^2) - Psi^(5)/(3840 pi^4) - Psi^(9)/(5308416 pi^6)
//   C4 =  Psi/(128 pi^2) + 19 Psi^(4)/(24576 pi^4)
//        + 11 Psi^(8)/(5898240 pi^6) + Psi^(12)/(2038431744 pi^8)
//
// Derivatives up to order 12 are extracted from a trapezoidal Cauchy
// integral on |w - p| = 1 (spectrally accurate for an entire function; the
// half-offset nodes keep the contour away from the real-axis zeros of
// cos 2pi w).  Each C_k is then fit once by a degree-40 Chebyshev series on
// p in [0,1] and evaluated by Clenshaw in the hot loop.
// ---------------------------------------------------------------------------

namespace {

std::complex<double> rs_psi(std::complex<double> w) {
  return std::cos(TWO_PI * (w * w - w - 0.0625)) / std::cos(TWO_PI * w);
}

void psi_taylor(double p, double* a /* a[0..12]: Psi^(d)(p)/d! */) {
  constexpr int M = 128;
  std::complex<double> acc[13] = {};
  for (int j = 0; j < M; j++) {
    double phi = TWO_PI * (j + 0.5) / M;
    std::complex<double> e(std::cos(phi), std::sin(phi));
    std::complex<double> val = rs_psi(std::complex<double>(p) + e);
    std::complex<double> em = std::conj(e);
    std::complex<double> rot(1.0, 0.0);
    for (int d = 0; d <= 12; d++) {
      acc[d] += val * rot;
      rot *= em;
    }
  }
  for (int d = 0; d <= 12; d++) a[d] = acc[d].real() / M;
}

double ck_from_taylor(int k, const double* a) {
  auto D = [&](int d) {  // Psi^(d)(p)
    double f = 1.0;
    for (int i = 2; i <= d; i++) f *= double(i);
    return a[d] * f;
  };
  const double P2 = PI * PI;
  const double P4 = P2 * P2;
  const double P6 = P4 * P2;
  const double P8 = P4 * P4;
  switch (k) {
    case 0:
      return a[0];
    case 1:
      return -D(3) / (96 * P2);
    case 2:
      return D(2) / (64 * P2) + D(6) / (18432 * P4);
    case 3:
      return -D(1) / (64 * P2) - D(5) / (3840 * P4) - D(9) / (5308416 * P6);
    default:
      return a[0] / (128 * P2) + 19 * D(4) / (24576 * P4) +
             11 * D(8) / (5898240 * P6) + D(12) / (2038431744.0 * P8);
  }
}

struct RsCheb {
  static constexpr int N = 40;
  double coef[5][N];

  double eval(int k, double p) const {  // Clenshaw on y = 2p - 1
    double y = 2.0 * p - 1.0;
    double y2 = 2.0 * y;
    double b1 = 0.0, b2 = 0.0;
    for (int c = N - 1; c >= 1; --c) {
      double b0 = coef[k][c] + y2 * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return 0.5 * coef[k][0] + y * b1 - b2;
  }
};

const RsCheb& rs_coeffs() {
  static const RsCheb tab = [] {
    RsCheb T{};
    double fv[5][RsCheb::N];
    for (int j = 0; j < RsCheb::N; j++) {
      double y = std::cos(PI * (j + 0.5) / RsCheb::N);
      double p = 0.5 * (y + 1.0);
      double a[13];
      psi_taylor(p, a);
      for (int k = 0; k < 5; k++) fv[k][j] = ck_from_taylor(k, a);
    }
    for (int k = 0; k < 5; k++)
      for (int c = 0; c < RsCheb::N; c++) {
        double s = 0.0;
        for (int j = 0; j < RsCheb::N; j++)
          s += fv[k][j] * std::cos(PI * c * (j + 0.5) / RsCheb::N);
        T.coef[k][c] = 2.0 * s / RsCheb::N;
      }
    return T;
  }();
  return tab;
}

}  // namespace

namespace detail {
double rs_correction(int k, double p) { return rs_coeffs().eval(k, p); }
}  // namespace detail

namespace detail {
double z_rs_raw(double t) {
  if (!(t >= TWO_PI)) throw validation_error("z_function: t must be >= 2*pi");
  dd th = theta_dd(t);
  dd u = dd_div(dd(t), ddc::two_pi);
  dd tau = dd_sqrt(u);
  long N = long(std::floor(to_double(tau)));
  double p = to_double(dd_sub(tau, double(N)));
  if (p < 0.0) {
    p += 1.0;
    N -= 1;
  } else if (p >= 1.0) {
    p -= 1.0;
    N += 1;
  }
  kahan sum;
  for (long n = 1; n <= N; n++) {
    dd ph = dd_sub(th, dd_mul(dd(t), detail::log_int(n)));
    sum.add(std::cos(mod_2pi(ph)) / std::sqrt(double(n)));
  }
  double x = to_double(u);
  double xq = 1.0 / std::sqrt(std::sqrt(x));  // (t/2pi)^{-1/4}
  double w = 1.0 / std::sqrt(x);              // (t/2pi)^{-1/2}
  const RsCheb& C = rs_coeffs();
  double rem = C.eval(4, p);
  for (int k = 3; k >= 0; --k) rem = rem * w + C.eval(k, p);
  rem *= xq * ((N & 1) ? 1.0 : -1.0);  // (-1)^{N-1}
  return 2.0 * sum.total() + rem;
}
}  // namespace detail

double z_function(double t) {
  if (!(t >= TWO_PI)) throw validation_error("z_function: t must be >= 2*pi");
  // The C0..C4 remainder bottoms out near ~3e-6 around t ~ 14..25 (the
  // series is asymptotic in (t/2pi)^{-1/2}); below t = 200 the short
  // Euler-Maclaurin evaluation is both cheaper than it looks (~120 terms)
  // and accurate to ~1e-13, which keeps low zeros correct to well below
  // Odlyzko's published 1e-9 grid.  Above 200 the Riemann-Siegel error is
  // under ~2e-8 and falls like t^{-11/4}.
  if (t < 200.0) return z_em(t);
  return detail::z_rs_raw(t);
}

std::complex<double> zeta_half_em(double t) {
  // Euler-Maclaurin with N ~ 0.6 t terms and Bernoulli tail; oracle-grade
  // accuracy for t up to a few thousand.  Phases t ln n are reduced in dd.
  if (!(t >= 0.0)) throw validation_error("zeta_half_em: t must be >= 0");
  long N = std::max<long>(32, long(std::ceil(0.6 * t)));
  std::complex<double> s(0.5, t);
  kahan_c sum;
  for (long n = 1; n < N; n++) {
    double ph = mod_2pi(dd_mul(dd(t), detail::log_int(n)));
    double r = 1.0 / std::sqrt(double(n));
    sum.add(cplx(r * std::cos(ph), -r * std::sin(ph)));
  }
  double phN = mod_2pi(dd_mul(dd(t), detail::log_int(N)));
  double rN = 1.0 / std::sqrt(double(N));
  std::complex<double> Ns(rN * std::cos(phN), -rN * std::sin(phN));  // N^{-s}
  std::complex<double> res =
      sum.total() + Ns * double(N) / (s - 1.0) + 0.5 * Ns;
  // Bernoulli tail: B_{2k}/(2k)! * N^{1-s-2k} * prod_{j=0}^{2k-2}(s+j)
  static const double B2k[15] = {
      1.0 / 6,       -1.0 / 30,      1.0 / 42,       -1.0 / 30,
      5.0 / 66,      -691.0 / 2730,  7.0 / 6,        -3617.0 / 510,
      43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
      8553103.0 / 6, -23749461029.0 / 870, 8615841276005.0 / 14322};
  std::complex<double> rising = s;         // prod(s+j), j = 0..2k-2
  std::complex<double> pw = Ns / double(N);  // N^{-s-2k+1}
  double fact = 2.0;                       // (2k)!
  double prev_mag = HUGE_VAL;
  for (int k = 1; k <= 15; k++) {
    std::complex<double> term = (B2k[k - 1] / fact) * rising * pw;
    double mag = std::abs(term);
    if (mag > prev_mag) break;  // asymptotic turn-around guard
    res += term;
    if (mag < 1e-18 * std::abs(res)) break;
    prev_mag = mag;
    rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
    pw /= double(N) * double(N);
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return res;
}

double z_em(double t) {
  double ph = mod_2pi(theta_dd(t));
  std::complex<double> e(std::cos(ph), std::sin(ph));
  return (e * zeta_half_em(t)).real();
}

ChiPower chi_power(double sigma, double t, double kappa, ChiMode mode) {
  if (!(t > 0.0)) throw validation_error("chi_power: t must be > 0");
  if (!(kappa > 0.0)) throw validation_error("chi_power: kappa must be > 0");
  std::complex<double> value;
  if (mode == ChiMode::exact) {
    std::complex<double> s(sigma, t);
    std::complex<double> lg_s2 = detail::log_gamma_any(0.5 * s);
    std::complex<double> lg_1ms2;
    if (sigma == 0.5) {
      // (1-s)/2 = conj(s/2) on the critical line; use the reflection so the
      // cancellation Re log chi = 0 (|chi| = 1) is exact.
      lg_1ms2 = std::conj(lg_s2);
    } else {
      lg_1ms2 = detail::log_gamma_any(0.5 * (1.0 - s));
    }
    std::complex<double> logchi = (s - 0.5) * std::log(PI) + lg_1ms2 - lg_s2;
    value = std::exp(-kappa * logchi);
  } else {
    // (t/2pi)^{kappa(sigma+it-1/2)} e^{-i kappa(t + pi/4)}
    dd lg = dd_log(dd_div(dd(t), ddc::two_pi));
    double mod_exp = kappa * (sigma - 0.5) * to_double(lg);
    // phase = kappa (t ln(t/2pi) - t - pi/4), reduced in dd
    dd ph = dd_mul(dd(t), lg);
    ph = dd_sub(ph, dd(t));
    ph = dd_sub(ph, dd_mul_pwr2(ddc::pi, 0.25));
    double phase = mod_2pi(dd_mul(ph, kappa));
    value = std::exp(mod_exp) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return {sigma, t, kappa, value};
}

}  // namespace zgl::rs
