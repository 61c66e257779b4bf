#include "zgl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <vector>

#include "zgl/dd.hpp"
#include "zgl/rs.hpp"

namespace zgl::oracle {

namespace {

constexpr double PI = 3.141592653589793;
constexpr double TWO_PI = 6.283185307179586;

// Gauss-Kronrod 7/15 nodes and weights (positive half).
constexpr double XGK[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double WGK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double WG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b;
  cplx k15;
  double err;
};

cplx eval_point(const real_fn& amp, const real_fn& phase, double x) {
  double ph = TWO_PI * phase(x);
  // fold the phase; the callers' f can reach ~1e3 periods
  ph = std::remainder(ph, TWO_PI);
  return amp(x) * cplx(std::cos(ph), std::sin(ph));
}

Panel eval_panel(const real_fn& amp, const real_fn& phase, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx fc = eval_point(amp, phase, c);
  cplx k = WGK[7] * fc;
  cplx g = WG[3] * fc;
  for (int i = 0; i < 7; i++) {
    cplx f1 = eval_point(amp, phase, c - h * XGK[i]);
    cplx f2 = eval_point(amp, phase, c + h * XGK[i]);
    k += WGK[i] * (f1 + f2);
    if (i % 2 == 1) g += WG[i / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.k15 = h * k;
  p.err = std::abs(h * (k - g));
  return p;
}

}  // namespace

QuadResult oscillatory_integral(const real_fn& amp, const real_fn& phase,
                                double a, double b, double tol) {
  if (!(a < b)) throw validation_error("oscillatory_integral: need a < b");
  if (!(tol >= 1e-12))
    throw validation_error("oscillatory_integral: tol must be >= 1e-12");
  // Initial panelization: node spacing must resolve a quarter period, i.e.
  // panel width <= 15/(4 max|f'|).  |f'| is estimated by finite differences.
  double fp_max = 0.0;
  {
    const int S = 512;
    double prev = phase(a);
    for (int i = 1; i <= S; i++) {
      double x = a + (b - a) * double(i) / S;
      double cur = phase(x);
      fp_max = std::max(fp_max, std::fabs(cur - prev) / ((b - a) / S));
      prev = cur;
    }
  }
  long n0 = 1;
  if (fp_max > 0.0)
    n0 = std::clamp(long(std::ceil((b - a) * 4.0 * fp_max / 15.0)), 1L, 65536L);

  auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  cplx total(0.0);
  double err_total = 0.0;
  long panels = 0;
  for (long i = 0; i < n0; i++) {
    double pa = a + (b - a) * double(i) / double(n0);
    double pb = a + (b - a) * double(i + 1) / double(n0);
    Panel p = eval_panel(amp, phase, pa, pb);
    total += p.k15;
    err_total += p.err;
    heap.push(p);
    panels++;
  }
  while (err_total > tol) {
    if (panels >= 1000000) {
      QuadResult partial{total, err_total, panels};
      throw quadrature_error("oscillatory_integral: no convergence within 1e6 panels",
                             partial);
    }
    Panel worst = heap.top();
    heap.pop();
    total -= worst.k15;
    err_total -= worst.err;
    double mid = 0.5 * (worst.a + worst.b);
    Panel l = eval_panel(amp, phase, worst.a, mid);
    Panel r = eval_panel(amp, phase, mid, worst.b);
    total += l.k15 + r.k15;
    err_total += l.err + r.err;
    heap.push(l);
    heap.push(r);
    panels++;
  }
  return {total, err_total, panels};
}

namespace {

double variation_plus_max(const real_fn& g, double a, double b) {
  const int S = 4096;
  double prev = g(a), var = 0.0, mx = std::fabs(prev);
  for (int i = 1; i <= S; i++) {
    double cur = g(a + (b - a) * double(i) / S);
    var += std::fabs(cur - prev);
    mx = std::max(mx, std::fabs(cur));
    prev = cur;
  }
  return var + mx;
}

}  // namespace

OracleCase check_first_derivative(const real_fn& g, const real_fn& f,
                                  double alpha, double beta, double mu) {
  if (!(mu > 0.0)) throw validation_error("check_first_derivative: mu must be > 0");
  OracleCase c;
  c.kind = CaseKind::first_deriv;
  c.lo = alpha;
  c.hi = beta;
  c.mu = mu;
  c.V = variation_plus_max(g, alpha, beta);
  c.bound = c.V / (PI * mu);
  QuadResult q = oscillatory_integral(g, f, alpha, beta,
                                      std::max(1e-12, 1e-6 * c.bound));
  c.quad_value = q.value;
  c.quad_err = q.err_est;
  c.residual = std::abs(q.value);
  c.ok = c.residual <= c.bound + q.err_est;
  return c;
}

OracleCase check_second_derivative(const real_fn& g, const real_fn& f,
                                   double alpha, double beta, double lambda) {
  if (!(lambda > 0.0))
    throw validation_error("check_second_derivative: lambda must be > 0");
  OracleCase c;
  c.kind = CaseKind::second_deriv;
  c.lo = alpha;
  c.hi = beta;
  c.lambda = lambda;
  c.V = variation_plus_max(g, alpha, beta);
  c.bound = 4.0 * c.V / std::sqrt(PI * lambda);
  QuadResult q = oscillatory_integral(g, f, alpha, beta,
                                      std::max(1e-12, 1e-6 * c.bound));
  c.quad_value = q.value;
  c.quad_err = q.err_est;
  c.residual = std::abs(q.value);
  c.ok = c.residual <= c.bound + q.err_est;
  return c;
}

namespace {

cplx stationary_main_term(double r, double a, double kappa) {
  // kappa^{-1/2} r^{a+1/2} e^{i pi/4} e^{-2 pi i kappa r}
  double mag = std::pow(r, a + 0.5) / std::sqrt(kappa);
  double ph = PI / 4.0 - TWO_PI * dd_frac(dd_mul(dd(r), kappa));
  return mag * cplx(std::cos(ph), std::sin(ph));
}

}  // namespace

OracleCase check_stationary_phase(double r, double a, double kappa, double c) {
  if (!(r > 1.0)) throw validation_error("check_stationary_phase: r must be > 1");
  if (!(c > 0.0) || !(c < 1.0))
    throw validation_error("check_stationary_phase: c must be in (0,1)");
  if (!(kappa >= 0.5))
    throw validation_error("check_stationary_phase: kappa must be >= 0.5");
  if (r > 1e3 || kappa > 2.0)
    throw validation_error(
        "check_stationary_phase: direct quadrature capped at r <= 1e3, kappa <= 2");
  OracleCase oc;
  oc.kind = CaseKind::stationary_phase;
  oc.a_exp = a;
  oc.kappa = kappa;
  oc.r = r;
  oc.c = c;
  oc.lo = r * (1.0 - c);
  oc.hi = r * (1.0 + c);
  auto amp = [a](double x) { return std::pow(x, a); };
  auto f = [kappa, r](double x) { return kappa * x * (std::log(x / r) - 1.0); };
  QuadResult q =
      oscillatory_integral(amp, f, oc.lo, oc.hi, 1e-6 * std::pow(r, a));
  oc.quad_value = q.value;
  oc.quad_err = q.err_est;
  oc.predicted = stationary_main_term(r, a, kappa);
  oc.residual = std::abs(q.value - oc.predicted);
  return oc;
}

SplitCase check_split_interval(double A, double B, double r, double a,
                               double kappa) {
  if (!(A < B) || A < 0.49 * r || B > 2.01 * r)
    throw validation_error("check_split_interval: need r/2 <= A < B <= 2r");
  SplitCase sc;
  sc.A = A;
  sc.B = B;
  sc.r = r;
  sc.a_exp = a;
  sc.kappa = kappa;
  auto amp = [a](double x) { return std::pow(x, a); };
  auto f = [kappa, r](double x) { return kappa * x * (std::log(x / r) - 1.0); };
  QuadResult q = oscillatory_integral(amp, f, A, B, 1e-6 * std::pow(r, a));
  sc.quad_value = q.value;
  sc.main_term = (A <= r && r <= B) ? stationary_main_term(r, a, kappa)
                                    : cplx(0.0, 0.0);
  sc.residual = std::abs(q.value - sc.main_term);
  double sq = std::sqrt(r);
  sc.bound_base = std::pow(r, a) + std::pow(r, a + 1.0) / (std::fabs(A - r) + sq) +
                  std::pow(r, a + 1.0) / (std::fabs(B - r) + sq);
  sc.c_equiv = sc.residual / sc.bound_base;
  return sc;
}

ChiAsymReport check_chi_asymptotic(double sigma, double t, double kappa) {
  if (!(t >= 100.0))
    throw validation_error("check_chi_asymptotic: t must be >= 100");
  if (!(sigma >= -1.0) || !(sigma <= 1.5))
    throw validation_error("check_chi_asymptotic: sigma must be in [-1, 1.5]");
  auto ex = rs::chi_power(sigma, t, kappa, rs::ChiMode::exact);
  auto as = rs::chi_power(sigma, t, kappa, rs::ChiMode::asymptotic);
  ChiAsymReport rep;
  rep.sigma = sigma;
  rep.t = t;
  rep.kappa = kappa;
  rep.rel_dev = std::abs(ex.value - as.value) / std::abs(ex.value);
  rep.c_scaled = rep.rel_dev * t;
  return rep;
}

std::string case_json(const OracleCase& c) {
  const char* kind = "";
  switch (c.kind) {
    case CaseKind::first_deriv: kind = "first_deriv"; break;
    case CaseKind::second_deriv: kind = "second_deriv"; break;
    case CaseKind::stationary_phase: kind = "stationary_phase"; break;
    case CaseKind::chi_asymptotic: kind = "chi_asymptotic"; break;
  }
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "{\"kind\": \"%s\", \"a\": %.12g, \"kappa\": %.12g, \"r\": %.12g, "
                "\"lo\": %.12g, \"hi\": %.12g, \"mu\": %.12g, \"lambda\": %.12g, "
                "\"V\": %.12g, \"quad_re\": %.12g, \"quad_im\": %.12g, "
                "\"pred_re\": %.12g, \"pred_im\": %.12g, \"bound\": %.12g, "
                "\"residual\": %.12g, \"quad_err\": %.12g, \"ok\": %s}",
                kind, c.a_exp, c.kappa, c.r, c.lo, c.hi, c.mu, c.lambda, c.V,
                c.quad_value.real(), c.quad_value.imag(), c.predicted.real(),
                c.predicted.imag(), c.bound, c.residual, c.quad_err,
                c.ok ? "true" : "false");
  return buf;
}

}  // namespace zgl::oracle
