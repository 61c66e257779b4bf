#pragma once
// oracle.hpp -- independent quadrature checks for the analytic toolbox:
// first/second derivative test bounds, the stationary-phase main term
//
//   int_{r(1-c)}^{r(1+c)} x^a e^{2 pi i kappa x ln(x/(e r))} dx
//     = kappa^{-1/2} r^{a+1/2} e^{i pi/4} e^{-2 pi i kappa r} + R,  |R| <= C r^a,
//
// its split-interval variant on [A,B] within [r/2, 2r], and the chi
// asymptotic deviation.  The integrator is an adaptive Gauss-Kronrod 7/15
// on g(x) e^{2 pi i f(x)} with the initial panelization sized so every node
// spacing resolves a quarter period.

#include <complex>
#include <functional>
#include <string>

#include "zgl/util.hpp"

namespace zgl::oracle {

using real_fn = std::function<double(double)>;

struct QuadResult {
  std::complex<double> value;
  double err_est = 0.0;
  long panels = 0;
};

struct quadrature_error : check_error {
  QuadResult partial;
  quadrature_error(const std::string& msg, QuadResult p)
      : check_error(msg), partial(p) {}
};

// integral of amp(x) e^{2 pi i phase(x)} over [a,b]; |value-truth| <= err_est
// <= tol on success; throws quadrature_error (carrying the partial result)
// past 1e6 panels.
QuadResult oscillatory_integral(const real_fn& amp, const real_fn& phase,
                                double a, double b, double tol);

enum class CaseKind { first_deriv, second_deriv, stationary_phase, chi_asymptotic };

struct OracleCase {
  CaseKind kind;
  // parameters (meaning depends on kind; unused ones stay 0)
  double a_exp = 0.0;   // amplitude exponent a
  double kappa = 0.0;
  double r = 0.0;       // stationary radius
  double lo = 0.0, hi = 0.0;  // integration interval
  double mu = 0.0;      // min |f'| (first derivative test)
  double lambda = 0.0;  // min f'' (second derivative test)
  double V = 0.0;       // variation + max modulus of g
  double c = 0.0;       // relative half-width of the stationary window
  // results
  std::complex<double> quad_value;
  std::complex<double> predicted;  // main term (stationary phase) or 0
  double bound = 0.0;              // derivative-test bound, when applicable
  double residual = 0.0;           // |quad - predicted| or bound margin
  double quad_err = 0.0;
  bool ok = true;
};

// Lemma-style derivative tests: |int g e^{2 pi i f}| <= V/(pi mu), resp.
// 4 V / sqrt(pi lambda).  V is measured from g by fine sampling.
OracleCase check_first_derivative(const real_fn& g, const real_fn& f,
                                  double alpha, double beta, double mu);
OracleCase check_second_derivative(const real_fn& g, const real_fn& f,
                                   double alpha, double beta, double lambda);

// Stationary-phase window: quadrature vs main term; residual should obey
// residual <= C r^a with one C per (a, kappa) across an r sweep.
OracleCase check_stationary_phase(double r, double a, double kappa, double c);

// Split-interval variant: [A,B] inside [r/2, 2r]; the main term is present
// only when A <= r <= B, and the residual is measured against
// r^a + r^{a+1}/(|A-r|+sqrt r) + r^{a+1}/(|B-r|+sqrt r).
struct SplitCase {
  double A = 0.0, B = 0.0, r = 0.0, a_exp = 0.0, kappa = 0.0;
  std::complex<double> quad_value, main_term;
  double residual = 0.0;
  double bound_base = 0.0;
  double c_equiv = 0.0;  // residual / bound_base
};
SplitCase check_split_interval(double A, double B, double r, double a,
                               double kappa);

struct ChiAsymReport {
  double sigma = 0.0, t = 0.0, kappa = 0.0;
  double rel_dev = 0.0;   // |exact - asymptotic| / |exact|
  double c_scaled = 0.0;  // rel_dev * t  (the O(1/t) constant)
};
ChiAsymReport check_chi_asymptotic(double sigma, double t, double kappa);

// one JSON object per case, fixed formatting
std::string case_json(const OracleCase& c);

}  // namespace zgl::oracle
