#pragma once
// rs.hpp -- Riemann-Siegel core: theta(t), Hardy's Z(t), complex log-gamma,
// and chi(s)^{-kappa}.
//
//   zeta(1/2+it) = e^{-i theta(t)} Z(t),   chi(1/2+it) = e^{-2i theta(t)},
//   theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
//
// theta is evaluated in double-double: its absolute size (~7e7 at t = 1e7)
// exceeds what a single binary64 can hold to 1e-9, while all consumers need
// it mod pi or mod 2pi.  The asymptotic expansion
//
//   theta(t) = (t/2) ln(t/2pi) - t/2 - pi/8
//              + 1/(48t) + 7/(5760 t^3) + 31/(80640 t^5) + 127/(430080 t^7)
//              + O(t^-9)
//
// is used for t >= 10 (first omitted term 511/(1216512 t^9) < 5e-13 there);
// below 10 the log-gamma route is used.  Both routes are exposed so tests
// can confront them on the overlap.
//
// Z(t) is the Riemann-Siegel main sum plus the remainder through correction
// terms C0..C4 built from Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p); the C_k
// are sampled once through contour-integral Taylor coefficients of Psi and
// stored as Chebyshev fits.  An Euler-Maclaurin evaluation of zeta(1/2+it)
// is kept in-tree as the independent slow path for cross-validation.

#include <complex>

#include "zgl/dd.hpp"
#include "zgl/util.hpp"

namespace zgl::rs {

struct ThetaValue {
  double t;
  double theta;       // leading double of the phase
  double theta_tail;  // double-double tail; theta + theta_tail is the value
  double err_est;     // absolute error bound on the dd value
};

// theta(t) for t >= 0; total on its domain.
ThetaValue theta(double t);
dd theta_dd(double t);  // same value as an unevaluated hi/lo pair

// theta'(t) for t > 0, absolute error <= 1e-9 for t >= 10.
double theta_deriv(double t);

// log-gamma route for theta, any t >= 0 (reference path for tests).
double theta_reference(double t);

// Principal-branch (canonical) log Gamma(s) for Re s > 0; relative error
// ~1e-12.  Stirling with recursion shift into |s| >= 12.
std::complex<double> log_gamma_complex(std::complex<double> s);

// Hardy Z(t), t >= 2*pi: Riemann-Siegel main sum + C0..C4 remainder for
// t >= 200, Euler-Maclaurin below (where the asymptotic remainder bottoms
// out near ~3e-6 and low zeros would shift by more than Odlyzko's grid).
double z_function(double t);

// Euler-Maclaurin zeta(1/2+it): slow, independent cross-check path.
std::complex<double> zeta_half_em(double t);
double z_em(double t);  // Re(e^{i theta(t)} zeta_EM(1/2+it))

enum class ChiMode { exact, asymptotic };

struct ChiPower {
  double sigma;
  double t;
  double kappa;
  std::complex<double> value;  // chi(sigma+it)^{-kappa}
};

// chi(s)^{-kappa} for t > 0, kappa > 0.  exact: functional-equation form
// pi^{s-1/2} Gamma((1-s)/2)/Gamma(s/2) via log-gamma;  asymptotic:
// (t/2pi)^{kappa(sigma+it-1/2)} e^{-i kappa(t+pi/4)}.
ChiPower chi_power(double sigma, double t, double kappa, ChiMode mode);

namespace detail {
// canonical log Gamma valid for Re z > 0, or Re z <= 0 with |Im z| >= 1
std::complex<double> log_gamma_any(std::complex<double> z);
// pure Riemann-Siegel evaluation for any t >= 2*pi (cross-check path)
double z_rs_raw(double t);
// C_k(p) for k = 0..4 (Chebyshev-fit evaluation), exposed for tests
double rs_correction(int k, double p);
// dd log of a small positive integer, cached
dd log_int(long n);
}  // namespace detail

}  // namespace zgl::rs
