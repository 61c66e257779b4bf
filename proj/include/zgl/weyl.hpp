#pragma once
// weyl.hpp -- normalized zeros x_n = theta(gamma_n)/pi, the zero-side sums
//
//   U(T, kappa) = sum_{gamma <= T} e^{2 i kappa theta(gamma)}
//               = sum_{gamma <= T} e^{2 pi i kappa x_n},
//
// their mean values U/N(T), and the report tying U to the prime side P with
// the residual normalized by T^{max((1-kappa)/2, kappa/2)} (log T)^2.
//
// Each zero contributes one theta evaluation; x is carried in dd so that
// kappa*x mod 1 is accurate after the multiply (x reaches ~2e6 at the
// supported ceiling).  Sums are block-sharded with compensated partials and
// a deterministic ordered merge.

#include <complex>
#include <string>
#include <vector>

#include "zgl/arith.hpp"
#include "zgl/zeros.hpp"

namespace zgl::weyl {

struct NormalizedZero {
  long index;    // 1-based
  double gamma;
  double x;      // theta(gamma)/pi
  double frac;   // x mod 1 in [0,1)
};

// x_n for every zero in the list; all gammas must be >= 10.
std::vector<NormalizedZero> normalized_zeros(const zeros::ZeroList& zl);

// U(T, kappa); kappa = 0 returns N(T) exactly.  T must be <= zl.t_max.
std::complex<double> zero_side_sum(const zeros::ZeroList& zl, double T,
                                   double kappa);
std::complex<double> zero_side_sum_serial(const zeros::ZeroList& zl, double T,
                                          double kappa);

// U(T, kappa)/N(T); N(T) = 0 is an error.
std::complex<double> mean_value(const zeros::ZeroList& zl, double T,
                                double kappa);

struct WeylReport {
  double T = 0.0;
  double kappa = 0.0;
  long N_T = 0;
  std::complex<double> U;         // zero side
  std::complex<double> P;         // prime side
  std::complex<double> residual;  // U - P
  double bound_exponent = 0.0;    // max((1-kappa)/2, kappa/2)
  double normalized_residual = 0.0;  // |residual| / (T^be (ln T)^2)
};

WeylReport main_theorem_report(const zeros::ZeroList& zl,
                               const arith::LambdaTable& table, double T,
                               double kappa);

// CSV emitters (fixed 12-significant-digit formatting).
std::string normalized_csv(const std::vector<NormalizedZero>& xs);
std::string report_csv(const std::vector<WeylReport>& reports);

}  // namespace zgl::weyl
