#pragma once
// stats.hpp -- distribution statistics for the normalized zeros: histogram
// mod 1, the cosine-density fit rho(x) = 1 - c cos(2 pi x), star discrepancy,
// normalized spacings, and the Titchmarsh means of Z at even/odd Gram points.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zgl/zeros.hpp"

namespace zgl::stats {

struct Histogram {
  int bins = 0;
  std::vector<uint64_t> counts;  // bin b covers [b/B, (b+1)/B)
  uint64_t total = 0;
};

// Histogram of frac(values) with B bins, 2 <= B <= 1e4.
Histogram histogram_mod1(std::span<const double> values, int B);
Histogram histogram_mod1_serial(std::span<const double> values, int B);

struct DensityFit {
  double c = 0.0;    // amplitude in 1 - c cos(2 pi x)
  double rss = 0.0;  // residual sum of squares of normalized heights
};

// Unweighted least squares on normalized bin heights at bin centers;
// closed-form amplitude.  Requires total >= 1000.
DensityFit fit_cosine_density(const Histogram& h);

// D*_N over values in [0,1) (exact sorted-order formula).
double star_discrepancy(std::span<const double> values);

struct SpacingSeries {
  std::vector<double> delta;        // (gamma_{n+1}-gamma_n)/(2pi) * ln(gamma_n/2pi)
  std::vector<double> exact;        // x_{n+1} - x_n
  double max_abs_diff = 0.0;        // max |delta_n - exact_n|
};

SpacingSeries spacings(const zeros::ZeroList& zl);

struct GramZMeans {
  double even_mean = 0.0;  // mean of Z(g_{2n}), 2n <= M
  double odd_mean = 0.0;   // mean of Z(g_{2n+1}), 2n+1 <= M
  long M = 0;
};

// Means of Z over Gram points g_0..g_M; M >= 100.
GramZMeans gram_z_means(long M);

// Emitters (bit-stable fixed formatting).
std::string histogram_csv(const Histogram& h);
std::string histogram_svg(const Histogram& h, double c_fit);
std::string summary_json(uint64_t N, int B, double c, double rss, double dstar);

}  // namespace zgl::stats
