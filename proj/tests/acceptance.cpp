// Acceptance suite: runs every gate criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion.  Exit 0 iff all pass.
//
// Data scale: criteria run on computed zeros up to T = 1e5 (shared scan).
// Criterion 6 reproduces the two-million-zero histogram when either
//   ZGL_ACCEPT_EXTENDED=1   (compute the first 2,001,052 zeros, ~minutes), or
//   ZGL_ODLYZKO=<path>      (import a published table covering them);
// otherwise it runs the documented first-1e5 fallback.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zgl/arith.hpp"
#include "zgl/oracle.hpp"
#include "zgl/rs.hpp"
#include "zgl/shard.hpp"
#include "zgl/stats.hpp"
#include "zgl/weyl.hpp"
#include "zgl/zeros.hpp"

using namespace zgl;
using clk = std::chrono::steady_clock;

namespace {

constexpr double PI = 3.141592653589793;
constexpr double TWO_PI = 6.283185307179586;

int g_pass = 0, g_fail = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("[%2d] %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  (ok ? g_pass : g_fail)++;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double secs(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = double(x.size());
  for (size_t i = 0; i < x.size(); i++) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Golden {
  // kind -> (a, kappa) -> frozen C
  double stationary[2][2] = {{0, 0}, {0, 0}};
  double split[2][2] = {{0, 0}, {0, 0}};
};

Golden load_golden() {
  Golden g;
  std::ifstream in(std::string(ZGL_GOLDEN_DIR) + "/oracle_constants.csv");
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string kind, a_s, k_s, c_s;
    std::getline(ss, kind, ',');
    std::getline(ss, a_s, ',');
    std::getline(ss, k_s, ',');
    std::getline(ss, c_s, ',');
    if (kind != "stationary" && kind != "split") continue;
    int ia = (std::stod(a_s) == 0.0) ? 0 : 1;
    int ik = (std::stod(k_s) == 1.0) ? 0 : 1;
    if (kind == "stationary") g.stationary[ia][ik] = std::stod(c_s);
    if (kind == "split") g.split[ia][ik] = std::stod(c_s);
  }
  return g;
}

std::vector<double> fracs_of(const zeros::ZeroList& zl, size_t n) {
  zeros::ZeroList head = zl;
  if (head.gammas.size() > n) {
    head.gammas.resize(n);
    head.t_max = head.gammas.back();
  }
  auto xs = weyl::normalized_zeros(head);
  std::vector<double> fr;
  fr.reserve(xs.size());
  for (auto& z : xs) fr.push_back(z.frac);
  return fr;
}

}  // namespace

int main() {
  const char* odlyzko_env = std::getenv("ZGL_ODLYZKO");
  const char* extended_env = std::getenv("ZGL_ACCEPT_EXTENDED");
  bool extended = (extended_env && std::strcmp(extended_env, "1") == 0);

  std::printf("acceptance: shared zero scan to T = 1e5 ...\n");
  auto t_scan0 = clk::now();
  auto zl = zeros::scan_zeros(10.0, 100000.0);
  auto t_scan1 = clk::now();
  std::printf("  %zu zeros in %.1f s (%zu deficits)\n", zl.gammas.size(),
              secs(t_scan0, t_scan1), zl.deficits.size());

  // --- 1. zero correctness -------------------------------------------------
  {
    auto t0 = clk::now();
    bool ok = zl.gammas.size() >= 10000 && zl.deficits.empty();
    double worst = 0.0;
    std::string mode;
    if (odlyzko_env) {
      mode = "vs imported table (1e-6)";
      auto imp = zeros::import_zeros(odlyzko_env);
      size_t n = std::min<size_t>(10000, imp.gammas.size());
      for (size_t i = 0; i < n && ok; i++)
        worst = std::max(worst, std::fabs(zl.gammas[i] - imp.gammas[i]));
      ok = ok && worst <= 1e-6;
    } else {
      mode = "vs dense-grid oracle (1e-8)";
      double top = zl.gammas[9999] + 0.05;
      // sharded brute-force scan, step 0.01, independent bisection refine
      long nb = 200;
      std::vector<std::vector<double>> parts(static_cast<size_t>(nb));
      map_blocks<int>(0, nb, 1, [&](long b, long) {
        double lo = 10.0 + (top - 10.0) * double(b) / double(nb);
        double hi = 10.0 + (top - 10.0) * double(b + 1) / double(nb);
        parts[size_t(b)] = test_oracle::dense_scan(lo, hi, 0.01);
        return 0;
      });
      std::vector<double> oracle;
      for (auto& p : parts)
        for (double z : p) oracle.push_back(z);
      ok = ok && oracle.size() >= 10000;
      for (size_t i = 0; i < 10000 && ok; i++)
        worst = std::max(worst, std::fabs(zl.gammas[i] - oracle[i]));
      ok = ok && worst <= 1e-8;
    }
    double dt = secs(t0, clk::now());
    ok = ok && dt < 60.0;
    report(1, ok, fmt("zero correctness %s: max dev %.3g, %.1f s",
                      mode.c_str(), worst, dt));
  }

  // --- 2. count consistency ------------------------------------------------
  {
    auto t0 = clk::now();
    double worst = 0.0;
    long checks = 0;
    for (long k = 0;; k += 100) {
      auto g = zeros::gram_point(k);
      if (g.g > 100000.0) break;
      auto cc = zeros::zero_count_check(g.g, zl);
      worst = std::max(worst, std::fabs(cc.s_estimate));
      checks++;
    }
    double dt = secs(t0, clk::now()) + secs(t_scan0, t_scan1);
    bool ok = worst <= 3.0 && dt < 300.0;
    report(2, ok, fmt("count consistency: max |s| = %.3f over %ld checkpoints, %.1f s total",
                      worst, checks, dt));
  }

  auto table = arith::lambda_sieve(200000);

  // --- 3. kappa = 1 identity ----------------------------------------------
  {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(100.0, 1e6);
    double worst_rel = 0.0;
    for (int i = 0; i < 10; i++) {
      double T = u(rng);
      auto ps = arith::prime_side_sum(T, 1.0, table);
      double psi = arith::chebyshev_psi(std::floor(T / TWO_PI), table);
      worst_rel = std::max(worst_rel,
                           std::abs(ps.value + cplx(psi, 0.0)) / std::max(1.0, psi));
    }
    double C = 0.0;
    for (double T : {1e3, 3e3, 1e4, 3e4, 1e5}) {
      auto U = weyl::zero_side_sum(zl, T, 1.0);
      double psi = arith::chebyshev_psi(std::floor(T / TWO_PI), table);
      C = std::max(C, std::abs(U + cplx(psi, 0.0)) /
                          (std::sqrt(T) * std::pow(std::log(T), 2)));
    }
    bool ok = worst_rel <= 1e-12 && C < 10.0;
    report(3, ok, fmt("kappa=1 identity: P vs -psi rel %.2e; |U+psi| <= C sqrt(T) log^2 T with C = %.4f",
                      worst_rel, C));
  }

  // --- 4. residual scaling -------------------------------------------------
  {
    bool ok = true;
    std::string detail;
    for (double kap : {0.5, 1.0, 1.1}) {
      std::vector<double> lx, ly;
      for (double T : {1e3, 1e4, 1e5}) {
        auto rep = weyl::main_theorem_report(zl, table, T, kap);
        lx.push_back(std::log(T));
        ly.push_back(std::log(std::abs(rep.residual)));
      }
      double slope = ols_slope(lx, ly);
      double bound = std::max(0.5 * (1.0 - kap), 0.5 * kap) + 0.15;
      ok = ok && slope <= bound;
      detail += fmt("k=%.1f: %.3f<=%.3f ", kap, slope, bound);
    }
    report(4, ok, "residual scaling slopes: " + detail);
  }

  // --- 5. mean-value decay -------------------------------------------------
  {
    bool ok = true;
    std::string detail;
    for (double kap : {0.5, 1.0, 1.1}) {
      double m3 = std::abs(weyl::mean_value(zl, 1e3, kap));
      double m5 = std::abs(weyl::mean_value(zl, 1e5, kap));
      ok = ok && m5 < m3;
      detail += fmt("k=%.1f: %.4f->%.4f ", kap, m3, m5);
    }
    auto m0 = weyl::mean_value(zl, 1e5, 0.0);
    ok = ok && m0 == cplx(1.0, 0.0);
    report(5, ok, "mean decay 1e3 -> 1e5: " + detail + "; kappa=0 mean = 1 exact");
  }

  // --- 6. Figure-1 reproduction ---------------------------------------------
  {
    bool ok;
    std::string what;
    if (extended || odlyzko_env) {
      const size_t FULL = 2001052;
      zeros::ZeroList big;
      if (odlyzko_env) {
        big = zeros::import_zeros(odlyzko_env);
      } else {
        auto te0 = clk::now();
        big = zeros::scan_zeros(10.0, 1132500.0);
        std::printf("  extended scan: %zu zeros in %.0f s (%zu deficits)\n",
                    big.gammas.size(), secs(te0, clk::now()),
                    big.deficits.size());
      }
      ok = big.gammas.size() >= FULL && big.deficits.empty();
      if (ok) {
        auto fr = fracs_of(big, FULL);
        auto h = stats::histogram_mod1(fr, 50);
        auto fit = stats::fit_cosine_density(h);
        kahan_c mean;
        for (double f : fr)
          mean.add(cplx(std::cos(TWO_PI * f), std::sin(TWO_PI * f)));
        cplx m = mean.total() / double(fr.size());
        // trend toward uniformity: early window vs late window amplitude
        auto h_early = stats::histogram_mod1(
            std::vector<double>(fr.begin(), fr.begin() + 100000), 50);
        std::vector<double> late(fr.begin() + 1000000, fr.begin() + 2000000);
        auto h_late = stats::histogram_mod1(late, 50);
        double c_early = stats::fit_cosine_density(h_early).c;
        double c_late = stats::fit_cosine_density(h_late).c;
        ok = std::fabs(fit.c - 0.176) <= 0.03 &&
             std::fabs(m.real() - (-3.0 / 34.0)) <= 0.02 &&
             std::fabs(m.imag()) <= 0.02 && c_early >= c_late - 0.02;
        what = fmt("figure-1 full N=%zu: c = %.4f (3/17 = 0.1765), mean = %.4f%+.4fi (-3/34 = -0.0882); c trend %.3f -> %.3f",
                   FULL, fit.c, m.real(), m.imag(), c_early, c_late);
      } else {
        what = fmt("figure-1 full: only %zu zeros available (%zu deficits)",
                   big.gammas.size(), big.deficits.size());
      }
    } else {
      auto fr = fracs_of(zl, 100000);
      auto h = stats::histogram_mod1(fr, 50);
      auto fit = stats::fit_cosine_density(h);
      kahan_c mean;
      for (double f : fr)
        mean.add(cplx(std::cos(TWO_PI * f), std::sin(TWO_PI * f)));
      cplx m = mean.total() / double(fr.size());
      // histogram shape: depleted near 0 and 1, peaked mid-interval
      uint64_t lo_bin = std::min(h.counts.front(), h.counts.back());
      uint64_t hi_bin = *std::max_element(h.counts.begin(), h.counts.end());
      ok = fit.c >= 0.10 && fit.c <= 0.30 && m.real() < 0.0 &&
           double(lo_bin) / double(hi_bin) < 0.95;
      what = fmt("figure-1 fallback N=1e5: c = %.4f in [0.10,0.30], Re mean = %.4f < 0, bin ratio %.3f",
                 fit.c, m.real(), double(lo_bin) / double(hi_bin));
    }
    report(6, ok, what);
  }

  // --- 7. Gram Z-means -------------------------------------------------------
  {
    auto g3 = stats::gram_z_means(1000);
    auto g5 = stats::gram_z_means(100000);
    bool ok = g5.even_mean > 0.0 && g5.odd_mean < 0.0 &&
              std::fabs(g5.even_mean - 2.0) < std::fabs(g3.even_mean - 2.0) &&
              std::fabs(g5.odd_mean + 2.0) < std::fabs(g3.odd_mean + 2.0);
    report(7, ok, fmt("gram Z-means: even %.4f -> %.5f (to 2), odd %.4f -> %.5f (to -2)",
                      g3.even_mean, g5.even_mean, g3.odd_mean, g5.odd_mean));
  }

  // --- 8. stationary-phase oracle -------------------------------------------
  {
    Golden gold = load_golden();
    bool ok = true;
    double worst_c = 0.0;
    for (int ia = 0; ia < 2; ia++)
      for (int ik = 0; ik < 2; ik++) {
        double a = ia == 0 ? 0.0 : 0.5;
        double kap = ik == 0 ? 1.0 : 1.2;
        double C = 0.0;
        for (double r : {50.0, 100.0, 200.0, 400.0}) {
          auto oc = oracle::check_stationary_phase(r, a, kap, 0.5);
          C = std::max(C, oc.residual / std::pow(r, a));
          ok = ok && oc.quad_err < oc.residual / 10.0;
        }
        worst_c = std::max(worst_c, C);
        ok = ok && C <= gold.stationary[ia][ik] && gold.stationary[ia][ik] < 5.0;
      }
    // split-interval grid at r = 100
    for (int ia = 0; ia < 2; ia++)
      for (int ik = 0; ik < 2; ik++) {
        double a = ia == 0 ? 0.0 : 0.5;
        double kap = ik == 0 ? 1.0 : 1.2;
        double C = 0.0;
        for (double A : {50.0, 70.0, 90.0, 110.0, 130.0})
          for (double B : {90.0, 110.0, 130.0, 160.0, 200.0}) {
            if (!(A < B)) continue;
            C = std::max(C, oracle::check_split_interval(A, B, 100.0, a, kap).c_equiv);
          }
        ok = ok && C <= gold.split[ia][ik];
      }
    // derivative-test bounds never violated over the case grid
    const oracle::real_fn amps[3] = {
        [](double) { return 1.0; },
        [](double x) { return std::sqrt(std::fabs(x) + 0.01); },
        [](double x) { return x; }};
    for (const auto& g : amps) {
      for (double mu : {1.0, 2.0}) {
        auto c = oracle::check_first_derivative(
            g, [mu](double x) { return mu * x; }, 0.5, 2.0, mu);
        ok = ok && c.ok;
        auto c2 = oracle::check_first_derivative(
            g, [](double x) { return 0.5 * x * x; }, 1.0, 3.0, 1.0);
        ok = ok && c2.ok;
      }
      for (double lam : {1.0, 2.0, 4.0}) {
        auto c = oracle::check_second_derivative(
            g, [lam](double x) { return 0.5 * lam * x * x; }, 0.0, 1.5, lam);
        ok = ok && c.ok;
      }
    }
    report(8, ok, fmt("stationary-phase oracle: worst C = %.4f (frozen bounds hold, all < 5); derivative bounds never violated",
                      worst_c));
  }

  // --- 9. Piatetski-Shapiro growth ------------------------------------------
  {
    auto tab6 = arith::lambda_sieve(1000000);
    std::vector<double> lx, ly;
    for (double x : {1e4, 1e5, 1e6}) {
      auto s = arith::ps_prime_exp_sum(x, 1.1, 1.0 / 1.1, tab6);
      lx.push_back(std::log(x));
      ly.push_back(std::log(std::abs(s)));
    }
    double expo = ols_slope(lx, ly);
    bool ok = expo < 1.0 && expo <= 0.95;
    report(9, ok, fmt("prime exp sum growth: fitted exponent %.4f (target <= 0.95; 11/12 = 0.917)",
                      expo));
  }

  // --- 10. uniformity diagnostics --------------------------------------------
  {
    auto fr = fracs_of(zl, 100000);
    double ds = stats::star_discrepancy(fr);
    bool ok = ds > 0.01 && ds < 0.05;
    // Koksma-type inequality on every tested sample
    auto koksma = [&](const std::vector<double>& v) {
      kahan_c mean;
      for (double f : v) mean.add(cplx(std::cos(TWO_PI * f), std::sin(TWO_PI * f)));
      double lhs = std::abs(mean.total()) / double(v.size());
      double rhs = TWO_PI * stats::star_discrepancy(v) + 4.0 / double(v.size());
      return lhs <= rhs;
    };
    std::vector<double> grid(10000);
    for (size_t i = 0; i < grid.size(); i++) grid[i] = double(i) / double(grid.size());
    ok = ok && koksma(fr) && koksma(grid);
    std::vector<double> head(fr.begin(), fr.begin() + 5000);
    ok = ok && koksma(head);
    report(10, ok, fmt("uniformity: D*(1e5) = %.4f in (0.01, 0.05); Koksma inequality holds on all samples",
                       ds));
  }

  std::printf("ACCEPTANCE: %d/%d criteria passed\n", g_pass, g_pass + g_fail);
  return g_fail == 0 ? 0 : 1;
}
