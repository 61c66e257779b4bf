// zgl -- CLI for the zeta-zero / Gram / Lambda toolkit.
//
// Sub-commands:
//   zeros        compute zeros up to --t-max, write the binary cache
//   gram         solve Gram points, emit "k,g,residual" CSV
//   import       ingest an Odlyzko-style text table into the cache
//   weyl         zero-side sums U(T,kappa) and mean values from a cache
//   prime-sum    prime-side sum P(T,kappa) and psi(T/2pi)
//   verify       full zero-side vs prime-side report (residual scaling)
//   hist         histogram mod 1 of normalized zeros + cosine-density fit
//   discrepancy  star discrepancy of the normalized zeros
//   spacings     normalized spacing series
//   gramz        means of Z at even/odd Gram points
//   oracle       stationary-phase / derivative-test / chi quadrature suite
//
// Every run prints a single JSON summary to stdout.  Exit codes: 0 ok,
// 1 validation/usage error, 2 numerical check failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zgl/arith.hpp"
#include "zgl/oracle.hpp"
#include "zgl/rs.hpp"
#include "zgl/stats.hpp"
#include "zgl/weyl.hpp"
#include "zgl/zeros.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using json = nlohmann::ordered_json;
using namespace zgl;

namespace {

constexpr double TWO_PI = 6.283185307179586;

// kappa accepted as a decimal or an exact rational "p/q"
double parse_kappa(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::stod(s);
    double p = std::stod(s.substr(0, slash));
    double q = std::stod(s.substr(slash + 1));
    if (q == 0.0) throw validation_error("kappa: division by zero");
    return p / q;
  } catch (const std::invalid_argument&) {
    throw validation_error("kappa: cannot parse '" + s + "'");
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open output file " + path);
  out << content;
  if (!out) throw check_error("write failed for " + path);
}

std::string default_cache(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ZGL_CACHE")) return env;
  return "";
}

zeros::ZeroList load_zeros(const std::string& cache, const std::string& input) {
  if (!input.empty()) return zeros::import_zeros(input);
  if (!cache.empty()) return zeros::load_cache(cache);
  throw validation_error("no zero source: pass --cache or --input (or set ZGL_CACHE)");
}

json deficits_json(const zeros::ZeroList& zl) {
  json d = json::array();
  for (const auto& def : zl.deficits)
    d.push_back({{"k_lo", def.k_lo},
                 {"k_hi", def.k_hi},
                 {"expected", def.expected},
                 {"found", def.found}});
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeta zero / Gram point / Lambda sum toolkit"};
  app.set_config("--config", "", "key=value config file");
  app.require_subcommand(1);

  int threads = 0;

  double t_max = 1000.0;
  double t_min = 10.0;
  std::vector<std::string> kappa_raw;
  int bins = 50;
  long count = 1000;
  std::string input, output, cache_flag, format = "json";

  auto add_common = [&](CLI::App* cmd) {
    cmd->configurable();
    cmd->add_option("--threads", threads, "worker thread count (0 = default)");
    cmd->add_option("--cache", cache_flag, "binary zero cache path");
    cmd->add_option("--output", output, "output artifact path");
    cmd->add_option("--format", format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
  };

  auto* c_zeros = app.add_subcommand("zeros", "compute zeros up to --t-max");
  c_zeros->add_option("--t-max", t_max, "upper height")->required();
  c_zeros->add_option("--t-min", t_min, "lower height (default 10)");
  add_common(c_zeros);

  auto* c_gram = app.add_subcommand("gram", "solve Gram points g_0..g_{count-1}");
  c_gram->add_option("--count", count, "number of Gram points")->required();
  add_common(c_gram);

  auto* c_import = app.add_subcommand("import", "ingest Odlyzko-style text table");
  c_import->add_option("--input", input, "text table path")->required();
  add_common(c_import);

  auto* c_weyl = app.add_subcommand("weyl", "zero-side sums and mean values");
  c_weyl->add_option("--t-max", t_max, "sum height T")->required();
  c_weyl->add_option("--kappa", kappa_raw, "kappa (repeatable, decimal or p/q)")
      ->required();
  c_weyl->add_option("--input", input, "zero table instead of cache");
  add_common(c_weyl);

  auto* c_psum = app.add_subcommand("prime-sum", "prime-side sum P(T,kappa)");
  c_psum->add_option("--t-max", t_max, "height T")->required();
  c_psum->add_option("--kappa", kappa_raw, "kappa (repeatable)")->required();
  add_common(c_psum);

  auto* c_verify = app.add_subcommand("verify", "zero side vs prime side report");
  c_verify->add_option("--t-max", t_max, "height T")->required();
  c_verify->add_option("--kappa", kappa_raw, "kappa (repeatable)")->required();
  c_verify->add_option("--input", input, "zero table instead of cache");
  add_common(c_verify);

  auto* c_hist = app.add_subcommand("hist", "histogram mod 1 + cosine fit");
  c_hist->add_option("--bins", bins, "bin count (default 50)");
  c_hist->add_option("--input", input, "zero table instead of cache");
  add_common(c_hist);

  auto* c_disc = app.add_subcommand("discrepancy", "star discrepancy");
  c_disc->add_option("--input", input, "zero table instead of cache");
  add_common(c_disc);

  auto* c_spac = app.add_subcommand("spacings", "normalized spacing series");
  c_spac->add_option("--input", input, "zero table instead of cache");
  add_common(c_spac);

  auto* c_gramz = app.add_subcommand("gramz", "Z means at even/odd Gram points");
  c_gramz->add_option("--count", count, "Gram points 0..count")->required();
  add_common(c_gramz);

  auto* c_oracle = app.add_subcommand("oracle", "quadrature oracle suite");
  add_common(c_oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  json out;
  int status = 0;
  try {
    std::string cache = default_cache(cache_flag);
    std::vector<double> kappas;
    for (const auto& s : kappa_raw) kappas.push_back(parse_kappa(s));

    if (*c_zeros) {
      if (t_max > 1e7) throw validation_error("t-max exceeds supported ceiling 1e7");
      auto zl = zeros::scan_zeros(t_min, t_max);
      out["command"] = "zeros";
      out["t_min"] = t_min;
      out["t_max"] = t_max;
      out["count"] = zl.gammas.size();
      out["first"] = zl.gammas.empty() ? 0.0 : zl.gammas.front();
      out["last"] = zl.gammas.empty() ? 0.0 : zl.gammas.back();
      out["deficits"] = deficits_json(zl);
      if (!cache.empty()) {
        zeros::save_cache(zl, cache);
        out["cache"] = cache;
      }
      if (!output.empty()) {
        zeros::export_csv(zl, output);
        out["output"] = output;
      }
      if (!zl.deficits.empty()) status = 2;
    } else if (*c_gram) {
      auto table = zeros::gram_range(0, count - 1);
      double worst = 0.0;
      std::string csv = "k,g,residual\n";
      char buf[96];
      for (const auto& e : table.entries) {
        worst = std::max(worst, e.residual);
        std::snprintf(buf, sizeof buf, "%ld,%.12g,%.12g\n", e.k, e.g, e.residual);
        csv += buf;
      }
      out["command"] = "gram";
      out["count"] = count;
      out["g_first"] = table.entries.front().g;
      out["g_last"] = table.entries.back().g;
      out["max_residual"] = worst;
      if (!output.empty()) {
        write_file(output, csv);
        out["output"] = output;
      }
    } else if (*c_import) {
      auto zl = zeros::import_zeros(input);
      out["command"] = "import";
      out["input"] = input;
      out["count"] = zl.gammas.size();
      out["t_max"] = zl.t_max;
      out["spot_check_failures"] = zl.spot_check_failures;
      if (!cache.empty()) {
        zeros::save_cache(zl, cache);
        out["cache"] = cache;
      }
    } else if (*c_weyl) {
      auto zl = load_zeros(cache, input);
      if (t_max > zl.t_max)
        throw validation_error("t-max exceeds cache coverage (" +
                               std::to_string(zl.t_max) + ")");
      out["command"] = "weyl";
      out["T"] = t_max;
      json rows = json::array();
      for (double k : kappas) {
        auto U = weyl::zero_side_sum(zl, t_max, k);
        auto m = weyl::mean_value(zl, t_max, k);
        rows.push_back({{"kappa", k},
                        {"ReU", U.real()},
                        {"ImU", U.imag()},
                        {"mean_re", m.real()},
                        {"mean_im", m.imag()}});
      }
      out["sums"] = rows;
    } else if (*c_psum) {
      out["command"] = "prime-sum";
      out["T"] = t_max;
      json rows = json::array();
      for (double k : kappas) {
        dd u = dd_div(dd(t_max), ddc::two_pi);
        double cutoff_est = to_double(dd_exp(dd_mul(dd_log(u), k)));
        auto table = arith::lambda_sieve(
            std::max<uint64_t>(16, uint64_t(cutoff_est) + 2));
        auto ps = arith::prime_side_sum(t_max, k, table);
        json row = {{"kappa", k},
                    {"cutoff", ps.cutoff},
                    {"ReP", ps.value.real()},
                    {"ImP", ps.value.imag()}};
        if (k == 1.0)
          row["psi"] = arith::chebyshev_psi(std::floor(t_max / TWO_PI), table);
        rows.push_back(row);
      }
      out["sums"] = rows;
    } else if (*c_verify) {
      auto zl = load_zeros(cache, input);
      if (t_max > zl.t_max)
        throw validation_error("t-max exceeds cache coverage (" +
                               std::to_string(zl.t_max) + ")");
      dd u = dd_div(dd(t_max), ddc::two_pi);
      uint64_t need = 16;
      for (double k : kappas)
        need = std::max(need,
                        uint64_t(to_double(dd_exp(dd_mul(dd_log(u), k)))) + 2);
      auto table = arith::lambda_sieve(need);
      out["command"] = "verify";
      out["T"] = t_max;
      std::vector<weyl::WeylReport> reports;
      json rows = json::array();
      for (double k : kappas) {
        auto rep = weyl::main_theorem_report(zl, table, t_max, k);
        reports.push_back(rep);
        json row = {{"kappa", k},
                    {"N_T", rep.N_T},
                    {"ReU", rep.U.real()},
                    {"ImU", rep.U.imag()},
                    {"ReP", rep.P.real()},
                    {"ImP", rep.P.imag()},
                    {"abs_residual", std::abs(rep.residual)},
                    {"bound_exponent", rep.bound_exponent},
                    {"normalized_residual", rep.normalized_residual}};
        if (k == 1.0)
          row["psi"] = arith::chebyshev_psi(std::floor(t_max / TWO_PI), table);
        rows.push_back(row);
      }
      out["reports"] = rows;
      if (!output.empty()) {
        write_file(output, weyl::report_csv(reports));
        out["output"] = output;
      }
    } else if (*c_hist || *c_disc || *c_spac) {
      auto zl = load_zeros(cache, input);
      auto xs = weyl::normalized_zeros(zl);
      std::vector<double> fr;
      fr.reserve(xs.size());
      for (const auto& z : xs) fr.push_back(z.frac);
      if (*c_hist) {
        auto h = stats::histogram_mod1(fr, bins);
        auto fit = stats::fit_cosine_density(h);
        double ds = stats::star_discrepancy(fr);
        out = json::parse(stats::summary_json(h.total, h.bins, fit.c, fit.rss, ds));
        if (!output.empty()) {
          if (format == "svg")
            write_file(output, stats::histogram_svg(h, fit.c));
          else if (format == "csv")
            write_file(output, stats::histogram_csv(h));
          else
            write_file(output, out.dump(2) + "\n");
          out["output"] = output;
        }
      } else if (*c_disc) {
        double ds = stats::star_discrepancy(fr);
        kahan_c mean;
        for (double f : fr)
          mean.add(cplx(std::cos(TWO_PI * f), std::sin(TWO_PI * f)));
        double koksma = TWO_PI * ds + 4.0 / double(fr.size());
        double weyl_abs = std::abs(mean.total()) / double(fr.size());
        out["command"] = "discrepancy";
        out["N"] = fr.size();
        out["Dstar"] = ds;
        out["abs_mean_e2pix"] = weyl_abs;
        out["koksma_bound"] = koksma;
        out["koksma_ok"] = weyl_abs <= koksma;
        if (!(weyl_abs <= koksma)) status = 2;
      } else {
        auto sp = stats::spacings(zl);
        double mean = 0.0;
        for (double e : sp.exact) mean += e;
        mean /= double(sp.exact.size());
        out["command"] = "spacings";
        out["count"] = sp.exact.size();
        out["mean_exact"] = mean;
        out["max_abs_diff"] = sp.max_abs_diff;
        if (!output.empty()) {
          std::string csv = "n,delta,exact_dx\n";
          char buf[96];
          for (size_t i = 0; i < sp.exact.size(); i++) {
            std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", i + 1,
                          sp.delta[i], sp.exact[i]);
            csv += buf;
          }
          write_file(output, csv);
          out["output"] = output;
        }
      }
    } else if (*c_gramz) {
      auto gm = stats::gram_z_means(count);
      out["command"] = "gramz";
      out["M"] = gm.M;
      out["even_mean"] = gm.even_mean;
      out["odd_mean"] = gm.odd_mean;
      if (!output.empty()) {
        std::string csv = "k,g,Z\n";
        char buf[96];
        for (long k = 0; k <= count; k++) {
          auto g = zeros::gram_point(k);
          std::snprintf(buf, sizeof buf, "%ld,%.12g,%.12g\n", k, g.g,
                        rs::z_function(g.g));
          csv += buf;
        }
        write_file(output, csv);
        out["output"] = output;
      }
    } else if (*c_oracle) {
      out["command"] = "oracle";
      json cases = json::array();
      bool all_ok = true;
      double worst_c = 0.0;
      for (double a : {0.0, 0.5})
        for (double kap : {1.0, 1.2})
          for (double r : {50.0, 100.0, 200.0, 400.0}) {
            auto oc = oracle::check_stationary_phase(r, a, kap, 0.5);
            double cval = oc.residual / std::pow(r, a);
            worst_c = std::max(worst_c, cval);
            cases.push_back(json::parse(oracle::case_json(oc)));
          }
      auto fd = oracle::check_first_derivative(
          [](double) { return 1.0; }, [](double x) { return 0.5 * x * x; }, 1.0,
          2.0, 1.0);
      all_ok = all_ok && fd.ok;
      cases.push_back(json::parse(oracle::case_json(fd)));
      auto sd = oracle::check_second_derivative(
          [](double) { return 1.0; }, [](double x) { return x * x; }, 0.0, 1.0,
          2.0);
      all_ok = all_ok && sd.ok;
      cases.push_back(json::parse(oracle::case_json(sd)));
      json chi = json::array();
      for (double sig : {-0.5, 0.0, 0.5, 1.0})
        for (double t : {100.0, 1000.0, 10000.0}) {
          auto rep = oracle::check_chi_asymptotic(sig, t, 1.0);
          chi.push_back({{"sigma", sig},
                         {"t", t},
                         {"rel_dev", rep.rel_dev},
                         {"C", rep.c_scaled}});
        }
      out["stationary_worst_C"] = worst_c;
      out["derivative_tests_ok"] = all_ok;
      out["cases"] = cases;
      out["chi"] = chi;
      if (worst_c >= 5.0 || !all_ok) status = 2;
      if (!output.empty()) {
        write_file(output, out.dump(2) + "\n");
        out["output"] = output;
      }
    }
  } catch (const validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const check_error& e) {
    std::fprintf(stderr, "check failed: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  std::printf("%s\n", out.dump(2).c_str());
  return status;
}
