#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "zgl/rs.hpp"
#include "zgl/zeros.hpp"

using namespace zgl;
namespace fs = std::filesystem;

namespace {
constexpr double PI = 3.141592653589793;

std::string tmp_path(const char* name) {
  return (fs::temp_directory_path() / name).string();
}
}

TEST_CASE("gram_point: anchors and residuals") {
  auto g0 = zeros::gram_point(0);
  CHECK(g0.g == doctest::Approx(17.845600).epsilon(1e-6));
  CHECK(g0.residual <= 1e-9);
  auto gm1 = zeros::gram_point(-1);
  CHECK(gm1.g == doctest::Approx(9.66691).epsilon(1e-5));
  CHECK(gm1.residual <= 1e-9);
  // bisection oracle on the log-gamma theta path
  double g0_oracle = test_oracle::bisect(
      [](double t) { return rs::theta_reference(t); }, 10.0, 20.0);
  CHECK(std::fabs(g0.g - g0_oracle) <= 1e-8);
  double gm1_oracle = test_oracle::bisect(
      [](double t) { return rs::theta_reference(t) + PI; }, 7.0, 17.0);
  CHECK(std::fabs(gm1.g - gm1_oracle) <= 1e-8);
  // defining residual at a large index
  auto big = zeros::gram_point(100000);
  CHECK(big.residual <= 1e-9);
  CHECK_THROWS_AS(zeros::gram_point(-2), validation_error);
}

TEST_CASE("gram_range is increasing and parallel-deterministic") {
  auto t1 = zeros::gram_range(-1, 300);
  for (size_t i = 1; i < t1.entries.size(); i++)
    CHECK(t1.entries[i].g > t1.entries[i - 1].g);
  auto t2 = zeros::gram_range(-1, 300);
  for (size_t i = 0; i < t1.entries.size(); i++)
    CHECK(t1.entries[i].g == t2.entries[i].g);
}

TEST_CASE("scan_zeros: counts vs dense-grid oracle on (10, 100]") {
  auto zl = zeros::scan_zeros(10.0, 100.0);
  CHECK(zl.gammas.size() == 29);
  CHECK(zl.deficits.empty());
  CHECK(zl.gammas[0] == doctest::Approx(14.1347251417).epsilon(1e-9));
  auto oracle = test_oracle::dense_scan(10.0, 100.0);
  REQUIRE(oracle.size() == 29);
  for (size_t i = 0; i < 29; i++)
    CHECK(std::fabs(zl.gammas[i] - oracle[i]) <= 1e-8);
}

TEST_CASE("scan_zeros: (10, 50] holds 10 zeros; empty range; bad range") {
  CHECK(zeros::scan_zeros(10.0, 50.0).gammas.size() == 10);
  CHECK(zeros::scan_zeros(40.0, 40.0).gammas.empty());
  CHECK_THROWS_AS(zeros::scan_zeros(5.0, 50.0), validation_error);
  CHECK_THROWS_AS(zeros::scan_zeros(10.0, 2e7), validation_error);
}

TEST_CASE("scan determinism: serial == parallel == repeat run") {
  auto a = zeros::scan_zeros(10.0, 2000.0);
  auto b = zeros::scan_zeros_serial(10.0, 2000.0);
  auto c = zeros::scan_zeros(10.0, 2000.0);
  REQUIRE(a.gammas.size() == b.gammas.size());
  for (size_t i = 0; i < a.gammas.size(); i++) {
    CHECK(a.gammas[i] == b.gammas[i]);
    CHECK(a.gammas[i] == c.gammas[i]);
  }
}

TEST_CASE("range splitting merges cleanly") {
  auto whole = zeros::scan_zeros(10.0, 400.0);
  auto lo = zeros::scan_zeros(10.0, 150.0);
  auto hi = zeros::scan_zeros(150.0, 400.0);
  REQUIRE(lo.gammas.size() + hi.gammas.size() == whole.gammas.size());
  size_t i = 0;
  for (double g : lo.gammas) CHECK(g == whole.gammas[i++]);
  for (double g : hi.gammas) CHECK(g == whole.gammas[i++]);
}

TEST_CASE("refine_zero: brackets, tolerance, rejects") {
  double z1 = zeros::refine_zero(14.1, 14.2);
  CHECK(z1 == doctest::Approx(14.134725141734694).epsilon(1e-12));
  double z2 = zeros::refine_zero(20.9, 21.1);
  CHECK(z2 == doctest::Approx(21.022039638771555).epsilon(1e-12));
  CHECK_THROWS_AS(zeros::refine_zero(14.1, 14.1), validation_error);
  CHECK_THROWS_AS(zeros::refine_zero(15.0, 15.5), validation_error);  // no change
  CHECK_THROWS_AS(zeros::refine_zero(14.0, 15.5), validation_error);  // too wide
}

TEST_CASE("zero_count_check at T=100 and below the first zero") {
  auto zl = zeros::scan_zeros(10.0, 120.0);
  auto cc = zeros::zero_count_check(100.0, zl);
  CHECK(cc.counted == 29);
  CHECK(cc.predicted == doctest::Approx(29.0).epsilon(0.01));
  CHECK(std::fabs(cc.s_estimate) <= 3.0);
  auto low = zeros::zero_count_check(12.0, zl);
  CHECK(low.counted == 0);
  CHECK(low.predicted > -1.0);
  CHECK(low.predicted < 1.0);
  CHECK_THROWS_AS(zeros::zero_count_check(500.0, zl), validation_error);
}

TEST_CASE("count consistency and Gram-law interleaving up to 1e4") {
  auto zl = zeros::scan_zeros(10.0, 10000.0);
  CHECK(zl.deficits.empty());
  // |s_estimate| <= 3 at every 100th Gram point
  for (long k = 0;; k += 100) {
    auto g = zeros::gram_point(k);
    if (g.g > 10000.0) break;
    auto cc = zeros::zero_count_check(g.g, zl);
    CHECK(std::fabs(cc.s_estimate) <= 3.0);
  }
  // interleaving diagnostic: > 0.7 of Gram intervals hold exactly one zero
  long k_hi = long(std::floor(to_double(rs::theta_dd(10000.0)) / PI)) - 1;
  long one = 0, total = 0;
  size_t idx = 0;
  for (long k = 0; k < k_hi; k++) {
    double ga = zeros::gram_point(k).g, gb = zeros::gram_point(k + 1).g;
    while (idx < zl.gammas.size() && zl.gammas[idx] <= ga) idx++;
    size_t j = idx;
    long cnt = 0;
    while (j < zl.gammas.size() && zl.gammas[j] <= gb) {
      cnt++;
      j++;
    }
    total++;
    if (cnt == 1) one++;
  }
  CHECK(double(one) / double(total) > 0.7);
}

TEST_CASE("import_zeros: fixture, indexed fixture, imported-vs-computed") {
  auto zl = zeros::import_zeros(std::string(ZGL_TEST_DATA) + "/zeros_head.txt");
  REQUIRE(zl.gammas.size() == 30);
  CHECK(zl.source == zeros::Source::imported);
  CHECK(zl.gammas[0] == doctest::Approx(14.134725142).epsilon(1e-12));
  CHECK(zl.spot_check_failures == 0);
  auto indexed =
      zeros::import_zeros(std::string(ZGL_TEST_DATA) + "/zeros_indexed.txt");
  REQUIRE(indexed.gammas.size() == 10);
  CHECK(indexed.gammas[9] == doctest::Approx(49.773832478).epsilon(1e-12));
  // overlap agreement with the computed list at Odlyzko precision
  auto computed = zeros::scan_zeros(10.0, 102.0);
  REQUIRE(computed.gammas.size() >= 30);
  for (size_t i = 0; i < 30; i++)
    CHECK(std::fabs(computed.gammas[i] - zl.gammas[i]) <= 1e-6);
}

TEST_CASE("import_zeros: error paths carry line numbers") {
  {
    std::ofstream f(tmp_path("zgl_empty.txt"));
  }
  auto empty = zeros::import_zeros(tmp_path("zgl_empty.txt"));
  CHECK(empty.gammas.empty());
  {
    std::ofstream f(tmp_path("zgl_bad1.txt"));
    f << "14.134725142\n25.010857580\n21.022039639\n";
  }
  CHECK_THROWS_WITH_AS(zeros::import_zeros(tmp_path("zgl_bad1.txt")),
                       doctest::Contains("line 3"), validation_error);
  {
    std::ofstream f(tmp_path("zgl_bad2.txt"));
    f << "14.134725142\nnot-a-number\n";
  }
  CHECK_THROWS_WITH_AS(zeros::import_zeros(tmp_path("zgl_bad2.txt")),
                       doctest::Contains("line 2"), validation_error);
  CHECK_THROWS_AS(zeros::import_zeros(tmp_path("zgl_missing_file.txt")),
                  validation_error);
}

TEST_CASE("cache round-trip, integrity checks, csv export") {
  auto zl = zeros::scan_zeros(10.0, 200.0);
  std::string path = tmp_path("zgl_cache.bin");
  zeros::save_cache(zl, path);
  auto back = zeros::load_cache(path);
  REQUIRE(back.gammas.size() == zl.gammas.size());
  CHECK(back.t_max == zl.t_max);
  for (size_t i = 0; i < zl.gammas.size(); i++)
    CHECK(back.gammas[i] == zl.gammas[i]);
  // header count vs payload disagreement must be rejected
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    uint32_t bogus = uint32_t(zl.gammas.size()) + 3;
    f.seekp(4);
    f.write(reinterpret_cast<const char*>(&bogus), 4);
  }
  CHECK_THROWS_AS(zeros::load_cache(path), validation_error);
  {
    std::ofstream f(tmp_path("zgl_magic.bin"), std::ios::binary);
    f << "XXXX00000000000000000000";
  }
  CHECK_THROWS_AS(zeros::load_cache(tmp_path("zgl_magic.bin")),
                  validation_error);
  std::string csv = tmp_path("zgl_zeros.csv");
  zeros::export_csv(zl, csv);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,gamma");
}
