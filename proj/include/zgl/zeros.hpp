#pragma once
// zeros.hpp -- Gram points, critical-line zero location, count validation,
// zero-table ingestion, and the binary zero cache.
//
// Gram point g_k solves theta(g_k) = k pi (t > 7, k >= -1).  Zeros are
// bracketed by sign changes of Z at Gram points -- Gram's law holds often
// enough to be a good heuristic -- with geometric subdivision (2,4,...,64
// sub-points) of intervals that lack a sign change.  Blocks are delimited
// by parity-correct ("good") Gram points, where the running count must
// equal the number of Gram intervals; a block that still misses zeros
// after subdivision gets a targeted extremum search for near-tangent
// pairs, and anything unresolved is reported as a structured deficit
// instead of being dropped.

#include <cstdint>
#include <string>
#include <vector>

namespace zgl::zeros {

struct GramEntry {
  long k;
  double g;
  double residual;  // |theta(g) - k pi|
};

struct GramTable {
  std::vector<GramEntry> entries;
};

// Solve theta(g) = k pi by Newton with bisection fallback; k >= -1.
GramEntry gram_point(long k);
// Gram points for k in [k_lo, k_hi], computed in parallel.
GramTable gram_range(long k_lo, long k_hi);

enum class Source { computed, imported };

struct Deficit {
  long k_lo, k_hi;  // Gram-index block
  long expected;
  long found;
};

struct ZeroList {
  std::vector<double> gammas;  // strictly increasing ordinates
  Source source = Source::computed;
  double t_max = 0.0;  // verified coverage height
  double tol = 0.0;    // refinement tolerance (relative)
  std::vector<Deficit> deficits;
  long spot_check_failures = 0;  // import-time |Z| spot-check warnings
};

// All zeros in (t_lo, t_hi]; 10 <= t_lo <= t_hi <= 1e7.
ZeroList scan_zeros(double t_lo, double t_hi);
// Serial reference path: identical results, no OpenMP.
ZeroList scan_zeros_serial(double t_lo, double t_hi);

// Refine a sign-change bracket of Z to machine tolerance (Brent).
double refine_zero(double a, double b);

struct CountCheck {
  double predicted;  // theta(T)/pi + 1
  long counted;
  double s_estimate;  // counted - predicted
};
CountCheck zero_count_check(double T, const ZeroList& zeros);

// Odlyzko-style text table: one ordinate per line, optional leading index
// column, strictly ascending.
ZeroList import_zeros(const std::string& path);

// Binary cache: 16-byte header (magic "ZGL1", u32 count, f64 t_max),
// then count little-endian f64 ordinates.
void save_cache(const ZeroList& zeros, const std::string& path);
ZeroList load_cache(const std::string& path);

// CSV export "index,gamma".
void export_csv(const ZeroList& zeros, const std::string& path);

namespace detail {
// Shared block engine; serial=true forces single-threaded execution.
ZeroList scan_impl(double t_lo, double t_hi, bool serial);
}

}  // namespace zgl::zeros
