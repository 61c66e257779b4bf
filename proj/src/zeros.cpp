#include "zgl/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>

#include "zgl/rs.hpp"
#include "zgl/shard.hpp"
#include "zgl/util.hpp"

namespace zgl::zeros {

namespace {

constexpr double PI = 3.141592653589793;
constexpr double TWO_PI = 6.283185307179586;

inline int sgn(double x) { return x < 0.0 ? -1 : 1; }

// theta(t) - k pi, with the multiple subtracted in dd so the residual is
// meaningful down to ~1e-12 even when theta itself is ~1e6.
inline double theta_residual(double t, long k) {
  dd kpi = dd_add(two_prod(double(k), ddc::pi.hi), double(k) * ddc::pi.lo);
  return to_double(dd_sub(rs::theta_dd(t), kpi));
}

}  // namespace

GramEntry gram_point(long k) {
  if (k < -1) throw validation_error("gram_point: k must be >= -1");
  // Initial guess from inverting (t/2pi)(ln(t/2pi) - 1) = k.
  double t;
  if (k <= 1) {
    t = 10.0 + 4.0 * double(k + 1);  // g_-1 ~ 9.67, g_0 ~ 17.85, g_1 ~ 23.2
  } else {
    double u = std::max(3.0, double(k) / std::log(double(k)));
    for (int i = 0; i < 60; i++) {
      double f = u * (std::log(u) - 1.0) - double(k);
      double du = f / std::log(u);
      u -= du;
      if (std::fabs(du) < 1e-12 * u) break;
    }
    t = TWO_PI * u;
  }
  // Newton on theta(t) = k pi, safeguarded against leaving t > 7.
  double f = theta_residual(t, k);
  for (int i = 0; i < 60; i++) {
    double step = f / rs::theta_deriv(t);
    double tn = t - step;
    if (tn <= 7.0) tn = 0.5 * (t + 7.0);
    double fn = theta_residual(tn, k);
    t = tn;
    f = fn;
    if (std::fabs(step) < 1e-11 * std::max(1.0, t) && std::fabs(f) < 1e-10)
      break;
  }
  if (std::fabs(f) > 1e-6) {
    // Newton failed to settle; bisect.  theta is monotone for t > 7.
    double lo = 7.000001, hi = std::max(t + 2.0, 20.0);
    while (theta_residual(hi, k) < 0.0) hi *= 1.5;
    for (int i = 0; i < 200; i++) {
      double mid = 0.5 * (lo + hi);
      if (theta_residual(mid, k) < 0.0)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-13 * std::max(1.0, lo)) break;
    }
    t = 0.5 * (lo + hi);
    f = theta_residual(t, k);
  }
  return {k, t, std::fabs(f)};
}

GramTable gram_range(long k_lo, long k_hi) {
  if (k_lo < -1 || k_hi < k_lo) throw validation_error("gram_range: bad range");
  GramTable table;
  table.entries.resize(size_t(k_hi - k_lo + 1));
  auto parts = map_blocks<int>(k_lo, k_hi + 1, 256, [&](long a, long b) {
    for (long k = a; k < b; k++)
      table.entries[size_t(k - k_lo)] = gram_point(k);
    return 0;
  });
  (void)parts;
  return table;
}

double refine_zero(double a, double b) {
  if (!(a < b)) throw validation_error("refine_zero: empty bracket");
  if (b - a > 1.0) throw validation_error("refine_zero: bracket wider than 1");
  double fa = rs::z_function(a), fb = rs::z_function(b);
  if (!(fa * fb < 0.0))
    throw validation_error("refine_zero: no sign change on bracket");
  // Brent's method.
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < 200; iter++) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    double tol = 2.0 * 2.22e-16 * std::fabs(b) + 1e-15;
    double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol || fb == 0.0) return b;
    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol) ? d : (xm > 0.0 ? tol : -tol);
    fb = rs::z_function(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// scan_zeros
// ---------------------------------------------------------------------------

namespace detail {

namespace {

struct IntervalGrid {
  // Z sampled at g0 + (j/64)(g1-g0); endpoints come from the Gram-point
  // pass, interior points are filled lazily as the subdivision deepens.
  std::array<double, 65> z;
  std::array<bool, 65> have{};
  int stride = 64;
};

struct BlockOut {
  std::vector<double> zeros;
  std::vector<Deficit> deficits;
};

// Gram intervals are wider than 1 below t ~ 3365 (width ~ 2pi/ln(t/2pi)),
// so narrow a sign-change bracket by bisection before handing it to the
// tolerance-contracted refine_zero.
double narrow_and_refine(double a, double b) {
  double fa = rs::z_function(a);
  while (b - a > 0.9) {
    double m = 0.5 * (a + b);
    double fm = rs::z_function(m);
    if (sgn(fa) != sgn(fm)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return refine_zero(a, b);
}

int count_changes(const IntervalGrid& gi) {
  int n = 0, prev = 0;
  bool first = true;
  for (int j = 0; j <= 64; j++) {
    if (!gi.have[size_t(j)]) continue;
    int s = sgn(gi.z[size_t(j)]);
    if (!first && s != prev) n++;
    prev = s;
    first = false;
  }
  return n;
}

void fill_level(IntervalGrid& gi, double g0, double g1, int stride) {
  for (int j = stride; j < 64; j += stride) {
    if (gi.have[size_t(j)]) continue;
    double x = g0 + (double(j) / 64.0) * (g1 - g0);
    gi.z[size_t(j)] = rs::z_function(x);
    gi.have[size_t(j)] = true;
  }
  gi.stride = std::min(gi.stride, stride);
}

// Golden-section minimum of s*Z over [a,b]; used to split a suspected
// near-tangent zero pair hiding between two same-sign grid points.
bool dip_search(double a, double b, int s, double& xm, double& zm) {
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = s * rs::z_function(x1), f2 = s * rs::z_function(x2);
  for (int i = 0; i < 70; i++) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = s * rs::z_function(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = s * rs::z_function(x2);
    }
    if (b - a < 1e-12 * std::max(1.0, std::fabs(a))) break;
  }
  xm = f1 < f2 ? x1 : x2;
  zm = (f1 < f2 ? f1 : f2);
  return zm < 0.0;
}

// One Rosser block: Gram intervals (g_k, g_{k+1}) for k in [kL, kR), both
// endpoints parity-correct, so the block must hold exactly kR - kL zeros
// in the range verified here (first Rosser-rule failure is far above the
// supported heights).
BlockOut scan_block(long kL, long kR, const double* g, const double* zg,
                    long k_base) {
  const long n = kR - kL;
  std::vector<IntervalGrid> grid(static_cast<size_t>(n));
  for (long i = 0; i < n; i++) {
    auto& gi = grid[size_t(i)];
    gi.z[0] = zg[kL - k_base + i];
    gi.z[64] = zg[kL - k_base + i + 1];
    gi.have[0] = gi.have[64] = true;
  }
  auto g0 = [&](long i) { return g[kL - k_base + i]; };
  auto g1 = [&](long i) { return g[kL - k_base + i + 1]; };

  std::vector<int> changes(static_cast<size_t>(n));
  long total = 0;
  auto recount = [&] {
    total = 0;
    for (long i = 0; i < n; i++) {
      changes[size_t(i)] = count_changes(grid[size_t(i)]);
      total += changes[size_t(i)];
    }
  };
  recount();

  const long expected = n;
  // Deepen intervals without a sign change first (the Gram-law failures),
  // then everything, per the 2,4,...,64 ladder.
  for (int stride : {32, 16, 8, 4, 2, 1}) {
    if (total >= expected) break;
    for (long i = 0; i < n; i++)
      if (changes[size_t(i)] == 0)
        fill_level(grid[size_t(i)], g0(i), g1(i), stride);
    recount();
  }
  for (int stride : {16, 4, 1}) {
    if (total >= expected) break;
    for (long i = 0; i < n; i++)
      fill_level(grid[size_t(i)], g0(i), g1(i), stride);
    recount();
  }
  if (total < expected) {
    // Near-tangent pair hunt: rank same-sign grid segments by how close Z
    // comes to the axis, then dip-search the most promising ones.
    struct Seg {
      double score, a, b;
      int s;
      long i;
      int ja;
    };
    std::vector<Seg> segs;
    for (long i = 0; i < n; i++) {
      const auto& gi = grid[size_t(i)];
      int prevj = -1;
      for (int j = 0; j <= 64; j++) {
        if (!gi.have[size_t(j)]) continue;
        if (prevj >= 0 && sgn(gi.z[size_t(prevj)]) == sgn(gi.z[size_t(j)])) {
          double za = std::fabs(gi.z[size_t(prevj)]);
          double zb = std::fabs(gi.z[size_t(j)]);
          double xa = g0(i) + (double(prevj) / 64.0) * (g1(i) - g0(i));
          double xb = g0(i) + (double(j) / 64.0) * (g1(i) - g0(i));
          segs.push_back({std::min(za, zb), xa, xb, sgn(gi.z[size_t(j)]), i, prevj});
        }
        prevj = j;
      }
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) {
      if (a.score != b.score) return a.score < b.score;
      return a.a < b.a;
    });
    std::vector<std::pair<double, double>> extra;  // (xm, segment) brackets
    for (const auto& sg : segs) {
      if (total >= expected) break;
      double xm, zm;
      if (dip_search(sg.a, sg.b, sg.s, xm, zm)) {
        extra.push_back({sg.a, xm});
        extra.push_back({xm, sg.b});
        total += 2;
      }
    }
    // Collect + refine below handles 'extra' via direct brackets.
    BlockOut out;
    for (long i = 0; i < n; i++) {
      const auto& gi = grid[size_t(i)];
      int prevj = -1;
      for (int j = 0; j <= 64; j++) {
        if (!gi.have[size_t(j)]) continue;
        if (prevj >= 0 && sgn(gi.z[size_t(prevj)]) != sgn(gi.z[size_t(j)])) {
          double xa = g0(i) + (double(prevj) / 64.0) * (g1(i) - g0(i));
          double xb = g0(i) + (double(j) / 64.0) * (g1(i) - g0(i));
          out.zeros.push_back(narrow_and_refine(xa, xb));
        }
        prevj = j;
      }
    }
    for (auto& [xa, xb] : extra) out.zeros.push_back(narrow_and_refine(xa, xb));
    std::sort(out.zeros.begin(), out.zeros.end());
    if (total != expected)
      out.deficits.push_back({kL, kR, expected, total});
    return out;
  }

  BlockOut out;
  for (long i = 0; i < n; i++) {
    const auto& gi = grid[size_t(i)];
    int prevj = -1;
    for (int j = 0; j <= 64; j++) {
      if (!gi.have[size_t(j)]) continue;
      if (prevj >= 0 && sgn(gi.z[size_t(prevj)]) != sgn(gi.z[size_t(j)])) {
        double xa = g0(i) + (double(prevj) / 64.0) * (g1(i) - g0(i));
        double xb = g0(i) + (double(j) / 64.0) * (g1(i) - g0(i));
        out.zeros.push_back(narrow_and_refine(xa, xb));
      }
      prevj = j;
    }
  }
  if (total != expected) out.deficits.push_back({kL, kR, expected, total});
  return out;
}

bool good_gram(long k, double zg) {
  // parity-correct: sign Z(g_k) = (-1)^k
  if (zg == 0.0) return false;
  bool even = ((k % 2) == 0);
  return even ? (zg > 0.0) : (zg < 0.0);
}

}  // namespace

ZeroList scan_impl(double t_lo, double t_hi, bool serial) {
  if (!(t_lo >= 10.0) || !(t_hi >= t_lo) || !(t_hi <= 1e7))
    throw validation_error("scan_zeros: need 10 <= t_lo <= t_hi <= 1e7");
  ZeroList out;
  out.source = Source::computed;
  out.t_max = t_hi;
  out.tol = 1e-12;
  if (t_lo == t_hi) return out;

  long k_start = long(std::floor(to_double(rs::theta_dd(t_lo)) / PI));
  long k_end = long(std::ceil(to_double(rs::theta_dd(t_hi)) / PI));
  long k_from = std::max<long>(-1, k_start - 64);
  long k_to = k_end + 64;  // margin to find good boundaries on both sides

  // Pass 1 (parallel): Gram points and Z there.
  std::vector<double> g(size_t(k_to - k_from + 1));
  std::vector<double> zg(size_t(k_to - k_from + 1));
  {
    long block = serial ? (k_to - k_from + 1) : 128;
    map_blocks<int>(k_from, k_to + 1, block, [&](long a, long b) {
      for (long k = a; k < b; k++) {
        double gp = gram_point(k).g;
        g[size_t(k - k_from)] = gp;
        zg[size_t(k - k_from)] = rs::z_function(gp);
      }
      return 0;
    });
  }

  // Pass 2 (serial): block boundaries at good Gram points, ~100 intervals.
  long anchor = k_start;
  while (anchor > k_from && !good_gram(anchor, zg[size_t(anchor - k_from)]))
    anchor--;
  std::vector<long> bounds{anchor};
  long k = anchor;
  while (k < k_end) {
    long next = std::min(k + 100, k_end);
    while (next <= k_to && !good_gram(next, zg[size_t(next - k_from)])) next++;
    if (next > k_to) next = k_to;  // degenerate; expectation may be off
    bounds.push_back(next);
    k = next;
  }

  // Pass 3 (parallel): scan each block.
  size_t nb = bounds.size() - 1;
  std::vector<BlockOut> blocks(nb);
  long blk = serial ? long(nb) : 1;
  map_blocks<int>(0, long(nb), blk, [&](long a, long b) {
    for (long i = a; i < b; i++)
      blocks[size_t(i)] =
          scan_block(bounds[size_t(i)], bounds[size_t(i) + 1], g.data(),
                     zg.data(), k_from);
    return 0;
  });

  for (auto& b : blocks) {
    for (double z : b.zeros)
      if (z > t_lo && z <= t_hi) out.gammas.push_back(z);
    for (auto& d : b.deficits) out.deficits.push_back(d);
  }
  return out;
}

}  // namespace detail

ZeroList scan_zeros(double t_lo, double t_hi) {
  return detail::scan_impl(t_lo, t_hi, false);
}
ZeroList scan_zeros_serial(double t_lo, double t_hi) {
  return detail::scan_impl(t_lo, t_hi, true);
}

CountCheck zero_count_check(double T, const ZeroList& zeros) {
  if (!(T >= 10.0)) throw validation_error("zero_count_check: T must be >= 10");
  if (T > zeros.t_max)
    throw validation_error("zero_count_check: T beyond zero coverage");
  double predicted = to_double(rs::theta_dd(T)) / PI + 1.0;
  long counted =
      std::upper_bound(zeros.gammas.begin(), zeros.gammas.end(), T) -
      zeros.gammas.begin();
  return {predicted, counted, double(counted) - predicted};
}

ZeroList import_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("import_zeros: cannot open " + path);
  ZeroList out;
  out.source = Source::imported;
  out.tol = 1e-9;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    // tokenize on whitespace
    std::vector<std::string> tok;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace((unsigned char)line[i])) i++;
      size_t j = i;
      while (j < line.size() && !std::isspace((unsigned char)line[j])) j++;
      if (j > i) tok.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tok.empty()) continue;
    if (tok.size() > 2)
      throw validation_error("import_zeros: unparseable line " +
                             std::to_string(lineno));
    const std::string& v = tok.back();
    char* end = nullptr;
    double gamma = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(gamma))
      throw validation_error("import_zeros: unparseable line " +
                             std::to_string(lineno));
    if (!out.gammas.empty() && gamma <= out.gammas.back())
      throw validation_error("import_zeros: non-monotone ordinate at line " +
                             std::to_string(lineno));
    out.gammas.push_back(gamma);
  }
  out.t_max = out.gammas.empty() ? 0.0 : out.gammas.back();
  // |Z| spot check on <= 1000 samples; failures are warnings, not errors.
  long n = long(out.gammas.size());
  if (n > 0) {
    long samples = std::min<long>(1000, n);
    auto parts = map_blocks<long>(0, samples, 64, [&](long a, long b) {
      long bad = 0;
      for (long s = a; s < b; s++) {
        long idx = (samples == 1) ? 0 : s * (n - 1) / (samples - 1);
        double gamma = out.gammas[size_t(idx)];
        if (gamma < TWO_PI) continue;
        if (std::fabs(rs::z_function(gamma)) > 1e-3) bad++;
      }
      return bad;
    });
    out.spot_check_failures = std::accumulate(parts.begin(), parts.end(), 0L);
  }
  return out;
}

void save_cache(const ZeroList& zeros, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("save_cache: cannot open " + path);
  const char magic[4] = {'Z', 'G', 'L', '1'};
  uint32_t count = uint32_t(zeros.gammas.size());
  double t_max = zeros.t_max;
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&count), 4);
  out.write(reinterpret_cast<const char*>(&t_max), 8);
  out.write(reinterpret_cast<const char*>(zeros.gammas.data()),
            std::streamsize(zeros.gammas.size() * 8));
  if (!out) throw check_error("save_cache: write failed for " + path);
}

ZeroList load_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("load_cache: cannot open " + path);
  char magic[4];
  uint32_t count = 0;
  double t_max = 0.0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&count), 4);
  in.read(reinterpret_cast<char*>(&t_max), 8);
  if (!in || std::memcmp(magic, "ZGL1", 4) != 0)
    throw validation_error("load_cache: bad magic in " + path);
  ZeroList out;
  out.source = Source::computed;
  out.t_max = t_max;
  out.tol = 1e-12;
  out.gammas.resize(count);
  in.read(reinterpret_cast<char*>(out.gammas.data()),
          std::streamsize(size_t(count) * 8));
  if (!in || size_t(in.gcount()) != size_t(count) * 8)
    throw validation_error("load_cache: header count disagrees with payload in " +
                           path);
  in.peek();
  if (!in.eof())
    throw validation_error("load_cache: trailing bytes beyond header count in " +
                           path);
  for (size_t i = 1; i < out.gammas.size(); i++)
    if (!(out.gammas[i] > out.gammas[i - 1]))
      throw validation_error("load_cache: non-monotone cache " + path);
  return out;
}

void export_csv(const ZeroList& zeros, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("export_csv: cannot open " + path);
  out << "index,gamma\n";
  char buf[64];
  for (size_t i = 0; i < zeros.gammas.size(); i++) {
    std::snprintf(buf, sizeof buf, "%zu,%.15g\n", i + 1, zeros.gammas[i]);
    out << buf;
  }
}

}  // namespace zgl::zeros
