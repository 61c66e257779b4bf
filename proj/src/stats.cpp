#include "zgl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "zgl/rs.hpp"
#include "zgl/shard.hpp"
#include "zgl/util.hpp"

namespace zgl::stats {

namespace {
constexpr double TWO_PI = 6.283185307179586;

inline uint64_t bin_of(double v, int B) {
  double f = v - std::floor(v);
  if (f < 0.0) f += 1.0;
  if (f >= 1.0) f -= 1.0;
  auto b = uint64_t(f * B);
  if (b >= uint64_t(B)) b = uint64_t(B) - 1;  // f*B can round up to B
  return b;
}
}  // namespace

Histogram histogram_mod1_serial(std::span<const double> values, int B) {
  if (B < 2 || B > 10000)
    throw validation_error("histogram_mod1: bins must be in [2, 1e4]");
  Histogram h;
  h.bins = B;
  h.counts.assign(size_t(B), 0);
  for (double v : values) h.counts[bin_of(v, B)]++;
  h.total = values.size();
  return h;
}

Histogram histogram_mod1(std::span<const double> values, int B) {
  if (B < 2 || B > 10000)
    throw validation_error("histogram_mod1: bins must be in [2, 1e4]");
  auto parts = map_blocks<std::vector<uint64_t>>(
      0, long(values.size()), 65536, [&](long a, long b) {
        std::vector<uint64_t> c(size_t(B), 0);
        for (long i = a; i < b; i++) c[bin_of(values[size_t(i)], B)]++;
        return c;
      });
  Histogram h;
  h.bins = B;
  h.counts.assign(size_t(B), 0);
  for (auto& p : parts)
    for (int b = 0; b < B; b++) h.counts[size_t(b)] += p[size_t(b)];
  h.total = values.size();
  return h;
}

DensityFit fit_cosine_density(const Histogram& h) {
  if (h.total < 1000)
    throw validation_error("fit_cosine_density: need at least 1000 samples");
  // model: height(x) = 1 - c cos(2 pi x) at bin centers; least squares gives
  // c = -sum h_i cos_i / sum cos_i^2 (the constant drops: sum cos_i = 0).
  int B = h.bins;
  double num = 0.0, den = 0.0;
  for (int b = 0; b < B; b++) {
    double xc = (b + 0.5) / B;
    double cosv = std::cos(TWO_PI * xc);
    double height = double(h.counts[size_t(b)]) * B / double(h.total);
    num += height * cosv;
    den += cosv * cosv;
  }
  DensityFit fit;
  fit.c = -num / den;
  for (int b = 0; b < B; b++) {
    double xc = (b + 0.5) / B;
    double height = double(h.counts[size_t(b)]) * B / double(h.total);
    double r = height - (1.0 - fit.c * std::cos(TWO_PI * xc));
    fit.rss += r * r;
  }
  return fit;
}

double star_discrepancy(std::span<const double> values) {
  if (values.empty()) throw validation_error("star_discrepancy: empty input");
  std::vector<double> u(values.begin(), values.end());
  for (double v : u)
    if (!(v >= 0.0) || !(v < 1.0))
      throw validation_error("star_discrepancy: value outside [0,1)");
  std::stable_sort(u.begin(), u.end());
  double n = double(u.size());
  double d = 0.0;
  for (size_t i = 1; i <= u.size(); i++) {
    double ui = u[i - 1];
    d = std::max(d, double(i) / n - ui);
    d = std::max(d, ui - double(i - 1) / n);
  }
  return d;
}

SpacingSeries spacings(const zeros::ZeroList& zl) {
  if (zl.gammas.size() < 2)
    throw validation_error("spacings: need at least two zeros");
  size_t n = zl.gammas.size() - 1;
  SpacingSeries s;
  s.delta.resize(n);
  s.exact.resize(n);
  auto parts = map_blocks<double>(0, long(n), 8192, [&](long a, long b) {
    double mx = 0.0;
    for (long i = a; i < b; i++) {
      double g0 = zl.gammas[size_t(i)], g1 = zl.gammas[size_t(i) + 1];
      double d = (g1 - g0) / TWO_PI * std::log(g0 / TWO_PI);
      double e = to_double(
          dd_div(dd_sub(rs::theta_dd(g1), rs::theta_dd(g0)), ddc::pi));
      s.delta[size_t(i)] = d;
      s.exact[size_t(i)] = e;
      mx = std::max(mx, std::fabs(d - e));
    }
    return mx;
  });
  for (double m : parts) s.max_abs_diff = std::max(s.max_abs_diff, m);
  return s;
}

GramZMeans gram_z_means(long M) {
  if (M < 100) throw validation_error("gram_z_means: need M >= 100");
  std::vector<double> zg(size_t(M) + 1);
  map_blocks<int>(0, M + 1, 256, [&](long a, long b) {
    for (long k = a; k < b; k++)
      zg[size_t(k)] = rs::z_function(zeros::gram_point(k).g);
    return 0;
  });
  kahan even, odd;
  long ne = 0, no = 0;
  for (long k = 0; k <= M; k++) {
    if (k % 2 == 0) {
      even.add(zg[size_t(k)]);
      ne++;
    } else {
      odd.add(zg[size_t(k)]);
      no++;
    }
  }
  return {even.total() / double(ne), odd.total() / double(no), M};
}

// ---------------------------------------------------------------------------
// emitters
// ---------------------------------------------------------------------------

namespace {
void put(std::string& s, const char* fmt, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  s += buf;
}
}  // namespace

std::string histogram_csv(const Histogram& h) {
  std::string s = "bin_lo,bin_hi,count,height\n";
  for (int b = 0; b < h.bins; b++) {
    put(s, "%.12g", double(b) / h.bins);
    s += ',';
    put(s, "%.12g", double(b + 1) / h.bins);
    s += ',';
    s += std::to_string(h.counts[size_t(b)]);
    s += ',';
    double height =
        h.total ? double(h.counts[size_t(b)]) * h.bins / double(h.total) : 0.0;
    put(s, "%.12g", height);
    s += '\n';
  }
  return s;
}

std::string histogram_svg(const Histogram& h, double c_fit) {
  // Static bar chart, heights normalized to density scale, with the fitted
  // curve 1 - c cos(2 pi x) overlaid.  Fixed %.2f layout keeps the output
  // byte-stable.
  const double W = 640.0, H = 400.0, mL = 50.0, mB = 40.0, mT = 20.0, mR = 20.0;
  const double plotW = W - mL - mR, plotH = H - mT - mB;
  double ymax = 1.5;
  for (int b = 0; b < h.bins; b++) {
    double height =
        h.total ? double(h.counts[size_t(b)]) * h.bins / double(h.total) : 0.0;
    ymax = std::max(ymax, height * 1.1);
  }
  auto xpix = [&](double x) { return mL + x * plotW; };
  auto ypix = [&](double y) { return mT + (1.0 - y / ymax) * plotH; };
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                W, H, W, H);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int b = 0; b < h.bins; b++) {
    double x0 = double(b) / h.bins, x1 = double(b + 1) / h.bins;
    double height =
        h.total ? double(h.counts[size_t(b)]) * h.bins / double(h.total) : 0.0;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.5\"/>\n",
                  xpix(x0), ypix(height), (x1 - x0) * plotW,
                  ypix(0.0) - ypix(height));
    s += buf;
  }
  s += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
  for (int i = 0; i <= 256; i++) {
    double x = double(i) / 256.0;
    double y = 1.0 - c_fit * std::cos(TWO_PI * x);
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", xpix(x), ypix(y));
    s += buf;
  }
  s += "\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                "stroke=\"black\"/>\n",
                xpix(0.0), ypix(0.0), xpix(1.0), ypix(0.0));
  s += buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                "stroke=\"black\"/>\n",
                xpix(0.0), ypix(0.0), xpix(0.0), ypix(ymax));
  s += buf;
  for (int i = 0; i <= 4; i++) {
    double x = i / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" "
                  "text-anchor=\"middle\">%.2f</text>\n",
                  xpix(x), ypix(0.0) + 16.0, x);
    s += buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">N=%llu  "
                "c=%.4f</text>\n",
                xpix(0.02), ypix(ymax) + 14.0, (unsigned long long)h.total,
                c_fit);
  s += buf;
  s += "</svg>\n";
  return s;
}

std::string summary_json(uint64_t N, int B, double c, double rss,
                         double dstar) {
  std::string s = "{";
  s += "\"N\": " + std::to_string(N);
  s += ", \"B\": " + std::to_string(B);
  char buf[48];
  std::snprintf(buf, sizeof buf, ", \"c\": %.12g", c);
  s += buf;
  std::snprintf(buf, sizeof buf, ", \"rss\": %.12g", rss);
  s += buf;
  std::snprintf(buf, sizeof buf, ", \"Dstar\": %.12g", dstar);
  s += buf;
  s += "}";
  return s;
}

}  // namespace zgl::stats
