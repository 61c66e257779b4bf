#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace zgl {

using cplx = std::complex<double>;

// precondition / input problems -> CLI exit 1
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// numerical check failures (count deficits, bound violations) -> CLI exit 2
struct check_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Neumaier compensated accumulator.  Not exactly associative, but the
// grouping error is O(n eps^2 sum|x|), far below every tolerance here, so
// block-sharded reductions merge to the same value as the serial pass.
struct kahan {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void add(const kahan& o) {
    add(o.s);
    add(o.c);
  }
  double total() const { return s + c; }
};

struct kahan_c {
  kahan re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void add(const kahan_c& o) {
    re.add(o.re);
    im.add(o.im);
  }
  cplx total() const { return {re.total(), im.total()}; }
};

}  // namespace zgl
