#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace zgl {

// Deterministic range sharding: work is cut into fixed-size blocks and the
// per-block results are merged in block order, so the reduction tree (and
// therefore the rounded result) does not depend on the thread count.
template <class R, class Fn>
std::vector<R> map_blocks(std::ptrdiff_t lo, std::ptrdiff_t hi,
                          std::ptrdiff_t block, Fn&& fn) {
  std::ptrdiff_t n = hi > lo ? hi - lo : 0;
  std::ptrdiff_t nb = n > 0 ? (n + block - 1) / block : 0;
  std::vector<R> out(static_cast<size_t>(nb));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    std::ptrdiff_t a = lo + b * block;
    std::ptrdiff_t z = std::min(hi, a + block);
    out[size_t(b)] = fn(a, z);
  }
  return out;
}

}  // namespace zgl
