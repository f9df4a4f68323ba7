#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "logjet/linalg.hpp"

namespace logjet {

using IntVec = std::vector<mpz_class>;

/// Extreme rays of the polyhedral cone {v in R^s : v >= 0, A v = 0}, as
/// primitive integer vectors sorted lexicographically.
///
/// A ray of this cone is a nonnegative kernel vector of minimal support; a
/// support set S carries one exactly when ker(A restricted to S) is a line
/// spanned by a vector with no zero entry and constant sign. Exhaustive over
/// supports, so only meant for s up to a dozen or so columns.
inline std::vector<IntVec> nonnegative_kernel_rays(const IntMatrix& a) {
  const std::size_t s = a.cols();
  if (s > 20) throw Error("nonnegative_kernel_rays: too many columns");
  std::vector<IntVec> rays;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << s); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < s; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    const IntMatrix k = integer_kernel(a.select_cols(cols));
    if (k.cols() != 1) continue;
    int sign = 0;
    bool ok = true;
    for (std::size_t i = 0; i < k.rows() && ok; ++i) {
      const int sg = sgn(k(i, 0));
      if (sg == 0 || (sign != 0 && sg != sign)) ok = false;
      sign = sg;
    }
    if (!ok) continue;
    IntVec ray(s, mpz_class(0));
    for (std::size_t i = 0; i < cols.size(); ++i) ray[cols[i]] = sign * k(i, 0);
    rays.push_back(std::move(ray));
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

}  // namespace logjet
