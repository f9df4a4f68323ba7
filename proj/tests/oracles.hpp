#pragma once

// Independent brute-force computations used only by the test suites. Nothing
// here calls into the algorithm it is meant to check.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "logjet/linalg.hpp"
#include "logjet/monoid.hpp"
#include "logjet/series.hpp"

namespace logjet::oracle {

/// Seed for randomized tests; LOGJET_SEED overrides the default.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("LOGJET_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261016;
}

/// Integer determinant by cofactor expansion (small matrices only).
inline mpz_class det(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    acc += (j % 2 ? -1 : 1) * m[0][j] * det(minor);
  }
  return acc;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (idx.size() == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}

/// gcd of all k x k minors (0 when every minor vanishes).
inline mpz_class determinantal_divisor(const IntMatrix& m, std::size_t k) {
  mpz_class g = 0;
  for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub[a][b] = m(rows[a], cols[b]);
      mpz_class d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

/// Invariant factors d_k = D_k / D_{k-1} from determinantal divisors.
inline std::vector<mpz_class> invariant_factors_by_minors(const IntMatrix& m) {
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= n; ++k) {
    const mpz_class dk = determinantal_divisor(m, k);
    if (dk == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

/// All homs with generator values <= bound, by scanning the whole box. A box
/// point v is a hom iff it is the restriction of a linear functional, i.e.
/// G * phi = v is solvable over Q.
inline std::vector<MonoidHom> homs_by_box(const MonoidPresentation& q, std::uint64_t bound) {
  const std::size_t s = q.size(), k = q.ambient_dim();
  std::vector<MonoidHom> out;
  std::vector<std::uint64_t> v(s, 0);
  for (;;) {
    // v is a hom iff the linear system  G * phi = v  (phi in Q^k) is solvable.
    // Solve by elimination on the augmented matrix [G | v].
    std::vector<std::vector<mpq_class>> a(s, std::vector<mpq_class>(k + 1));
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] = q.images()(i, j);
      a[i][k] = mpq_class(v[i]);
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < s; ++col) {
      std::size_t p = row;
      while (p < s && a[p][col] == 0) ++p;
      if (p == s) continue;
      std::swap(a[row], a[p]);
      for (std::size_t i = 0; i < s; ++i) {
        if (i == row || a[i][col] == 0) continue;
        const mpq_class f = a[i][col] / a[row][col];
        for (std::size_t j = 0; j <= k; ++j) a[i][j] -= f * a[row][j];
      }
      ++row;
    }
    bool consistent = true;
    for (std::size_t i = row; i < s; ++i)
      if (a[i][k] != 0) consistent = false;
    if (consistent) out.push_back(MonoidHom{v});
    std::size_t i = 0;
    while (i < s && v[i] == bound) v[i++] = 0;
    if (i == s) break;
    ++v[i];
  }
  return out;
}

inline std::vector<MonoidHom> sorted(std::vector<MonoidHom> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Is target = sum n_i g_i with sum n_i >= 2 and every n_i <= max_mult?
inline bool is_sum_of_two_nonzero(const MonoidPresentation& q, const IntVec& target,
                                  std::uint64_t max_mult) {
  const std::size_t s = q.size(), k = q.ambient_dim();
  std::vector<std::uint64_t> n(s, 0);
  for (;;) {
    std::uint64_t total = 0;
    for (auto x : n) total += x;
    if (total >= 2) {
      IntVec sum(k, mpz_class(0));
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < k; ++j) sum[j] += mpz_class(n[i]) * q.images()(i, j);
      if (sum == target) return true;
    }
    std::size_t i = 0;
    while (i < s && n[i] == max_mult) n[i++] = 0;
    if (i == s) return false;
    ++n[i];
  }
}

/// Distinct irreducible generator images by brute-force decomposition search.
inline std::size_t irreducible_count_by_search(const MonoidPresentation& q,
                                               std::uint64_t max_mult = 6) {
  std::set<IntVec> irr;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (!is_sum_of_two_nonzero(q, q.image(i), max_mult)) irr.insert(q.image(i));
  return irr.size();
}

/// Can h be written as an N-combination of `basis`? Exhaustive.
inline bool in_monoid_span(const std::vector<MonoidHom>& basis, const MonoidHom& h) {
  std::function<bool(std::size_t, std::vector<std::uint64_t>)> rec =
      [&](std::size_t i, std::vector<std::uint64_t> rest) -> bool {
    bool zero = true;
    for (auto x : rest) zero = zero && x == 0;
    if (zero) return true;
    if (i == basis.size()) return false;
    std::vector<std::uint64_t> cur = rest;
    for (;;) {
      if (rec(i + 1, cur)) return true;
      for (std::size_t j = 0; j < cur.size(); ++j)
        if (basis[i].values[j] > cur[j]) return false;
      bool nonzero = false;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        cur[j] -= basis[i].values[j];
        nonzero = nonzero || basis[i].values[j] != 0;
      }
      if (!nonzero) return false;
    }
  };
  return rec(0, h.values);
}

/// L-dimension of coker(R) over L[t]/t^(m+1), computed by plain linear
/// algebra: the module is L^{G(m+1)} modulo the L-span of t^s * row for
/// every relation row and shift s.
inline std::size_t cokernel_dimension(const std::vector<std::vector<TruncSeries>>& rows,
                                      std::size_t generators, std::size_t m, Field f) {
  const std::size_t n = m + 1;
  FieldMatrix span;
  for (const auto& row : rows)
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<FieldElem> vec(generators * n, FieldElem::zero(f));
      for (std::size_t g = 0; g < generators; ++g)
        for (std::size_t k = 0; k + s < n && k < row[g].precision(); ++k)
          vec[g * n + k + s] = row[g][k];
      span.push_back(std::move(vec));
    }
  return generators * n - field_matrix_rank(span);
}

}  // namespace logjet::oracle
