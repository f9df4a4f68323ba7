#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "logjet/series.hpp"

namespace logjet {

enum class ModuleMode { jet, arc };

inline std::string to_string(ModuleMode m) { return m == ModuleMode::jet ? "jet" : "arc"; }

/// Cokernel of a relation matrix over L[t]/t^P: rows are relations, columns
/// generators. In jet mode P = m+1 is exact; in arc mode P is a working
/// precision for an arc and results are subject to the stabilization guard.
struct PresentedModule {
  Field field;
  std::size_t generators = 0;
  std::size_t precision = 1;
  ModuleMode mode = ModuleMode::jet;
  std::vector<std::vector<TruncSeries>> rows;
  // Per row: known to be nonzero before truncation (e.g. a nonzero
  // polynomial row restricted to an arc). Empty means unknown.
  std::vector<bool> structurally_nonzero;

  void check() const {
    for (const auto& row : rows) {
      if (row.size() != generators)
        throw ValidationError("relation row has " + std::to_string(row.size()) + " entries for " +
                              std::to_string(generators) + " generators");
      for (const auto& e : row)
        if (e.precision() != precision)
          throw ValidationError("relation entries must share precision " + std::to_string(precision));
    }
    if (!structurally_nonzero.empty() && structurally_nonzero.size() != rows.size())
      throw ValidationError("structural row flags do not match the relation rows");
  }
};

/// M = (+) L[t]/t^{e_i} (+) free part, at precision P.
struct InvariantFactors {
  std::size_t precision = 1;
  std::size_t generators = 0;
  ModuleMode mode = ModuleMode::jet;
  std::vector<std::size_t> exponents;  // e_i < P, descending (0 = killed generator)
  std::size_t free_rank = 0;           // generators with e >= P
  std::size_t hidden_rows = 0;         // structurally nonzero rows lost to truncation
};

/// Diagonalization by unit pivots of minimal valuation (ties row-major).
inline InvariantFactors diagonalize(const PresentedModule& mod) {
  mod.check();
  const std::size_t P = mod.precision, G = mod.generators;
  auto a = mod.rows;
  const std::size_t R = a.size();

  InvariantFactors out;
  out.precision = P;
  out.generators = G;
  out.mode = mod.mode;
  for (std::size_t i = 0; i < R; ++i) {
    const bool vanished = std::all_of(a[i].begin(), a[i].end(),
                                      [](const TruncSeries& s) { return s.is_zero(); });
    if (vanished && !mod.structurally_nonzero.empty() && mod.structurally_nonzero[i]) ++out.hidden_rows;
  }

  auto pad = [P](const TruncSeries& s) {
    TruncSeries out(P, s.zero_value());
    for (std::size_t k = 0; k < s.precision(); ++k) out[k] = s[k];
    return out;
  };

  std::size_t k = 0;
  for (; k < std::min(R, G); ++k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::size_t best_val = P;
    for (std::size_t i = k; i < R; ++i)
      for (std::size_t j = k; j < G; ++j)
        if (auto v = series_valuation(a[i][j]); v && *v < best_val) {
          best_val = *v;
          best = {i, j};
        }
    if (!best) break;
    std::swap(a[k], a[best->first]);
    for (auto& row : a) std::swap(row[k], row[best->second]);

    const std::size_t e = best_val;
    const TruncSeries unit_inv = series_unit_inverse(pad(a[k][k].shifted_down(e)));
    for (std::size_t i = k + 1; i < R; ++i) {
      if (a[i][k].is_zero()) continue;
      const TruncSeries q = pad(a[i][k].shifted_down(e)) * unit_inv;
      for (std::size_t j = k; j < G; ++j) a[i][j] -= q * a[k][j];
    }
    for (std::size_t j = k + 1; j < G; ++j) {
      if (a[k][j].is_zero()) continue;
      const TruncSeries q = pad(a[k][j].shifted_down(e)) * unit_inv;
      for (std::size_t i = k; i < R; ++i) a[i][j] -= q * a[i][k];
    }
    out.exponents.push_back(e);
  }
  out.free_rank = G - out.exponents.size();
  std::sort(out.exponents.rbegin(), out.exponents.rend());
  return out;
}

struct GuardResult {
  bool ok = true;
  std::size_t suggested_precision = 0;
  std::string reason;
};

/// Arc-mode check that P is large enough for the torsion to be honest:
/// no relation row vanished under truncation and P > sum(e) + max(e).
inline GuardResult stabilization_guard(const InvariantFactors& inv) {
  GuardResult g;
  std::size_t sum = 0, mx = 0;
  for (auto e : inv.exponents) {
    sum += e;
    mx = std::max(mx, e);
  }
  if (inv.hidden_rows > 0) {
    g.ok = false;
    g.reason = std::to_string(inv.hidden_rows) + " relation row(s) vanish modulo t^" +
               std::to_string(inv.precision);
  } else if (inv.precision <= sum + mx) {
    g.ok = false;
    g.reason = "precision " + std::to_string(inv.precision) + " does not exceed " +
               std::to_string(sum + mx) + " (sum of exponents plus the largest)";
  }
  if (!g.ok) g.suggested_precision = 2 * inv.precision;
  return g;
}

namespace detail {

inline void require_order(const InvariantFactors& inv, std::size_t m) {
  if (inv.mode == ModuleMode::jet) {
    if (m + 1 > inv.precision)
      throw PrecisionError("order " + std::to_string(m) + " needs precision " +
                               std::to_string(m + 1) + ", module has " +
                               std::to_string(inv.precision),
                           m + 1);
    return;
  }
  const GuardResult g = stabilization_guard(inv);
  if (!g.ok)
    throw PrecisionError("raise precision: " + g.reason + "; recompute at P = " +
                             std::to_string(g.suggested_precision),
                         g.suggested_precision);
}

}  // namespace detail

/// Number of summands free over L[t]/t^{m+1}.
inline std::size_t betti_number(const InvariantFactors& inv, std::size_t m) {
  detail::require_order(inv, m);
  std::size_t d = inv.free_rank;
  for (auto e : inv.exponents) d += e >= m + 1;
  return d;
}

/// Vanishing order of the i-th Fitting ideal of M at order m, capped at m+1
/// (the zero ideal counts as t^{m+1}).
inline std::size_t fitting_order(const InvariantFactors& inv, std::size_t i, std::size_t m) {
  detail::require_order(inv, m);
  if (i >= inv.generators) return 0;
  // all G exponents, descending, with free summands as m+1
  std::vector<std::size_t> all(inv.free_rank, m + 1);
  for (auto e : inv.exponents) all.push_back(std::min(e, m + 1));
  std::sort(all.rbegin(), all.rend());
  std::size_t sum = 0;
  for (std::size_t j = i; j < all.size(); ++j) sum += all[j];
  return std::min(sum, m + 1);
}

/// Sum of the torsion exponents that are honest at order m (e <= m).
inline std::size_t torsion_length(const InvariantFactors& inv, std::size_t m) {
  detail::require_order(inv, m);
  std::size_t sum = 0;
  for (auto e : inv.exponents)
    if (e <= m) sum += e;
  return sum;
}

/// L-dimension of M tensored with L[t]/t^{m+1}.
inline std::size_t module_dimension_over_L(const InvariantFactors& inv, std::size_t m) {
  return betti_number(inv, m) * (m + 1) + torsion_length(inv, m);
}

/// Fitting order from the (G-i)-minors directly, capped at m+1.
inline std::size_t fitting_order_oracle(const PresentedModule& mod, std::size_t i, std::size_t m) {
  mod.check();
  const std::size_t G = mod.generators, R = mod.rows.size();
  if (R > 6 || G > 6) throw Error("fitting_order_oracle: matrix larger than 6 x 6");
  if (mod.mode == ModuleMode::jet && m + 1 > mod.precision)
    throw PrecisionError("order exceeds module precision", m + 1);
  if (i >= G) return 0;
  const std::size_t k = G - i, n = std::min(m + 1, mod.precision);
  if (R < k) return m + 1;

  std::function<TruncSeries(const std::vector<std::vector<TruncSeries>>&)> det =
      [&](const std::vector<std::vector<TruncSeries>>& sub) -> TruncSeries {
    const std::size_t s = sub.size();
    if (s == 1) return sub[0][0];
    TruncSeries acc = series_zero(mod.field, n);
    for (std::size_t c = 0; c < s; ++c) {
      if (sub[0][c].is_zero()) continue;
      std::vector<std::vector<TruncSeries>> minor;
      for (std::size_t r = 1; r < s; ++r) {
        std::vector<TruncSeries> row;
        for (std::size_t cc = 0; cc < s; ++cc)
          if (cc != c) row.push_back(sub[r][cc]);
        minor.push_back(std::move(row));
      }
      const TruncSeries term = sub[0][c] * det(minor);
      if (c % 2) acc -= term;
      else acc += term;
    }
    return acc;
  };

  std::size_t best = m + 1;
  std::vector<std::size_t> rows, cols;
  std::function<void(std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
    if (rows.size() == k) {
      pick_cols(0);
      return;
    }
    for (std::size_t r = start; r < R; ++r) {
      rows.push_back(r);
      pick_rows(r + 1);
      rows.pop_back();
    }
  };
  pick_cols = [&](std::size_t start) {
    if (cols.size() == k) {
      std::vector<std::vector<TruncSeries>> sub;
      for (auto r : rows) {
        std::vector<TruncSeries> row;
        for (auto c : cols) row.push_back(mod.rows[r][c].truncated(n));
        sub.push_back(std::move(row));
      }
      if (auto v = series_valuation(det(sub))) best = std::min(best, *v);
      return;
    }
    for (std::size_t c = start; c < G; ++c) {
      cols.push_back(c);
      pick_cols(c + 1);
      cols.pop_back();
    }
  };
  pick_rows(0);
  return best;
}

}  // namespace logjet
