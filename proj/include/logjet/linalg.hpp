#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logjet/field.hpp"

namespace logjet {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, mpz_class(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error("ragged IntMatrix initializer");
      for (long v : row) data_.emplace_back(v);
    }
  }
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows,
                             std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("ragged IntMatrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<mpz_class> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }
  std::vector<mpz_class> col(std::size_t j) const {
    std::vector<mpz_class> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix out(idx.size(), cols_);
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t j = 0; j < cols_; ++j) out(a, j) = (*this)(idx[a], j);
    return out;
  }
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const {
    IntMatrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t b = 0; b < idx.size(); ++b) out(i, b) = (*this)(i, idx[b]);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const mpz_class& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const mpz_class& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("IntMatrix product shape mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v == 0; });
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += (*this)(i, j).get_str();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// left * M * right == diag(diagonal), with d_i | d_{i+1} and d_i >= 0.
struct SmithForm {
  std::vector<mpz_class> diagonal;  // length min(rows, cols)
  std::size_t rank = 0;
  IntMatrix left;
  IntMatrix right;
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t r = m.rows(), c = m.cols(), n = std::min(r, c);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0 &&
              (!best || abs(a(i, j)) < abs(a(best->first, best->second))))
            best = {i, j};
      if (!best) break;
      a.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      a.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the trailing block by the pivot
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < r && !bad_row; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      a.add_row(t, *bad_row, 1);
      u.add_row(t, *bad_row, 1);
    }
    if (t < r && t < c && a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }

  SmithForm out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.diagonal[i] = a(i, i);
    if (a(i, i) != 0) ++out.rank;
  }
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

inline std::size_t integer_rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

/// Row-style Hermite normal form: the nonzero rows form the canonical basis of
/// the row lattice (positive pivots, entries above each pivot reduced into
/// [0, pivot)).
inline IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t r = a.rows(), c = a.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    // Euclid on the column entries below `row`
    for (;;) {
      std::optional<std::size_t> piv;
      for (std::size_t i = row; i < r; ++i)
        if (a(i, col) != 0 && (!piv || abs(a(i, col)) < abs(a(*piv, col)))) piv = i;
      if (!piv) break;
      a.swap_rows(row, *piv);
      bool done = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (a(i, col) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
        a.add_row(i, row, -q);
        if (a(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) a.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
      a.add_row(i, row, -q);
    }
    ++row;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < row; ++i) keep.push_back(i);
  return a.select_rows(keep);
}

/// Columns span the integer kernel {x : M x = 0} (a saturated lattice).
inline IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm snf = smith_normal_form(m);
  std::vector<std::size_t> idx;
  for (std::size_t j = snf.rank; j < m.cols(); ++j) idx.push_back(j);
  return snf.right.select_cols(idx);
}

/// Canonical basis (as rows) of the integer kernel of M.
inline IntMatrix canonical_kernel_rows(const IntMatrix& m) {
  return hermite_normal_form(integer_kernel(m).transpose());
}

/// Product of the nonzero invariant factors: the index of the row lattice in
/// its saturation (1 iff saturated).
inline mpz_class lattice_index(const IntMatrix& m) {
  const SmithForm snf = smith_normal_form(m);
  mpz_class prod = 1;
  for (std::size_t i = 0; i < snf.rank; ++i) prod *= snf.diagonal[i];
  return prod;
}

/// True when the row lattices of a and b coincide.
inline bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  return hermite_normal_form(a) == hermite_normal_form(b);
}

// ---------------------------------------------------------------------------
// Linear algebra over a field

using FieldMatrix = std::vector<std::vector<FieldElem>>;

/// Rank by exact Gaussian elimination.
inline std::size_t field_matrix_rank(FieldMatrix m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    const FieldElem inv = m[rank][col].inverse();
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][col].is_zero()) continue;
      const FieldElem f = m[i][col] * inv;
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Rational row reduction helper used for lattice/cone work (always over Q,
/// independent of the coefficient field of the scheme).
using QMatrix = std::vector<std::vector<mpq_class>>;

inline QMatrix to_qmatrix(const IntMatrix& m) {
  QMatrix q(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q[i][j] = m(i, j);
  return q;
}

/// Indices of a maximal linearly independent subset of the rows, chosen
/// greedily in order.
inline std::vector<std::size_t> independent_rows(const IntMatrix& m) {
  std::vector<std::size_t> chosen;
  QMatrix basis;  // echelon rows of the chosen ones
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<mpq_class> v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(i, j);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const mpq_class f = v[pivots[b]] / basis[b][pivots[b]];
      if (f != 0)
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * basis[b][j];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const mpq_class& x) { return x != 0; });
    if (nz == v.end()) continue;
    chosen.push_back(i);
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    basis.push_back(std::move(v));
  }
  return chosen;
}

/// Solves coeffs * rows(basis) = target over Q; nullopt if target is not in
/// the span. `basis` rows must be linearly independent.
inline std::optional<std::vector<mpq_class>> solve_in_row_span(
    const IntMatrix& basis, const std::vector<mpz_class>& target) {
  const std::size_t k = basis.rows(), n = basis.cols();
  // Augmented system: columns = basis rows, rows = coordinates.
  QMatrix a(n, std::vector<mpq_class>(k + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t b = 0; b < k; ++b) a[j][b] = basis(b, j);
    a[j][k] = target.at(j);
  }
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(a[row], a[p]);
    const mpq_class inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const mpq_class f = a[i][col];
      for (std::size_t j = 0; j <= k; ++j) a[i][j] -= f * a[row][j];
    }
    pivcol.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (a[i][k] != 0) return std::nullopt;
  std::vector<mpq_class> x(k, 0);
  for (std::size_t r = 0; r < pivcol.size(); ++r) x[pivcol[r]] = a[r][k];
  return x;
}

}  // namespace logjet
