#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "logjet/cone.hpp"
#include "logjet/linalg.hpp"

namespace logjet {

/// Fine monoid given by generator images in Z^k. The relation lattice (the
/// integer kernel of the image map) is computed once on construction.
class MonoidPresentation {
 public:
  MonoidPresentation() = default;

  MonoidPresentation(std::vector<std::string> names, IntMatrix images)
      : names_(std::move(names)), images_(std::move(images)) {
    if (names_.size() != images_.rows())
      throw ValidationError("monoid: " + std::to_string(names_.size()) +
                            " generator names but " +
                            std::to_string(images_.rows()) + " images");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!seen.insert(names_[i]).second)
        throw ValidationError("monoid: duplicate generator name '" + names_[i] + "'");
      bool zero = true;
      for (std::size_t j = 0; j < images_.cols(); ++j)
        if (images_(i, j) != 0) zero = false;
      if (zero)
        throw ValidationError("monoid: generator '" + names_[i] + "' has zero image");
    }
    relations_ = canonical_kernel_rows(images_.transpose());
  }

  MonoidPresentation(std::vector<std::string> names,
                     const std::vector<std::vector<long>>& images, std::size_t ambient)
      : MonoidPresentation(std::move(names), IntMatrix::from_rows(images, ambient)) {}

  /// N^n with the standard basis.
  static MonoidPresentation free(std::vector<std::string> names) {
    const std::size_t n = names.size();
    return MonoidPresentation(std::move(names), IntMatrix::identity(n));
  }

  std::size_t size() const { return names_.size(); }
  std::size_t ambient_dim() const { return images_.cols(); }
  const std::vector<std::string>& names() const { return names_; }
  const IntMatrix& images() const { return images_; }
  IntVec image(std::size_t i) const { return images_.row(i); }

  /// Canonical basis (rows indexed by generators) of the relation lattice
  /// {n in Z^s : sum n_i g_i = 0}.
  const IntMatrix& relations() const { return relations_; }

  std::size_t index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw ValidationError("monoid: unknown generator '" + name + "'");
    return static_cast<std::size_t>(it - names_.begin());
  }

 private:
  std::vector<std::string> names_;
  IntMatrix images_;
  IntMatrix relations_;
};

/// Monoid homomorphism Q -> N, recorded by its values on the generators.
struct MonoidHom {
  std::vector<std::uint64_t> values;

  auto operator<=>(const MonoidHom&) const = default;
  bool operator==(const MonoidHom&) const = default;

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(values[i]);
    }
    return out + ")";
  }
};

inline std::size_t gp_rank(const MonoidPresentation& q) { return integer_rank(q.images()); }

/// True when the hom respects every relation of the presentation.
inline bool is_monoid_hom(const MonoidPresentation& q, const MonoidHom& h) {
  if (h.values.size() != q.size()) return false;
  const IntMatrix& rel = q.relations();
  for (std::size_t r = 0; r < rel.rows(); ++r) {
    mpz_class acc = 0;
    for (std::size_t i = 0; i < q.size(); ++i) acc += rel(r, i) * mpz_class(h.values[i]);
    if (acc != 0) return false;
  }
  return true;
}

/// No nonzero element has an inverse, i.e. no nonzero n in N^s with
/// sum n_i g_i = 0.
inline bool is_sharp(const MonoidPresentation& q) {
  if (q.size() == 0) return true;
  return nonnegative_kernel_rays(q.images().transpose()).empty();
}

/// Extreme rays of the real cone of Hom(Q, R>=0), in generator-value
/// coordinates.
inline std::vector<IntVec> dual_cone_rays(const MonoidPresentation& q) {
  if (q.size() == 0) return {};
  return nonnegative_kernel_rays(q.relations());
}

namespace detail {

inline void require_sharp(const MonoidPresentation& q, const char* what) {
  if (!is_sharp(q))
    throw ValidationError(std::string(what) + ": monoid is not sharp");
}

/// Strictly positive integer functional on the generators (sum of the dual
/// rays). Requires sharpness.
inline std::vector<mpz_class> positive_weights(const MonoidPresentation& q) {
  std::vector<mpz_class> w(q.size(), mpz_class(0));
  for (const auto& ray : dual_cone_rays(q))
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += ray[i];
  return w;
}

/// Is `target` a sum of at least two generators?
inline bool decomposes(const MonoidPresentation& q, const std::vector<mpz_class>& w,
                       const IntVec& target, const mpz_class& target_weight) {
  const std::size_t s = q.size(), k = q.ambient_dim();
  IntVec acc(k, mpz_class(0));
  std::function<bool(std::size_t, mpz_class, std::size_t)> rec =
      [&](std::size_t i, mpz_class remaining, std::size_t used) -> bool {
    if (remaining == 0) return used >= 2 && acc == target;
    if (i == s) return false;
    // take generator i zero or more times, largest counts last
    mpz_class max_count = remaining / w[i];
    for (mpz_class n = 0; n <= max_count; ++n) {
      if (rec(i + 1, remaining - n * w[i], used + n.get_ui())) return true;
      for (std::size_t j = 0; j < k; ++j) acc[j] += q.images()(i, j);
    }
    for (std::size_t j = 0; j < k; ++j) acc[j] -= (max_count + 1) * q.images()(i, j);
    return false;
  };
  return rec(0, target_weight, 0);
}

}  // namespace detail

struct IrreducibleElements {
  std::vector<std::size_t> generators;  // first generator carrying each element
  std::size_t count = 0;                // number of distinct irreducible elements
};

/// Irreducible elements of Q^+ (elements of Q^+ \ Q^+2). For a sharp fine
/// monoid these are among the generators; a generator is irreducible iff it
/// is not a sum of two or more generators. The search is bounded by a
/// strictly positive weight, hence exact.
inline IrreducibleElements irreducible_elements(const MonoidPresentation& q) {
  detail::require_sharp(q, "irreducible_elements");
  IrreducibleElements out;
  if (q.size() == 0) return out;
  const auto w = detail::positive_weights(q);
  std::set<IntVec> seen;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const IntVec g = q.image(i);
    if (seen.count(g)) continue;
    if (detail::decomposes(q, w, g, w[i])) continue;
    seen.insert(g);
    out.generators.push_back(i);
  }
  out.count = out.generators.size();
  return out;
}

/// All homs Q -> N with every generator value <= bound, sorted
/// lexicographically. Values are free on a maximal independent set of
/// generators and determined (rationally) on the rest.
inline std::vector<MonoidHom> enumerate_homs_to_N(const MonoidPresentation& q,
                                                  std::uint64_t bound) {
  if (q.size() == 0) return {MonoidHom{}};
  const std::vector<std::size_t> pivots = independent_rows(q.images());
  const IntMatrix basis = q.images().select_rows(pivots);
  std::vector<std::vector<mpq_class>> coords(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto c = solve_in_row_span(basis, q.image(i));
    if (!c) throw Error("enumerate_homs_to_N: generator outside pivot span");
    coords[i] = std::move(*c);
  }

  std::vector<MonoidHom> out;
  std::vector<std::uint64_t> pv(pivots.size(), 0);
  for (;;) {
    MonoidHom h;
    h.values.resize(q.size());
    bool ok = true;
    for (std::size_t i = 0; i < q.size() && ok; ++i) {
      mpq_class v = 0;
      for (std::size_t a = 0; a < pivots.size(); ++a) v += coords[i][a] * mpq_class(pv[a]);
      if (v.get_den() != 1 || v < 0 || v > mpq_class(bound)) {
        ok = false;
        break;
      }
      h.values[i] = v.get_num().get_ui();
    }
    if (ok) out.push_back(std::move(h));
    std::size_t a = 0;
    while (a < pv.size() && pv[a] == bound) pv[a++] = 0;
    if (a == pv.size()) break;
    ++pv[a];
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimal generating set of the monoid Hom(Q, N).
///
/// Every Hilbert basis element lies in the half-open parallelepiped of some
/// simplicial subcone spanned by at most rk gp Q extreme rays, so its values
/// are bounded by rk * (max ray entry). All homs inside that box are listed
/// and the indecomposable ones kept.
inline std::vector<MonoidHom> hilbert_basis_dual(const MonoidPresentation& q) {
  detail::require_sharp(q, "hilbert_basis_dual");
  const auto rays = dual_cone_rays(q);
  if (rays.empty()) return {};
  mpz_class max_entry = 0;
  for (const auto& r : rays)
    for (const auto& v : r) max_entry = std::max(max_entry, v);
  const mpz_class bound = max_entry * static_cast<unsigned long>(gp_rank(q));
  const auto homs = enumerate_homs_to_N(q, bound.get_ui());

  auto below = [](const MonoidHom& a, const MonoidHom& b) {
    for (std::size_t i = 0; i < a.values.size(); ++i)
      if (a.values[i] > b.values[i]) return false;
    return true;
  };
  auto is_zero = [](const MonoidHom& h) {
    return std::all_of(h.values.begin(), h.values.end(), [](auto v) { return v == 0; });
  };
  std::vector<MonoidHom> basis;
  for (const auto& h : homs) {
    if (is_zero(h)) continue;
    bool reducible = false;
    for (const auto& g : homs) {
      if (is_zero(g) || g == h) continue;
      if (below(g, h)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(h);
  }
  return basis;
}

/// Is the submonoid generated by `face` a face of Q? Checked via the dual
/// cone: the rays vanishing on `face` must vanish on nothing else.
inline bool is_face(const MonoidPresentation& q, const std::vector<std::size_t>& face) {
  detail::require_sharp(q, "is_face");
  std::vector<bool> in_face(q.size(), false);
  for (auto i : face) in_face.at(i) = true;
  std::vector<mpz_class> phi(q.size(), mpz_class(0));
  for (const auto& ray : dual_cone_rays(q)) {
    bool vanishes = true;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (in_face[i] && ray[i] != 0) vanishes = false;
    if (!vanishes) continue;
    for (std::size_t i = 0; i < q.size(); ++i) phi[i] += ray[i];
  }
  for (std::size_t i = 0; i < q.size(); ++i)
    if ((phi[i] == 0) != in_face[i]) return false;
  return true;
}

/// Q / F for a face F, presented by the images of the generators outside F in
/// a lattice basis of gp Q / gp F.
struct MonoidQuotient {
  std::vector<std::size_t> face;       // sorted generator indices of F
  std::vector<std::size_t> remaining;  // generators outside F, in order
  MonoidPresentation quotient;         // generators = `remaining`
  std::size_t gp_rank = 0;
  std::size_t irreducible_count = 0;
};

inline MonoidQuotient quotient_by_face(const MonoidPresentation& q,
                                       std::vector<std::size_t> face) {
  std::sort(face.begin(), face.end());
  face.erase(std::unique(face.begin(), face.end()), face.end());
  for (auto i : face)
    if (i >= q.size()) throw ValidationError("quotient_by_face: generator index out of range");
  if (!is_face(q, face)) {
    std::string names;
    for (auto i : face) names += (names.empty() ? "" : ",") + q.names()[i];
    throw ValidationError("nonvanishing generators {" + names +
                          "} do not generate a face of the monoid");
  }

  MonoidQuotient out;
  out.face = face;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (!std::binary_search(face.begin(), face.end(), i)) out.remaining.push_back(i);

  const IntMatrix basis = hermite_normal_form(q.images());
  const std::size_t d = basis.rows();
  IntMatrix coords(q.size(), d);
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto c = solve_in_row_span(basis, q.image(i));
    for (std::size_t a = 0; a < d; ++a) {
      if (!c || (*c)[a].get_den() != 1) throw Error("quotient_by_face: lattice coordinates");
      coords(i, a) = (*c)[a].get_num();
    }
  }

  const SmithForm snf = smith_normal_form(coords.select_rows(face));
  for (std::size_t a = 0; a < snf.rank; ++a)
    if (snf.diagonal[a] != 1)
      throw ValidationError("quotient_by_face: gp Q / gp F has torsion (monoid not saturated)");
  const IntMatrix moved = coords * snf.right;
  std::vector<std::size_t> free_cols;
  for (std::size_t a = snf.rank; a < d; ++a) free_cols.push_back(a);

  std::vector<std::string> names;
  for (auto i : out.remaining) names.push_back(q.names()[i]);
  out.quotient =
      MonoidPresentation(std::move(names), moved.select_rows(out.remaining).select_cols(free_cols));
  out.gp_rank = d - snf.rank;
  out.irreducible_count = irreducible_elements(out.quotient).count;
  return out;
}

/// Monoid map R -> Q: each generator of R goes to an N-combination of the
/// generators of Q.
struct MonoidMap {
  MonoidPresentation source;
  MonoidPresentation target;
  std::vector<std::vector<std::uint64_t>> coefficients;  // |R| x |Q|

  IntVec image(std::size_t j) const {
    IntVec v(target.ambient_dim(), mpz_class(0));
    for (std::size_t i = 0; i < target.size(); ++i)
      for (std::size_t a = 0; a < v.size(); ++a)
        v[a] += mpz_class(coefficients.at(j).at(i)) * target.images()(i, a);
    return v;
  }

  IntMatrix image_matrix() const {
    IntMatrix m(source.size(), target.ambient_dim());
    for (std::size_t j = 0; j < source.size(); ++j) {
      const IntVec v = image(j);
      for (std::size_t a = 0; a < v.size(); ++a) m(j, a) = v[a];
    }
    return m;
  }

  /// Violations of the relations of R (empty when the map is well defined).
  std::vector<std::string> check() const {
    std::vector<std::string> problems;
    if (coefficients.size() != source.size())
      return {"monoid map: expected " + std::to_string(source.size()) + " generator images"};
    for (const auto& row : coefficients)
      if (row.size() != target.size())
        return {"monoid map: image rows must have " + std::to_string(target.size()) + " entries"};
    const IntMatrix img = image_matrix();
    const IntMatrix& rel = source.relations();
    for (std::size_t r = 0; r < rel.rows(); ++r) {
      for (std::size_t a = 0; a < img.cols(); ++a) {
        mpz_class acc = 0;
        for (std::size_t j = 0; j < source.size(); ++j) acc += rel(r, j) * img(j, a);
        if (acc != 0) {
          problems.push_back("monoid map violates relation " + std::to_string(r) +
                             " of the source monoid");
          break;
        }
      }
    }
    return problems;
  }
};

struct RelativeInvariants {
  std::size_t kernel_rank = 0;           // rk ker(gp R -> gp Q)
  std::size_t relative_irreducibles = 0;  // irreducibles of Q not hit by those of R
  std::size_t relative_gp_rank = 0;       // rk gp Q / im gp R
};

inline RelativeInvariants relative_invariants(const MonoidMap& phi) {
  if (auto problems = phi.check(); !problems.empty()) throw ValidationError(problems);
  const IntMatrix img = phi.image_matrix();
  const std::size_t image_rank = img.rows() ? integer_rank(img) : 0;
  RelativeInvariants out;
  out.kernel_rank = gp_rank(phi.source) - image_rank;
  out.relative_gp_rank = gp_rank(phi.target) - image_rank;

  std::set<IntVec> hit;
  for (auto j : irreducible_elements(phi.source).generators) hit.insert(phi.image(j));
  for (auto i : irreducible_elements(phi.target).generators)
    if (!hit.count(phi.target.image(i))) ++out.relative_irreducibles;
  return out;
}

/// Relative invariants of the characteristic monoids at a point where the
/// generators `target_face` of Q are units: the map R/F_R -> Q/F_Q with F_R
/// the preimage face.
inline RelativeInvariants relative_invariants_at_face(const MonoidMap& phi,
                                                      const std::vector<std::size_t>& target_face) {
  if (auto problems = phi.check(); !problems.empty()) throw ValidationError(problems);
  const MonoidQuotient qq = quotient_by_face(phi.target, target_face);
  std::vector<std::size_t> source_face;
  for (std::size_t j = 0; j < phi.source.size(); ++j) {
    bool inside = true;
    for (std::size_t i = 0; i < phi.target.size(); ++i)
      if (phi.coefficients[j][i] != 0 &&
          !std::binary_search(qq.face.begin(), qq.face.end(), i))
        inside = false;
    if (inside) source_face.push_back(j);
  }
  const MonoidQuotient qr = quotient_by_face(phi.source, source_face);
  MonoidMap reduced{qr.quotient, qq.quotient, {}};
  for (auto j : qr.remaining) {
    std::vector<std::uint64_t> row;
    for (auto i : qq.remaining) row.push_back(phi.coefficients[j][i]);
    reduced.coefficients.push_back(std::move(row));
  }
  return relative_invariants(reduced);
}

}  // namespace logjet
