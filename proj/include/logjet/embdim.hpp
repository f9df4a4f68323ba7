#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logjet/differentials.hpp"
#include "logjet/jets.hpp"
#include "logjet/module.hpp"

namespace logjet {

/// value = d_m (m+1) + ord - rk + N - dim(residue field part), the last
/// term always 0 (closed points).
struct EmbDimReport {
  std::size_t m = 0;
  bool relative = false;
  InvariantFactors invariants;
  std::size_t betti = 0;
  std::size_t fitting = 0;
  std::size_t gp_rank = 0;
  std::size_t irreducibles = 0;
  std::size_t kernel_rank = 0;  // relative only; included in `irreducibles`
  std::size_t residue_dim = 0;
  std::vector<std::size_t> face;
  long value = 0;
  bool equality = false;  // log smooth asserted; otherwise an upper bound
  std::optional<std::size_t> oracle;

  long recompute() const {
    return static_cast<long>(betti * (m + 1) + fitting) - static_cast<long>(gp_rank) +
           static_cast<long>(irreducibles) - static_cast<long>(residue_dim);
  }
  bool matches() const { return !oracle || static_cast<long>(*oracle) == value; }
};

namespace detail {

inline EmbDimReport embdim_core(const LogChartScheme& s, const LogArc& a, std::size_t m,
                                const LogDiffPresentation& omega, const JetPoint* point,
                                JetPoint& used_point) {
  validate_scheme(s);
  validate_arc(s, a);
  EmbDimReport rep;
  rep.m = m;
  rep.invariants = diagonalize(restrict_along_arc(omega, a));
  rep.betti = betti_number(rep.invariants, m);
  rep.fitting = torsion_length(rep.invariants, m);
  used_point = point ? *point : jet_point_from_arc(s, a, m);
  if (used_point.order != m)
    throw ValidationError("jet point has order " + std::to_string(used_point.order) +
                          ", expected " + std::to_string(m));
  rep.equality = s.log_smooth;
  return rep;
}

}  // namespace detail

/// Embedding dimension of the order-m (log) jet space at the truncation of
/// the arc, or at `point` when supplied (a point of the same component).
inline EmbDimReport embdim_formula(const LogChartScheme& s, const LogArc& a, std::size_t m,
                                   const JetPoint* point = nullptr) {
  JetPoint p;
  EmbDimReport rep = detail::embdim_core(s, a, m, build_log_differentials(s), point, p);
  const CharMonoidInvariants cm = char_monoid_at_jet(s, p);
  rep.face = cm.face;
  rep.gp_rank = cm.gp_rank;
  rep.irreducibles = cm.irreducible_count;
  rep.value = rep.recompute();
  return rep;
}

/// Relative version over the base chart R -> Q: relative differentials and
/// the relative monoid counts at the point's face.
inline EmbDimReport embdim_relative(const LogChartScheme& s, const LogArc& a, std::size_t m,
                                    const JetPoint* point = nullptr) {
  if (!s.base) throw ValidationError("relative embedding dimension needs a base chart");
  JetPoint p;
  EmbDimReport rep = detail::embdim_core(s, a, m, relative_log_differentials(s), point, p);
  rep.relative = true;
  const CharMonoidInvariants cm = char_monoid_at_jet(s, p);
  const RelativeInvariants ri = relative_invariants_at_face(s.base->map, cm.face);
  rep.face = cm.face;
  rep.gp_rank = ri.relative_gp_rank;
  rep.kernel_rank = ri.kernel_rank;
  rep.irreducibles = ri.relative_irreducibles + ri.kernel_rank;
  rep.value = rep.recompute();
  return rep;
}

/// Component presentation the oracle works on.
inline ComponentDescriptor embdim_component(const LogChartScheme& s, const LogArc& a, std::size_t m) {
  if (s.trivial_chart()) return ordinary_jet_presentation(s, m);
  return log_jet_component_presentation(s, a.contact, a.r, m);
}

/// Zariski tangent dimension of the component at the point.
inline std::size_t embdim_oracle(const ComponentDescriptor& d, const JetPoint& p) {
  return tangent_dimension(d, p);
}

/// (rk gp Q, number of irreducibles) for the log point with monoid Q.
inline std::pair<std::size_t, std::size_t> logpoint_cotangent_dims(const MonoidPresentation& q) {
  return {gp_rank(q), irreducible_elements(q).count};
}

}  // namespace logjet
