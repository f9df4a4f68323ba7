#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logjet/linalg.hpp"
#include "logjet/logscheme.hpp"

namespace logjet {

/// Closed presentation of one component of a (log) jet space.
struct ComponentDescriptor {
  std::size_t r = 1;
  std::size_t m = 0;
  std::optional<MonoidHom> contact;
  VarList vars;
  std::vector<Poly> equations;
  std::vector<std::string> source_vars;  // original scheme variables
  std::vector<Poly> underlying;          // order-0 image of each source variable

  std::size_t num_vars() const { return vars->size(); }
  std::size_t num_equations() const { return equations.size(); }
};

namespace detail {

inline PolySeries jet_series(Field f, const VarList& vars, const std::vector<std::size_t>& idx,
                             std::size_t precision, std::size_t shift = 0) {
  PolySeries s(precision, Poly(f, vars));
  for (std::size_t j = 0; j < idx.size() && j + shift < precision; ++j)
    s[j + shift] = Poly::variable(f, vars, idx[j]);
  return s;
}

inline void append_nonzero(std::vector<Poly>& out, const PolySeries& s, std::size_t upto) {
  for (std::size_t j = 0; j <= upto && j < s.precision(); ++j)
    if (!s[j].is_zero()) out.push_back(s[j]);
}

}  // namespace detail

/// Coefficients of t^0..t^m of f(sum_j x_j t^j); jet variables are named
/// `<x>_<j>` in variable-major order.
inline std::vector<Poly> hasse_schmidt_equations(const Poly& f, std::size_t m) {
  std::vector<std::string> names;
  for (const auto& v : *f.vars())
    for (std::size_t j = 0; j <= m; ++j) names.push_back(plain_coord(v, j));
  const VarList jv = make_vars(names);
  std::vector<PolySeries> subst;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j <= m; ++j) idx.push_back(i * (m + 1) + j);
    subst.push_back(detail::jet_series(f.field(), jv, idx, m + 1));
  }
  if (subst.empty()) {
    // constant polynomial: only the t^0 coefficient can be nonzero
    std::vector<Poly> out(m + 1, Poly(f.field(), jv));
    out[0] = Poly::constant(f.field(), jv, f.constant_term());
    return out;
  }
  return poly_eval_series(f, subst).coefficients();
}

/// Presentation of the component of the order-m log jet space indexed by the
/// contact vector c (r >= 1), or of the r = 0 jet space (c absent).
inline ComponentDescriptor log_jet_component_presentation(const LogChartScheme& s,
                                                          const std::optional<MonoidHom>& c,
                                                          std::size_t r, std::size_t m) {
  const Field f = s.field;
  const std::size_t P = m + 1;
  std::vector<std::optional<std::size_t>> gen(s.nvars());
  for (std::size_t g = 0; g < s.monoid.size(); ++g) gen[s.chart_var(g)] = g;

  if (r >= 1) {
    if (!c) throw ValidationError("contact vector required for r >= 1");
    if (c->values.size() != s.monoid.size())
      throw ValidationError("contact vector has " + std::to_string(c->values.size()) +
                            " entries for " + std::to_string(s.monoid.size()) + " generators");
    if (!is_monoid_hom(s.monoid, *c))
      throw ValidationError("contact vector " + c->to_string() + " violates a monoid relation");
  } else if (c) {
    throw ValidationError("r = 0 jets carry no contact vector");
  }

  ComponentDescriptor d;
  d.r = r;
  d.m = m;
  d.contact = c;
  d.source_vars = *s.vars;

  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> coords(s.nvars());  // indices into names
  for (std::size_t v = 0; v < s.nvars(); ++v) {
    const std::string& x = (*s.vars)[v];
    if (gen[v] && r == 0) {
      coords[v].push_back(names.size());
      names.push_back(r0_scale_coord(x));
      for (std::size_t j = 1; j <= m; ++j) {
        coords[v].push_back(names.size());
        names.push_back(r0_unit_coord(x, j));
      }
      continue;
    }
    for (std::size_t j = 0; j <= m; ++j) {
      coords[v].push_back(names.size());
      names.push_back(gen[v] ? unit_coord(x, j) : plain_coord(x, j));
    }
  }
  d.vars = make_vars(names);
  const Poly zero(f, d.vars);

  // substitution for every scheme variable, plus the unit parts
  std::vector<PolySeries> subst;
  std::vector<PolySeries> unit(s.monoid.size(), PolySeries(P, zero));
  for (std::size_t v = 0; v < s.nvars(); ++v) {
    if (!gen[v]) {
      subst.push_back(detail::jet_series(f, d.vars, coords[v], P));
      d.underlying.push_back(Poly::variable(f, d.vars, coords[v][0]));
      continue;
    }
    if (r == 0) {
      PolySeries u(P, zero);
      u[0] = Poly::constant(f, d.vars, 1L);
      for (std::size_t j = 1; j <= m; ++j) u[j] = Poly::variable(f, d.vars, coords[v][j]);
      const Poly a = Poly::variable(f, d.vars, coords[v][0]);
      PolySeries x(P, zero);
      for (std::size_t j = 0; j <= m; ++j) x[j] = a * u[j];
      subst.push_back(x);
      d.underlying.push_back(a);
      continue;
    }
    const std::size_t shift = r * c->values[*gen[v]];
    unit[*gen[v]] = detail::jet_series(f, d.vars, coords[v], P);
    subst.push_back(unit[*gen[v]].shifted_up(shift));
    d.underlying.push_back(shift > 0 ? zero : Poly::variable(f, d.vars, coords[v][0]));
  }

  if (r >= 1) {
    const IntMatrix& rel = s.monoid.relations();
    for (std::size_t k = 0; k < rel.rows(); ++k) {
      PolySeries pos = PolySeries::constant(P, zero, Poly::constant(f, d.vars, 1L));
      PolySeries neg = pos;
      for (std::size_t g = 0; g < s.monoid.size(); ++g) {
        if (rel(k, g) > 0) pos *= unit[g].pow(static_cast<unsigned>(rel(k, g).get_ui()));
        if (rel(k, g) < 0)
          neg *= unit[g].pow(static_cast<unsigned>(mpz_class(-rel(k, g)).get_ui()));
      }
      detail::append_nonzero(d.equations, pos - neg, m);
    }
  }
  const auto matched = matched_binomials(s);
  for (std::size_t i = 0; i < s.ideal.size(); ++i) {
    if (r >= 1 && std::binary_search(matched.begin(), matched.end(), i)) continue;
    const Poly& g = s.ideal[i];
    if (subst.empty()) {
      if (!g.constant_term().is_zero()) d.equations.push_back(Poly::constant(f, d.vars, g.constant_term()));
      continue;
    }
    detail::append_nonzero(d.equations, poly_eval_series(g, subst), m);
  }
  return d;
}

/// Ordinary jet space presentation; the scheme must carry the trivial chart.
inline ComponentDescriptor ordinary_jet_presentation(const LogChartScheme& s, std::size_t m) {
  if (!s.trivial_chart())
    throw ValidationError("ordinary jets need the trivial log structure (strip the chart first)");
  return log_jet_component_presentation(s, MonoidHom{}, 1, m);
}

/// Order-0 components indexed by the homs with generator values <= bound.
inline std::vector<ComponentDescriptor> eval_space_components(const LogChartScheme& s,
                                                              std::uint64_t bound,
                                                              std::size_t r = 1) {
  if (r == 0) throw ValidationError("evaluation space components need r >= 1");
  std::vector<ComponentDescriptor> out;
  for (const auto& c : enumerate_homs_to_N(s.monoid, bound))
    out.push_back(log_jet_component_presentation(s, c, r, 0));
  return out;
}

// ---------------------------------------------------------------------------
// Monomial maps between charts

/// Morphism of charts given on coordinates: target variable k pulls back to
/// the monomial prod_j source_j^{exponents(k, j)}.
struct MonomialMap {
  std::vector<std::string> source;
  std::vector<std::string> target;
  IntMatrix exponents;  // |target| x |source|, entries >= 0

  void check() const {
    if (exponents.rows() != target.size() || exponents.cols() != source.size())
      throw ValidationError("monomial map: exponent matrix must be " +
                            std::to_string(target.size()) + " x " + std::to_string(source.size()));
    for (std::size_t k = 0; k < exponents.rows(); ++k)
      for (std::size_t j = 0; j < exponents.cols(); ++j)
        if (exponents(k, j) < 0) throw ValidationError("monomial map: negative exponent");
  }
};

/// Contact vector of the image component: c_target = A * c_source.
inline MonoidHom component_index_pushforward(const MonomialMap& phi, const MonoidHom& c) {
  phi.check();
  if (c.values.size() != phi.source.size())
    throw ValidationError("contact vector has " + std::to_string(c.values.size()) +
                          " entries for " + std::to_string(phi.source.size()) + " source coordinates");
  MonoidHom out;
  for (std::size_t k = 0; k < phi.target.size(); ++k) {
    mpz_class acc = 0;
    for (std::size_t j = 0; j < phi.source.size(); ++j) acc += phi.exponents(k, j) * mpz_class(c.values[j]);
    out.values.push_back(acc.get_ui());
  }
  return out;
}

/// phi after psi (psi: W -> U, phi: U -> V).
inline MonomialMap compose(const MonomialMap& phi, const MonomialMap& psi) {
  phi.check();
  psi.check();
  if (phi.source != psi.target) throw ValidationError("monomial maps do not compose");
  return MonomialMap{psi.source, phi.target, phi.exponents * psi.exponents};
}

// ---------------------------------------------------------------------------
// Points, Jacobians, dimensions

namespace detail {

inline std::vector<FieldElem> aligned_point(const ComponentDescriptor& d, const JetPoint& p) {
  std::vector<FieldElem> out;
  for (const auto& name : *d.vars) out.push_back(p.at(name));
  return out;
}

}  // namespace detail

/// Equations of the descriptor that do not vanish at p.
inline std::vector<std::string> off_component(const ComponentDescriptor& d, const JetPoint& p) {
  const auto pt = detail::aligned_point(d, p);
  std::vector<std::string> bad;
  for (const auto& e : d.equations)
    if (!e.evaluate(pt).is_zero()) bad.push_back(e.to_string());
  return bad;
}

inline void require_on_component(const ComponentDescriptor& d, const JetPoint& p) {
  auto bad = off_component(d, p);
  if (bad.empty()) return;
  for (auto& b : bad) b = "point not on component: equation " + b + " does not vanish";
  throw ValidationError(bad);
}

/// Jacobian of `rows` with respect to the descriptor's variables at p.
inline FieldMatrix jacobian_at(const std::vector<Poly>& rows, const VarList& vars,
                               const std::vector<FieldElem>& pt) {
  FieldMatrix j;
  for (const auto& e : rows) {
    std::vector<FieldElem> row;
    for (std::size_t v = 0; v < vars->size(); ++v) row.push_back(e.derivative(v).evaluate(pt));
    j.push_back(std::move(row));
  }
  return j;
}

/// Zariski tangent dimension of the component at p.
inline std::size_t tangent_dimension(const ComponentDescriptor& d, const JetPoint& p) {
  require_on_component(d, p);
  const auto pt = detail::aligned_point(d, p);
  if (d.equations.empty()) return d.num_vars();
  return d.num_vars() - field_matrix_rank(jacobian_at(d.equations, d.vars, pt));
}

/// Drops the coordinates of order > m.
inline JetPoint truncate_jet_point(const JetPoint& p, const ComponentDescriptor& lower) {
  JetPoint out;
  out.order = lower.m;
  out.r = p.r;
  out.contact = p.contact;
  for (const auto& name : *lower.vars) out.values.emplace(name, p.at(name));
  return out;
}

/// dim(component at m+1) - dim(component at m). With a point (at order m+1)
/// the dimensions are tangent dimensions there; otherwise the scheme must be
/// asserted log smooth and the variable/equation counts are used.
inline long truncation_fiber_dimension(const LogChartScheme& s, const std::optional<MonoidHom>& c,
                                       std::size_t r, std::size_t m,
                                       const JetPoint* point = nullptr) {
  const ComponentDescriptor hi = log_jet_component_presentation(s, c, r, m + 1);
  const ComponentDescriptor lo = log_jet_component_presentation(s, c, r, m);
  if (point) {
    const long a = static_cast<long>(tangent_dimension(hi, *point));
    const long b = static_cast<long>(tangent_dimension(lo, truncate_jet_point(*point, lo)));
    return a - b;
  }
  if (!s.log_smooth)
    throw ValidationError("truncation fiber dimension needs a point unless the scheme is log smooth");
  return (static_cast<long>(hi.num_vars()) - static_cast<long>(hi.num_equations())) -
         (static_cast<long>(lo.num_vars()) - static_cast<long>(lo.num_equations()));
}

/// Tangent dimension at p of the fiber of the r = 0 jet space over the
/// ordinary jet space: kernel of [Jacobian of the equations; Jacobian of the
/// map to ordinary jet coordinates].
inline std::size_t r0_fiber_dimension(const LogChartScheme& s, std::size_t m, const JetPoint& p) {
  const ComponentDescriptor d = log_jet_component_presentation(s, std::nullopt, 0, m);
  require_on_component(d, p);
  const auto pt = detail::aligned_point(d, p);
  std::vector<Poly> rows = d.equations;
  std::vector<std::optional<std::size_t>> gen(s.nvars());
  for (std::size_t g = 0; g < s.monoid.size(); ++g) gen[s.chart_var(g)] = g;
  std::size_t k = 0;
  for (std::size_t v = 0; v < s.nvars(); ++v) {
    if (!gen[v]) {
      for (std::size_t j = 0; j <= m; ++j) rows.push_back(Poly::variable(s.field, d.vars, k + j));
      k += m + 1;
      continue;
    }
    // x_j = a * w_j (w_0 = 1)
    const Poly a = Poly::variable(s.field, d.vars, k);
    rows.push_back(a);
    for (std::size_t j = 1; j <= m; ++j) rows.push_back(a * Poly::variable(s.field, d.vars, k + j));
    k += m + 1;
  }
  return d.num_vars() - field_matrix_rank(jacobian_at(rows, d.vars, pt));
}

}  // namespace logjet
