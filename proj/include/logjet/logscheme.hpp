#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logjet/monoid.hpp"
#include "logjet/poly.hpp"
#include "logjet/series.hpp"

namespace logjet {

/// Base chart for relative questions: R -> Q plus the base coordinate.
struct BaseChart {
  MonoidMap map;         // source = R, target = the scheme's monoid
  std::string variable;  // base coordinate (a scheme variable), or empty
};

/// Affine scheme Spec L[x]/I with a chart Q -> L[x] sending every generator
/// to a variable.
struct LogChartScheme {
  Field field;
  VarList vars;
  std::vector<Poly> ideal;
  MonoidPresentation monoid;
  std::vector<Poly> chart;  // image of each monoid generator
  bool log_smooth = false;
  std::optional<BaseChart> base;

  std::size_t nvars() const { return vars->size(); }
  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars->size(); ++i)
      if ((*vars)[i] == name) return i;
    throw ValidationError("unknown variable '" + name + "'");
  }
  bool trivial_chart() const { return monoid.size() == 0; }

  /// Variable carrying generator g. Requires a supported chart.
  std::size_t chart_var(std::size_t g) const {
    const Poly& p = chart.at(g);
    const auto supp = p.support();
    if (p.num_terms() != 1 || supp.size() != 1 || p.degree() != 1 ||
        !p.terms().begin()->second.is_one())
      throw ValidationError("unsupported chart class: generator '" + monoid.names().at(g) +
                            "' maps to '" + p.to_string() + "', not a single variable");
    return supp[0];
  }

  /// Generator carried by variable v, if any.
  std::optional<std::size_t> generator_of(std::size_t v) const {
    for (std::size_t g = 0; g < monoid.size(); ++g)
      if (chart_var(g) == v) return g;
    return std::nullopt;
  }
};

/// The monomial x^{n+} - x^{n-} for a relation vector n on the generators.
inline Poly relation_binomial(const LogChartScheme& s, const std::vector<mpz_class>& n) {
  Exponent pos(s.nvars(), 0), neg(s.nvars(), 0);
  for (std::size_t g = 0; g < n.size(); ++g) {
    const std::size_t v = s.chart_var(g);
    if (n[g] > 0) pos[v] += static_cast<std::uint32_t>(n[g].get_ui());
    if (n[g] < 0) neg[v] += static_cast<std::uint32_t>(mpz_class(-n[g]).get_ui());
  }
  Poly p = Poly::monomial(s.field, s.vars, pos, FieldElem::one(s.field));
  p -= Poly::monomial(s.field, s.vars, neg, FieldElem::one(s.field));
  return p;
}

/// Relation vector of an ideal generator that is a chart binomial
/// c*(x^a - x^b) with a, b disjoint and supported on chart variables.
inline std::optional<std::vector<mpz_class>> chart_binomial_relation(const LogChartScheme& s,
                                                                     const Poly& f) {
  if (f.num_terms() != 2) return std::nullopt;
  auto it = f.terms().begin();
  const auto& [ea, ca] = *it++;
  const auto& [eb, cb] = *it;
  if (!(ca + cb).is_zero()) return std::nullopt;
  std::vector<mpz_class> n(s.monoid.size(), mpz_class(0));
  for (std::size_t v = 0; v < s.nvars(); ++v) {
    if (!ea[v] && !eb[v]) continue;
    if (ea[v] && eb[v]) return std::nullopt;
    const auto g = s.generator_of(v);
    if (!g) return std::nullopt;
    n[*g] = mpz_class(ea[v]) - mpz_class(eb[v]);
  }
  // must actually be a relation of the monoid
  const IntMatrix& img = s.monoid.images();
  for (std::size_t a = 0; a < img.cols(); ++a) {
    mpz_class acc = 0;
    for (std::size_t g = 0; g < n.size(); ++g) acc += n[g] * img(g, a);
    if (acc != 0) return std::nullopt;
  }
  return n;
}

/// Indices of ideal generators that are chart binomials of monoid relations.
inline std::vector<std::size_t> matched_binomials(const LogChartScheme& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.ideal.size(); ++i)
    if (chart_binomial_relation(s, s.ideal[i])) out.push_back(i);
  return out;
}

/// Every violation of the chart invariants; empty means valid.
inline std::vector<std::string> scheme_problems(const LogChartScheme& s) {
  std::vector<std::string> problems;
  if (s.chart.size() != s.monoid.size()) {
    problems.push_back("chart lists " + std::to_string(s.chart.size()) + " images for " +
                       std::to_string(s.monoid.size()) + " monoid generators");
    return problems;
  }
  for (const auto& f : s.ideal)
    if (!(f.field() == s.field) || !f.same_vars(Poly(s.field, s.vars)))
      problems.push_back("equation '" + f.to_string() + "' is not over the scheme's ring");

  bool chart_ok = true;
  std::map<std::size_t, std::string> used;
  for (std::size_t g = 0; g < s.monoid.size(); ++g) {
    try {
      const std::size_t v = s.chart_var(g);
      auto [it, fresh] = used.emplace(v, s.monoid.names()[g]);
      if (!fresh) {
        problems.push_back("duplicate chart variable '" + (*s.vars)[v] + "' for generators '" +
                           it->second + "' and '" + s.monoid.names()[g] + "'");
        chart_ok = false;
      }
    } catch (const ValidationError& e) {
      problems.push_back(e.what());
      chart_ok = false;
    }
  }
  if (!is_sharp(s.monoid)) problems.push_back("monoid is not sharp");

  if (chart_ok) {
    std::vector<std::vector<mpz_class>> found;
    for (const auto& f : s.ideal)
      if (auto n = chart_binomial_relation(s, f)) found.push_back(*n);
    IntMatrix span(found.size(), s.monoid.size());
    for (std::size_t i = 0; i < found.size(); ++i)
      for (std::size_t g = 0; g < s.monoid.size(); ++g) span(i, g) = found[i][g];
    const IntMatrix span_hnf = hermite_normal_form(span);
    const IntMatrix& rel = s.monoid.relations();
    for (std::size_t r = 0; r < rel.rows(); ++r) {
      IntMatrix extended(span_hnf.rows() + 1, s.monoid.size());
      for (std::size_t i = 0; i < span_hnf.rows(); ++i)
        for (std::size_t g = 0; g < s.monoid.size(); ++g) extended(i, g) = span_hnf(i, g);
      for (std::size_t g = 0; g < s.monoid.size(); ++g) extended(span_hnf.rows(), g) = rel(r, g);
      if (!(hermite_normal_form(extended) == span_hnf))
        problems.push_back("missing binomial " + relation_binomial(s, rel.row(r)).to_string() +
                           " for a monoid relation");
    }
  }

  if (s.base) {
    const BaseChart& b = *s.base;
    bool known = false;
    for (const auto& v : *s.vars) known = known || v == b.variable;
    if (!known && !b.variable.empty()) problems.push_back("base variable '" + b.variable + "' is not a scheme variable");
    if (b.map.target.names() != s.monoid.names())
      problems.push_back("base map must target the scheme's monoid");
    for (auto& p : b.map.check()) problems.push_back("base " + p);
  }
  return problems;
}

inline void validate_scheme(const LogChartScheme& s) {
  if (auto p = scheme_problems(s); !p.empty()) throw ValidationError(p);
}

/// Same scheme with the chart removed.
inline LogChartScheme strip_log_structure(LogChartScheme s) {
  s.monoid = MonoidPresentation({}, IntMatrix(0, 0));
  s.chart.clear();
  s.base.reset();
  return s;
}

// ---------------------------------------------------------------------------
// Arcs

/// Point of the scheme with values in L[t]/t^P, with log parameter r and
/// (for r >= 1) its contact orders.
struct LogArc {
  std::size_t precision = 0;
  std::size_t r = 1;
  std::vector<TruncSeries> series;  // aligned with the scheme's variables
  std::optional<MonoidHom> contact;
};

inline std::vector<std::string> arc_problems(const LogChartScheme& s, const LogArc& a) {
  std::vector<std::string> problems;
  if (a.series.size() != s.nvars())
    return {"arc gives " + std::to_string(a.series.size()) + " series for " +
            std::to_string(s.nvars()) + " variables"};
  for (std::size_t v = 0; v < s.nvars(); ++v)
    if (a.series[v].precision() != a.precision)
      return {"series for '" + (*s.vars)[v] + "' has precision " +
              std::to_string(a.series[v].precision()) + ", expected " + std::to_string(a.precision)};

  for (const auto& f : s.ideal) {
    const TruncSeries val = poly_eval_series(f, a.series);
    if (auto k = series_valuation(val))
      problems.push_back("equation " + f.to_string() + " fails at order " + std::to_string(*k) +
                         ": evaluates to " + to_string(val));
  }

  if (a.r == 0) {
    if (a.contact) problems.push_back("r = 0 arcs carry no contact vector");
    for (std::size_t g = 0; g < s.monoid.size(); ++g) {
      const std::size_t v = s.chart_var(g);
      const auto val = series_valuation(a.series[v]);
      if (val && *val != 0)
        problems.push_back("r = 0 requires chart variable '" + (*s.vars)[v] +
                           "' to be zero or a unit");
    }
    return problems;
  }

  if (!a.contact) {
    problems.push_back("contact vector required for r >= 1");
    return problems;
  }
  const MonoidHom& c = *a.contact;
  if (c.values.size() != s.monoid.size()) {
    problems.push_back("contact vector has " + std::to_string(c.values.size()) + " entries for " +
                       std::to_string(s.monoid.size()) + " generators");
    return problems;
  }
  if (!is_monoid_hom(s.monoid, c))
    problems.push_back("contact vector " + c.to_string() + " violates a monoid relation");
  for (std::size_t g = 0; g < s.monoid.size(); ++g) {
    const std::size_t v = s.chart_var(g);
    const std::string& name = (*s.vars)[v];
    const std::uint64_t want = a.r * c.values[g];
    const auto val = series_valuation(a.series[v]);
    if (want >= a.precision) {
      problems.push_back(val ? "valuation of '" + name + "' is " + std::to_string(*val) +
                                   ", expected " + std::to_string(want)
                             : "contact not determined at this order: '" + name +
                                   "' needs precision above " + std::to_string(want));
      continue;
    }
    if (!val)
      problems.push_back("chart variable '" + name + "' vanishes identically (infinite contact order)");
    else if (*val != want)
      problems.push_back("valuation of '" + name + "' is " + std::to_string(*val) + ", expected " +
                         std::to_string(want));
  }
  return problems;
}

inline void validate_arc(const LogChartScheme& s, const LogArc& a) {
  if (auto p = arc_problems(s, a); !p.empty()) throw ValidationError(p);
}

/// Coefficients through t^m; contact data is kept as is.
inline LogArc truncate_arc(const LogArc& a, std::size_t m) {
  if (m + 1 > a.precision)
    throw PrecisionError("cannot truncate an arc of precision " + std::to_string(a.precision) +
                             " to order " + std::to_string(m),
                         m + 1);
  LogArc out = a;
  out.precision = m + 1;
  for (auto& s : out.series) s = s.truncated(m + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Jet points

/// Jet coordinate names.
inline std::string unit_coord(const std::string& var, std::size_t j) {
  return "u_" + var + "_" + std::to_string(j);
}
inline std::string plain_coord(const std::string& var, std::size_t j) {
  return var + "_" + std::to_string(j);
}
inline std::string r0_scale_coord(const std::string& var) { return "a_" + var; }
inline std::string r0_unit_coord(const std::string& var, std::size_t j) {
  return "w_" + var + "_" + std::to_string(j);
}

/// Closed point of a log jet component: values of its coordinates.
struct JetPoint {
  std::size_t order = 0;
  std::size_t r = 1;
  std::optional<MonoidHom> contact;
  std::map<std::string, FieldElem> values;

  const FieldElem& at(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw ValidationError("jet point has no value for '" + name + "'");
    return it->second;
  }
};

/// The order-m jet point of an arc. Needs P > r*c_i + m for chart variables.
inline JetPoint jet_point_from_arc(const LogChartScheme& s, const LogArc& a, std::size_t m) {
  JetPoint p;
  p.order = m;
  p.r = a.r;
  p.contact = a.contact;
  std::vector<std::optional<std::size_t>> gen(s.nvars());
  for (std::size_t g = 0; g < s.monoid.size(); ++g) gen[s.chart_var(g)] = g;
  for (std::size_t v = 0; v < s.nvars(); ++v) {
    const std::string& name = (*s.vars)[v];
    const TruncSeries& x = a.series.at(v);
    if ((!gen[v] || a.r == 0) && m + 1 > a.precision)
      throw PrecisionError("arc precision " + std::to_string(a.precision) +
                               " too small for order " + std::to_string(m),
                           m + 1);
    if (!gen[v]) {
      for (std::size_t j = 0; j <= m; ++j) p.values.emplace(plain_coord(name, j), x[j]);
      continue;
    }
    if (a.r == 0) {
      const FieldElem lead = x[0];
      p.values.emplace(r0_scale_coord(name), lead);
      // w is free over a zero scale; take 0 there
      for (std::size_t j = 1; j <= m; ++j)
        p.values.emplace(r0_unit_coord(name, j), lead.is_zero() ? lead : x[j] / lead);
      continue;
    }
    const std::size_t shift = a.r * a.contact.value().values.at(*gen[v]);
    if (shift + m + 1 > a.precision)
      throw PrecisionError("unit part of '" + name + "' to order " + std::to_string(m) +
                               " needs precision " + std::to_string(shift + m + 1),
                           shift + m + 1);
    for (std::size_t j = 0; j <= m; ++j) p.values.emplace(unit_coord(name, j), x[shift + j]);
  }
  return p;
}

/// Jet point given by the unit part of every chart variable (r >= 1) or the
/// value of every variable (r = 0 chart variables and all others).
inline JetPoint jet_point_from_parts(const LogChartScheme& s, const std::optional<MonoidHom>& c,
                                     std::size_t r, std::size_t m,
                                     const std::map<std::string, TruncSeries>& parts) {
  JetPoint p;
  p.order = m;
  p.r = r;
  p.contact = c;
  for (std::size_t v = 0; v < s.nvars(); ++v) {
    const std::string& name = (*s.vars)[v];
    auto it = parts.find(name);
    if (it == parts.end()) throw ValidationError("jet point: no series for '" + name + "'");
    const TruncSeries& x = it->second;
    if (x.precision() < m + 1)
      throw ValidationError("jet point: series for '" + name + "' needs precision " +
                            std::to_string(m + 1));
    const bool chart = s.generator_of(v).has_value();
    if (chart && r == 0) {
      const FieldElem lead = x[0];
      p.values.emplace(r0_scale_coord(name), lead);
      for (std::size_t j = 1; j <= m; ++j)
        p.values.emplace(r0_unit_coord(name, j), lead.is_zero() ? lead : x[j] / lead);
      continue;
    }
    for (std::size_t j = 0; j <= m; ++j)
      p.values.emplace(chart ? unit_coord(name, j) : plain_coord(name, j), x[j]);
  }
  return p;
}

struct CharMonoidInvariants {
  std::vector<std::size_t> face;  // generators that are units at the point
  std::size_t gp_rank = 0;
  std::size_t irreducible_count = 0;
};

/// Characteristic monoid at a jet point: Q modulo the face of generators
/// whose unit part (or r = 0 scale) is nonzero there.
inline CharMonoidInvariants char_monoid_at_jet(const LogChartScheme& s, const JetPoint& p) {
  CharMonoidInvariants out;
  if (s.trivial_chart()) return out;
  for (std::size_t g = 0; g < s.monoid.size(); ++g) {
    const std::string& name = (*s.vars)[s.chart_var(g)];
    const FieldElem& lead = p.r == 0 ? p.at(r0_scale_coord(name)) : p.at(unit_coord(name, 0));
    if (!lead.is_zero()) out.face.push_back(g);
  }
  const MonoidQuotient q = quotient_by_face(s.monoid, out.face);
  out.gp_rank = q.gp_rank;
  out.irreducible_count = q.irreducible_count;
  return out;
}

}  // namespace logjet
