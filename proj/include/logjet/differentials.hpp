#pragma once

#include <string>
#include <vector>

#include "logjet/logscheme.hpp"
#include "logjet/module.hpp"

namespace logjet {

/// Log Kaehler differentials of a chart-presented scheme: generators dlog_x
/// for chart variables (in generator order), then dx for the others; rows
/// have polynomial coefficients.
struct LogDiffPresentation {
  Field field;
  VarList vars;
  std::vector<std::string> generators;
  std::vector<std::vector<Poly>> rows;
  std::vector<std::string> row_sources;  // provenance of each row
};

namespace detail {

inline std::vector<std::size_t> differential_columns(const LogChartScheme& s,
                                                     std::vector<std::string>& labels) {
  // column of each scheme variable
  std::vector<std::size_t> col(s.nvars(), 0);
  std::vector<bool> is_chart(s.nvars(), false);
  for (std::size_t g = 0; g < s.monoid.size(); ++g) {
    const std::size_t v = s.chart_var(g);
    is_chart[v] = true;
    col[v] = labels.size();
    labels.push_back("dlog_" + (*s.vars)[v]);
  }
  for (std::size_t v = 0; v < s.nvars(); ++v)
    if (!is_chart[v]) {
      col[v] = labels.size();
      labels.push_back("d" + (*s.vars)[v]);
    }
  return col;
}

}  // namespace detail

inline LogDiffPresentation build_log_differentials(const LogChartScheme& s) {
  LogDiffPresentation out;
  out.field = s.field;
  out.vars = s.vars;
  const std::vector<std::size_t> col = detail::differential_columns(s, out.generators);
  const std::size_t G = out.generators.size();
  const Poly zero(s.field, s.vars);
  std::vector<bool> is_chart(s.nvars(), false);
  for (std::size_t g = 0; g < s.monoid.size(); ++g) is_chart[s.chart_var(g)] = true;

  const IntMatrix& rel = s.monoid.relations();
  for (std::size_t k = 0; k < rel.rows(); ++k) {
    std::vector<Poly> row(G, zero);
    for (std::size_t g = 0; g < s.monoid.size(); ++g)
      row[col[s.chart_var(g)]] = Poly::constant(s.field, s.vars, FieldElem(s.field, rel(k, g)));
    out.rows.push_back(std::move(row));
    out.row_sources.push_back("relation " + relation_binomial(s, rel.row(k)).to_string());
  }
  for (const auto& f : s.ideal) {
    std::vector<Poly> row(G, zero);
    bool nonzero = false;
    for (std::size_t v = 0; v < s.nvars(); ++v) {
      Poly df = f.derivative(v);
      if (is_chart[v]) df = Poly::variable(s.field, s.vars, v) * df;  // dx = x dlog x
      nonzero = nonzero || !df.is_zero();
      row[col[v]] = std::move(df);
    }
    if (!nonzero) continue;
    out.rows.push_back(std::move(row));
    out.row_sources.push_back("d(" + f.to_string() + ")");
  }
  return out;
}

/// Differentials relative to the base chart: dlog of every base generator
/// and the differential of the base coordinate vanish.
inline LogDiffPresentation relative_log_differentials(const LogChartScheme& s) {
  if (!s.base) throw ValidationError("relative differentials need a base chart");
  LogDiffPresentation out = build_log_differentials(s);
  std::vector<std::string> labels;
  const std::vector<std::size_t> col = detail::differential_columns(s, labels);
  const std::size_t G = out.generators.size();
  const Poly zero(s.field, s.vars);
  const BaseChart& b = *s.base;
  for (std::size_t j = 0; j < b.map.source.size(); ++j) {
    std::vector<Poly> row(G, zero);
    for (std::size_t g = 0; g < s.monoid.size(); ++g)
      row[col[s.chart_var(g)]] =
          Poly::constant(s.field, s.vars, FieldElem(s.field, mpz_class(b.map.coefficients.at(j).at(g))));
    out.rows.push_back(std::move(row));
    out.row_sources.push_back("dlog of base generator " + b.map.source.names()[j]);
  }
  if (b.variable.empty()) return out;
  const std::size_t v = s.var_index(b.variable);
  std::vector<Poly> row(G, zero);
  row[col[v]] = s.generator_of(v) ? Poly::variable(s.field, s.vars, v)
                                  : Poly::constant(s.field, s.vars, 1L);
  out.rows.push_back(std::move(row));
  out.row_sources.push_back("d" + b.variable);
  return out;
}

/// Evaluates every coefficient along the arc (arc mode, precision P).
inline PresentedModule restrict_along_arc(const LogDiffPresentation& omega, const LogArc& a) {
  PresentedModule m;
  m.field = omega.field;
  m.generators = omega.generators.size();
  m.precision = a.precision;
  m.mode = ModuleMode::arc;
  for (const auto& row : omega.rows) {
    std::vector<TruncSeries> r;
    bool nonzero = false;
    for (const auto& p : row) {
      nonzero = nonzero || !p.is_zero();
      if (p.nvars() == 0 || a.series.empty())
        r.push_back(TruncSeries::constant(a.precision, FieldElem::zero(omega.field), p.constant_term()));
      else
        r.push_back(poly_eval_series(p, a.series));
    }
    m.rows.push_back(std::move(r));
    m.structurally_nonzero.push_back(nonzero);
  }
  return m;
}

/// Restriction along the order-m truncation of the arc, in jet mode.
inline PresentedModule restrict_along_jet(const LogDiffPresentation& omega, const LogArc& a,
                                          std::size_t m) {
  PresentedModule mod = restrict_along_arc(omega, truncate_arc(a, m));
  mod.mode = ModuleMode::jet;
  mod.structurally_nonzero.clear();
  return mod;
}

}  // namespace logjet
