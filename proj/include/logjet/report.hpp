#pragma once

// Deterministic reports for the command-line front end.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "logjet/differentials.hpp"
#include "logjet/embdim.hpp"
#include "logjet/io.hpp"
#include "logjet/jets.hpp"
#include "logjet/module.hpp"
#include "logjet/monoid.hpp"

namespace logjet {

using Report = nlohmann::ordered_json;

struct RunOptions {
  std::string command;
  std::string input_name;
  std::optional<std::size_t> m;
  std::optional<std::uint64_t> bound;
  std::optional<std::size_t> r;
  std::optional<MonoidHom> component;
  bool oracle = false;
  bool relative = false;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 oracle mismatch
  Report report;
};

namespace detail {

inline Report ints(const std::vector<std::size_t>& v) {
  Report a = Report::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline Report ints(const IntVec& v) {
  Report a = Report::array();
  for (const auto& x : v) a.push_back(x.get_si());
  return a;
}

inline Report ints(const MonoidHom& h) {
  Report a = Report::array();
  for (auto x : h.values) a.push_back(x);
  return a;
}

inline Report matrix(const IntMatrix& m) {
  Report a = Report::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(ints(m.row(i)));
  return a;
}

inline Report invariant_factors(const InvariantFactors& inv) {
  Report r;
  r["precision"] = inv.precision;
  r["generators"] = inv.generators;
  r["mode"] = to_string(inv.mode);
  r["exponents"] = ints(inv.exponents);
  r["free_rank"] = inv.free_rank;
  r["hidden_rows"] = inv.hidden_rows;
  return r;
}

inline Report guard(const InvariantFactors& inv) {
  const GuardResult g = stabilization_guard(inv);
  Report r;
  r["ok"] = g.ok;
  if (!g.ok) r["suggested_precision"] = g.suggested_precision;
  if (!g.reason.empty()) r["reason"] = g.reason;
  return r;
}

inline Report component(const ComponentDescriptor& d) {
  Report r;
  r["index"] = d.contact ? ints(*d.contact) : Report::array();
  r["r"] = d.r;
  r["m"] = d.m;
  r["num_vars"] = d.num_vars();
  r["num_equations"] = d.num_equations();
  r["vars_minus_equations"] = static_cast<long>(d.num_vars()) - static_cast<long>(d.num_equations());
  Report under;
  for (std::size_t i = 0; i < d.source_vars.size(); ++i) under[d.source_vars[i]] = d.underlying[i].to_string();
  r["underlying"] = under;
  r["variables"] = *d.vars;
  Report eqs = Report::array();
  for (const auto& e : d.equations) eqs.push_back(e.to_string());
  r["equations"] = eqs;
  return r;
}

inline const LogChartScheme& need_scheme(const InputDocument& doc) {
  if (!doc.scheme) throw ValidationError("input has no scheme block");
  return *doc.scheme;
}

inline const LogArc& need_arc(const InputDocument& doc) {
  if (!doc.arc) throw ValidationError("input has no arc block");
  return *doc.arc;
}

inline std::size_t need_m(const InputDocument& doc, const RunOptions& o) {
  if (o.m) return *o.m;
  if (doc.task.m) return *doc.task.m;
  throw ValidationError("no jet order: pass -m or set task.m");
}

inline Report header(const InputDocument& doc, const RunOptions& o) {
  Report r;
  r["command"] = o.command;
  r["input"] = o.input_name;
  if (!doc.description.empty()) r["description"] = doc.description;
  return r;
}

inline Report run_monoid(const InputDocument& doc, const RunOptions& o) {
  const MonoidPresentation* q = doc.monoid ? &*doc.monoid : nullptr;
  if (!q && doc.scheme) q = &doc.scheme->monoid;
  if (!q) throw ValidationError("input has no monoid block");
  Report r = header(doc, o);
  Report mon;
  mon["generators"] = q->names();
  mon["images"] = matrix(q->images());
  mon["gp_rank"] = gp_rank(*q);
  mon["relations"] = matrix(q->relations());
  const bool sharp = is_sharp(*q);
  mon["sharp"] = sharp;
  r["monoid"] = mon;
  if (!sharp) {
    r["notes"] = {"irreducibles and the dual Hilbert basis need a sharp monoid"};
    return r;
  }
  const IrreducibleElements irr = irreducible_elements(*q);
  Report names = Report::array();
  for (auto g : irr.generators) names.push_back(q->names()[g]);
  r["irreducibles"] = {{"count", irr.count}, {"generators", names}};
  Report rays = Report::array();
  for (const auto& ray : dual_cone_rays(*q)) rays.push_back(ints(ray));
  r["dual_cone_rays"] = rays;
  Report hb = Report::array();
  for (const auto& h : hilbert_basis_dual(*q)) hb.push_back(ints(h));
  r["hilbert_basis_dual"] = hb;
  const std::optional<std::uint64_t> bound = o.bound ? o.bound : doc.task.bound;
  if (bound) {
    Report homs = Report::array();
    for (const auto& h : enumerate_homs_to_N(*q, *bound)) homs.push_back(ints(h));
    r["homs"] = {{"bound", *bound}, {"count", homs.size()}, {"values", homs}};
  }
  r["notes"] = {"homs are listed by generator values, lexicographically",
                "irreducible elements are generators that are not sums of two or more generators"};
  return r;
}

inline Report run_evsp(const InputDocument& doc, const RunOptions& o) {
  const LogChartScheme& s = need_scheme(doc);
  validate_scheme(s);
  const std::optional<std::uint64_t> bound = o.bound ? o.bound : doc.task.bound;
  if (!bound) throw ValidationError("no bound: pass --bound or set task.bound");
  const std::size_t r_ = o.r ? *o.r : doc.task.r.value_or(1);
  Report r = header(doc, o);
  r["bound"] = *bound;
  r["r"] = r_;
  const auto comps = eval_space_components(s, *bound, r_);
  r["count"] = comps.size();
  Report list = Report::array();
  for (const auto& d : comps) {
    Report c = component(d);
    if (doc.map) c["pushforward"] = ints(component_index_pushforward(*doc.map, *d.contact));
    list.push_back(c);
  }
  r["components"] = list;
  Report notes = Report::array();
  notes.push_back("components are indexed by homs Q -> N with generator values <= bound");
  notes.push_back("monoid relations impose the full unit identity; other equations their t^0..t^m coefficients");
  if (doc.map) notes.push_back("pushforward index: exponent matrix times contact vector");
  r["notes"] = notes;
  return r;
}

inline Report run_jets(const InputDocument& doc, const RunOptions& o) {
  const LogChartScheme& s = need_scheme(doc);
  validate_scheme(s);
  const std::size_t m = need_m(doc, o);
  std::size_t r_ = o.r ? *o.r : doc.task.r.value_or(doc.arc ? doc.arc->r : 1);
  Report r = header(doc, o);
  ComponentDescriptor d;
  if (s.trivial_chart()) {
    d = ordinary_jet_presentation(s, m);
    r["kind"] = "ordinary jets";
  } else if (r_ == 0) {
    d = log_jet_component_presentation(s, std::nullopt, 0, m);
    r["kind"] = "r = 0 log jets";
  } else {
    std::optional<MonoidHom> c = o.component ? o.component : doc.task.component;
    if (!c && doc.arc) c = doc.arc->contact;
    if (!c) throw ValidationError("no component: pass --component or set task.component");
    if (!is_monoid_hom(s.monoid, *c))
      throw ValidationError("component " + c->to_string() + " is not a monoid hom Q -> N");
    d = log_jet_component_presentation(s, c, r_, m);
    r["kind"] = "log jet component";
  }
  r["component"] = component(d);
  if (s.log_smooth && !s.trivial_chart() && r_ >= 1 && m >= 1) {
    const long step = truncation_fiber_dimension(s, d.contact, r_, m - 1);
    r["truncation_fiber_dimension"] = step;
  }
  return r;
}

inline Report run_module(const InputDocument& doc, const RunOptions& o) {
  if (!doc.module) throw ValidationError("input has no module block");
  const PresentedModule& mod = *doc.module;
  const InvariantFactors inv = diagonalize(mod);
  Report r = header(doc, o);
  r["invariant_factors"] = invariant_factors(inv);
  if (mod.mode == ModuleMode::arc) r["guard"] = guard(inv);
  const std::size_t m = need_m(doc, o);
  Report orders = Report::array();
  for (std::size_t k = 0; k <= m; ++k) {
    Report row;
    row["m"] = k;
    row["betti"] = betti_number(inv, k);
    Report fit = Report::array();
    for (std::size_t i = 0; i <= mod.generators; ++i) fit.push_back(fitting_order(inv, i, k));
    row["fitting_orders"] = fit;
    row["torsion_length"] = torsion_length(inv, k);
    row["dimension"] = module_dimension_over_L(inv, k);
    orders.push_back(row);
  }
  r["orders"] = orders;
  r["notes"] = {"betti = free rank + #{e >= m+1}", "fitting order i = min(m+1, sum of the G-i smallest exponents)",
                "dimension = betti (m+1) + sum of exponents <= m"};
  return r;
}

inline Report run_jacobian(const InputDocument& doc, const RunOptions& o) {
  const LogChartScheme& s = need_scheme(doc);
  validate_scheme(s);
  const LogDiffPresentation omega = o.relative ? relative_log_differentials(s) : build_log_differentials(s);
  Report r = header(doc, o);
  r["relative"] = o.relative;
  r["generators"] = omega.generators;
  Report rows = Report::array();
  for (std::size_t i = 0; i < omega.rows.size(); ++i) {
    Report entries = Report::array();
    for (const auto& p : omega.rows[i]) entries.push_back(p.to_string());
    rows.push_back({{"source", omega.row_sources[i]}, {"entries", entries}});
  }
  r["rows"] = rows;
  if (doc.arc) {
    validate_arc(s, *doc.arc);
    const PresentedModule mod = restrict_along_arc(omega, *doc.arc);
    Report res = Report::array();
    for (const auto& row : mod.rows) {
      Report entries = Report::array(), vals = Report::array();
      for (const auto& e : row) {
        entries.push_back(to_string(e));
        if (const auto v = series_valuation(e)) vals.push_back(*v);
        else vals.push_back(nullptr);
      }
      res.push_back({{"entries", entries}, {"valuations", vals}});
    }
    const InvariantFactors inv = diagonalize(mod);
    r["restricted"] = {{"precision", mod.precision}, {"rows", res}};
    r["invariant_factors"] = invariant_factors(inv);
    r["guard"] = guard(inv);
  }
  return r;
}

inline RunResult run_embdim(const InputDocument& doc, const RunOptions& o) {
  const LogChartScheme& s = need_scheme(doc);
  const LogArc& a = need_arc(doc);
  const std::size_t m = need_m(doc, o);
  if (o.relative && o.oracle)
    throw ValidationError("no oracle for relative reports: the relative jet space is not presented");
  std::optional<JetPoint> point;
  if (!doc.task.jet_point.empty()) {
    std::map<std::string, TruncSeries> parts;
    for (const auto& [k, v] : doc.task.jet_point) parts.emplace(k, parse_series(v, s.field, m + 1));
    point = jet_point_from_parts(s, a.contact, a.r, m, parts);
  }
  EmbDimReport rep = o.relative ? embdim_relative(s, a, m, point ? &*point : nullptr)
                                : embdim_formula(s, a, m, point ? &*point : nullptr);
  RunResult out;
  Report& r = out.report;
  r = header(doc, o);
  r["m"] = m;
  r["relative"] = rep.relative;
  r["point"] = point ? "task.jet_point" : "truncated arc";
  r["invariant_factors"] = invariant_factors(rep.invariants);
  r["guard"] = guard(rep.invariants);
  r["betti"] = rep.betti;
  r["torsion_length"] = rep.fitting;
  Report face = Report::array();
  for (auto g : rep.face) face.push_back(s.monoid.names()[g]);
  r["unit_face"] = face;
  r["gp_rank"] = rep.gp_rank;
  r["irreducibles"] = rep.irreducibles;
  if (rep.relative) r["kernel_rank"] = rep.kernel_rank;
  r["formula"] = rep.value;
  r["formula_kind"] = rep.equality ? "equality" : "upper bound";
  if (rep.relative) r["status"] = "interpretation";
  if (o.oracle) {
    const ComponentDescriptor d = embdim_component(s, a, m);
    const JetPoint p = point ? *point : jet_point_from_arc(s, a, m);
    require_on_component(d, p);
    rep.oracle = embdim_oracle(d, p);
    r["oracle"] = *rep.oracle;
    r["match"] = rep.matches();
    if (!rep.matches()) out.exit_code = 1;
  }
  Report notes = Report::array();
  notes.push_back("formula = betti (m+1) + torsion_length - gp_rank + irreducibles");
  notes.push_back("gp_rank and irreducibles are those of the characteristic monoid at the point");
  if (rep.relative) notes.push_back("relative counts use the base chart map at the point's face");
  if (o.oracle) notes.push_back("oracle = number of jet coordinates - Jacobian rank at the point");
  r["notes"] = notes;
  return out;
}

}  // namespace detail

/// Runs one subcommand on a parsed document. Validation and precision
/// failures propagate as exceptions.
inline RunResult run(const InputDocument& doc, const RunOptions& o) {
  if (o.command == "embdim") return detail::run_embdim(doc, o);
  RunResult out;
  if (o.command == "monoid") out.report = detail::run_monoid(doc, o);
  else if (o.command == "evsp") out.report = detail::run_evsp(doc, o);
  else if (o.command == "jets") out.report = detail::run_jets(doc, o);
  else if (o.command == "module") out.report = detail::run_module(doc, o);
  else if (o.command == "jacobian") out.report = detail::run_jacobian(doc, o);
  else throw ValidationError("unknown subcommand '" + o.command + "'");
  return out;
}

namespace detail {

inline bool is_scalar(const Report& j) { return !j.is_object() && !j.is_array(); }

inline std::string scalar_text(const Report& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

inline bool flat(const Report& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!is_scalar(e) || (e.is_string() && e.get<std::string>().find(' ') != std::string::npos)) return false;
  return true;
}

inline std::string flat_text(const Report& j) {
  std::string out = "[";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + scalar_text(j[i]);
  return out + "]";
}

inline void render(std::ostringstream& os, const Report& j, std::size_t indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v)) os << pad << k << ": " << scalar_text(v) << "\n";
      else if (flat(v)) os << pad << k << ": " << flat_text(v) << "\n";
      else if (v.empty()) os << pad << k << ": {}\n";
      else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (is_scalar(e)) os << pad << "- " << scalar_text(e) << "\n";
      else if (flat(e)) os << pad << "- " << flat_text(e) << "\n";
      else {
        os << pad << "-\n";
        render(os, e, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace detail

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  detail::render(os, r, 0);
  return os.str();
}

inline std::string render_json(const Report& r) { return r.dump(2) + "\n"; }

}  // namespace logjet
