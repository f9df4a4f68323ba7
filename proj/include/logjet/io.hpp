#pragma once

// JSON input documents.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "logjet/expr.hpp"
#include "logjet/jets.hpp"
#include "logjet/logscheme.hpp"
#include "logjet/module.hpp"

namespace logjet {

struct TaskParams {
  std::optional<std::size_t> m;
  std::optional<std::uint64_t> bound;
  std::optional<std::size_t> r;
  std::optional<MonoidHom> component;
  std::map<std::string, std::string> jet_point;  // variable -> series text
};

struct InputDocument {
  std::string description;
  Field field;
  std::optional<MonoidPresentation> monoid;
  std::optional<LogChartScheme> scheme;
  std::optional<LogArc> arc;
  std::optional<PresentedModule> module;
  std::optional<MonomialMap> map;
  TaskParams task;
};

namespace detail {

using nlohmann::json;

/// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class DocReader {
 public:
  explicit DocReader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what,
                         const std::string& anchor) const {
    const auto [line, col] = locate(anchor);
    throw ParseError(path + ": " + what, line, col);
  }

  void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(path, "expected an object", last_key(path));
    for (const auto& [k, v] : obj.items())
      if (!allowed.count(k)) fail(path, "unknown key '" + k + "'", quoted(k));
  }

  const json& required(const json& obj, const std::string& path, const std::string& key) const {
    if (!obj.contains(key)) fail(path, "missing key '" + key + "'", last_key(path));
    return obj.at(key);
  }

  std::string string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string", last_key(path));
    return v.get<std::string>();
  }

  long integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer", last_key(path));
    return v.get<long>();
  }

  std::size_t natural(const json& v, const std::string& path) const {
    const long n = integer(v, path);
    if (n < 0) fail(path, "expected a nonnegative integer", last_key(path));
    return static_cast<std::size_t>(n);
  }

  bool boolean(const json& v, const std::string& path) const {
    if (!v.is_boolean()) fail(path, "expected true or false", last_key(path));
    return v.get<bool>();
  }

  const json& array(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array", last_key(path));
    return v;
  }

  std::vector<std::string> strings(const json& v, const std::string& path) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array(v, path).size(); ++i)
      out.push_back(string(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::vector<long> integers(const json& v, const std::string& path) const {
    std::vector<long> out;
    for (std::size_t i = 0; i < array(v, path).size(); ++i)
      out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::vector<std::uint64_t> naturals(const json& v, const std::string& path) const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < array(v, path).size(); ++i)
      out.push_back(natural(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  /// Parses an expression, mapping its error column into the document.
  template <class F>
  auto expression(const std::string& src, const std::string& path, F&& parse) const {
    try {
      return parse(src);
    } catch (const ParseError& e) {
      const std::size_t at = text_.find(json(src).dump());
      if (at == std::string::npos) throw ParseError(path + ": " + e.message(), 0, 0);
      const auto [line, col] = line_col(text_, at + 1);
      throw ParseError(path + ": " + e.message(), line, col + e.column() - 1);
    }
  }

 private:
  static std::string quoted(const std::string& key) { return json(key).dump(); }

  static std::string last_key(const std::string& path) {
    std::string p = path;
    const auto br = p.find('[');
    if (br != std::string::npos) p = p.substr(0, br);
    const auto dot = p.rfind('.');
    return quoted(dot == std::string::npos ? p : p.substr(dot + 1));
  }

  std::pair<std::size_t, std::size_t> locate(const std::string& anchor) const {
    const std::size_t at = text_.find(anchor);
    if (at == std::string::npos) return {0, 0};
    return line_col(text_, at);
  }

  const std::string& text_;
};

inline MonoidPresentation read_monoid(const DocReader& rd, const json& j, const std::string& path) {
  rd.check_keys(j, path, {"generators", "images"});
  const auto names = rd.strings(rd.required(j, path, "generators"), path + ".generators");
  const json& imgs = rd.array(rd.required(j, path, "images"), path + ".images");
  if (imgs.size() != names.size())
    rd.fail(path + ".images", "expected " + std::to_string(names.size()) + " image vectors", "\"images\"");
  std::vector<std::vector<long>> rows;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    rows.push_back(rd.integers(imgs[i], path + ".images[" + std::to_string(i) + "]"));
    if (i == 0) dim = rows.back().size();
    if (rows.back().size() != dim) rd.fail(path + ".images", "image vectors differ in length", "\"images\"");
  }
  return MonoidPresentation(names, rows, dim);
}

inline Field read_field(const DocReader& rd, const json& j) {
  rd.check_keys(j, "field", {"char"});
  const std::size_t p = rd.natural(rd.required(j, "field", "char"), "field.char");
  return p == 0 ? Field::rationals() : Field::prime(p);
}

inline LogChartScheme read_scheme(const DocReader& rd, const json& j, Field f,
                                  const std::optional<MonoidPresentation>& monoid) {
  rd.check_keys(j, "scheme", {"variables", "equations", "chart", "log_smooth", "base"});
  LogChartScheme s;
  s.field = f;
  s.vars = make_vars(rd.strings(rd.required(j, "scheme", "variables"), "scheme.variables"));
  if (j.contains("equations")) {
    const auto eqs = rd.strings(j["equations"], "scheme.equations");
    for (std::size_t i = 0; i < eqs.size(); ++i)
      s.ideal.push_back(rd.expression(eqs[i], "scheme.equations[" + std::to_string(i) + "]",
                                      [&](const std::string& e) { return parse_poly(e, f, s.vars); }));
  }
  s.monoid = monoid ? *monoid : MonoidPresentation({}, IntMatrix(0, 0));
  if (j.contains("chart")) {
    const auto chart = rd.strings(j["chart"], "scheme.chart");
    for (std::size_t i = 0; i < chart.size(); ++i)
      s.chart.push_back(rd.expression(chart[i], "scheme.chart[" + std::to_string(i) + "]",
                                      [&](const std::string& e) { return parse_poly(e, f, s.vars); }));
  }
  if (j.contains("log_smooth")) s.log_smooth = rd.boolean(j["log_smooth"], "scheme.log_smooth");
  if (j.contains("base")) {
    const json& b = j["base"];
    rd.check_keys(b, "scheme.base", {"monoid", "map", "variable"});
    BaseChart base;
    base.map.source = read_monoid(rd, rd.required(b, "scheme.base", "monoid"), "scheme.base.monoid");
    base.map.target = s.monoid;
    const json& rows = rd.array(rd.required(b, "scheme.base", "map"), "scheme.base.map");
    for (std::size_t i = 0; i < rows.size(); ++i)
      base.map.coefficients.push_back(rd.naturals(rows[i], "scheme.base.map[" + std::to_string(i) + "]"));
    if (b.contains("variable")) base.variable = rd.string(b["variable"], "scheme.base.variable");
    s.base = std::move(base);
  }
  return s;
}

inline LogArc read_arc(const DocReader& rd, const json& j, const LogChartScheme& s) {
  rd.check_keys(j, "arc", {"r", "precision", "series", "contact"});
  LogArc a;
  a.precision = rd.natural(rd.required(j, "arc", "precision"), "arc.precision");
  if (a.precision == 0) rd.fail("arc.precision", "precision must be positive", "\"precision\"");
  if (j.contains("r")) a.r = rd.natural(j["r"], "arc.r");
  const json& series = rd.required(j, "arc", "series");
  if (!series.is_object()) rd.fail("arc.series", "expected an object mapping variables to series", "\"series\"");
  rd.check_keys(series, "arc.series", std::set<std::string>(s.vars->begin(), s.vars->end()));
  for (const auto& v : *s.vars) {
    const std::string path = "arc.series." + v;
    const std::string src = rd.string(rd.required(series, "arc.series", v), path);
    a.series.push_back(rd.expression(src, path, [&](const std::string& e) {
      return parse_series(e, s.field, a.precision);
    }));
  }
  if (j.contains("contact")) a.contact = MonoidHom{rd.naturals(j["contact"], "arc.contact")};
  else if (a.r >= 1 && s.trivial_chart()) a.contact = MonoidHom{};
  return a;
}

inline PresentedModule read_module(const DocReader& rd, const json& j, Field f) {
  rd.check_keys(j, "module", {"generators", "precision", "mode", "relations"});
  PresentedModule m;
  m.field = f;
  m.generators = rd.natural(rd.required(j, "module", "generators"), "module.generators");
  m.precision = rd.natural(rd.required(j, "module", "precision"), "module.precision");
  if (m.precision == 0) rd.fail("module.precision", "precision must be positive", "\"precision\"");
  const std::string mode = j.contains("mode") ? rd.string(j["mode"], "module.mode") : "jet";
  if (mode == "jet") m.mode = ModuleMode::jet;
  else if (mode == "arc") m.mode = ModuleMode::arc;
  else rd.fail("module.mode", "expected \"jet\" or \"arc\"", "\"mode\"");
  const json& rows = rd.array(rd.required(j, "module", "relations"), "module.relations");
  const VarList tv = make_vars({"t"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = "module.relations[" + std::to_string(i) + "]";
    const auto entries = rd.strings(rows[i], rp);
    if (entries.size() != m.generators)
      rd.fail(rp, "expected " + std::to_string(m.generators) + " entries", "\"relations\"");
    std::vector<TruncSeries> row;
    bool nonzero = false;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string ep = rp + "[" + std::to_string(k) + "]";
      const Poly full = rd.expression(entries[k], ep, [&](const std::string& e) { return parse_poly(e, f, tv); });
      nonzero = nonzero || !full.is_zero();
      row.push_back(parse_series(entries[k], f, m.precision));
    }
    m.rows.push_back(std::move(row));
    m.structurally_nonzero.push_back(nonzero);
  }
  m.check();
  return m;
}

inline MonomialMap read_map(const DocReader& rd, const json& j) {
  rd.check_keys(j, "monomial_map", {"source", "target", "exponents"});
  MonomialMap mm;
  mm.source = rd.strings(rd.required(j, "monomial_map", "source"), "monomial_map.source");
  mm.target = rd.strings(rd.required(j, "monomial_map", "target"), "monomial_map.target");
  const json& rows = rd.array(rd.required(j, "monomial_map", "exponents"), "monomial_map.exponents");
  std::vector<std::vector<long>> e;
  for (std::size_t i = 0; i < rows.size(); ++i)
    e.push_back(rd.integers(rows[i], "monomial_map.exponents[" + std::to_string(i) + "]"));
  for (const auto& row : e)
    if (row.size() != mm.source.size())
      rd.fail("monomial_map.exponents", "rows must have one entry per source coordinate", "\"exponents\"");
  mm.exponents = IntMatrix::from_rows(e, mm.source.size());
  mm.check();
  return mm;
}

inline TaskParams read_task(const DocReader& rd, const json& j) {
  rd.check_keys(j, "task", {"m", "bound", "r", "component", "jet_point"});
  TaskParams t;
  if (j.contains("m")) t.m = rd.natural(j["m"], "task.m");
  if (j.contains("bound")) t.bound = rd.natural(j["bound"], "task.bound");
  if (j.contains("r")) t.r = rd.natural(j["r"], "task.r");
  if (j.contains("component")) t.component = MonoidHom{rd.naturals(j["component"], "task.component")};
  if (j.contains("jet_point")) {
    const json& p = j["jet_point"];
    if (!p.is_object()) rd.fail("task.jet_point", "expected an object mapping variables to series", "\"jet_point\"");
    for (const auto& [k, v] : p.items()) t.jet_point[k] = rd.string(v, "task.jet_point." + k);
  }
  return t;
}

}  // namespace detail

/// Parses a JSON input document. Syntax and shape errors raise ParseError
/// with a document line and column; semantic checks are left to the
/// validators.
inline InputDocument parse_document(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    const auto colon = msg.find("syntax error");
    if (colon != std::string::npos) msg = msg.substr(colon);
    throw ParseError("invalid JSON: " + msg, line, col);
  }
  const detail::DocReader rd(text);
  rd.check_keys(j, "document", {"description", "field", "monoid", "scheme", "arc", "module", "monomial_map", "task"});
  InputDocument doc;
  if (j.contains("description")) doc.description = rd.string(j["description"], "description");
  doc.field = j.contains("field") ? detail::read_field(rd, j["field"]) : Field::rationals();
  if (j.contains("monoid")) doc.monoid = detail::read_monoid(rd, j["monoid"], "monoid");
  if (j.contains("scheme")) doc.scheme = detail::read_scheme(rd, j["scheme"], doc.field, doc.monoid);
  if (j.contains("arc")) {
    if (!doc.scheme) rd.fail("arc", "an arc needs a scheme block", "\"arc\"");
    doc.arc = detail::read_arc(rd, j["arc"], *doc.scheme);
  }
  if (j.contains("module")) doc.module = detail::read_module(rd, j["module"], doc.field);
  if (j.contains("monomial_map")) doc.map = detail::read_map(rd, j["monomial_map"]);
  if (j.contains("task")) doc.task = detail::read_task(rd, j["task"]);
  return doc;
}

}  // namespace logjet
