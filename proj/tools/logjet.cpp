#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "logjet/report.hpp"

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInvalid = 2, kPrecision = 3 };

std::optional<logjet::MonoidHom> parse_component(const std::string& text) {
  if (text.empty()) return std::nullopt;
  logjet::MonoidHom h;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw logjet::ParseError("--component: expected comma-separated naturals, got \"" + text + "\"", 0, 0);
    h.values.push_back(v);
  }
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logjet: log jet spaces, module invariants and embedding dimensions"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

  std::string file, component;
  std::size_t m = 0, r = 0;
  std::uint64_t bound = 0;
  bool oracle = false, relative = false;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "input document (JSON)")->required(); };
  struct Flags {
    CLI::Option* m = nullptr;
    CLI::Option* r = nullptr;
    CLI::Option* bound = nullptr;
  };
  std::map<std::string, Flags> flags;

  auto* monoid = app.add_subcommand("monoid", "monoid invariants, homs and dual Hilbert basis");
  add_file(monoid);
  flags["monoid"].bound = monoid->add_option("--bound", bound, "list homs with generator values <= B");

  auto* evsp = app.add_subcommand("evsp", "evaluation-space components");
  add_file(evsp);
  flags["evsp"].bound = evsp->add_option("--bound", bound, "generator-value bound");
  flags["evsp"].r = evsp->add_option("-r", r, "log parameter r");

  auto* jets = app.add_subcommand("jets", "component presentation of the jet space");
  add_file(jets);
  flags["jets"].m = jets->add_option("-m", m, "jet order");
  flags["jets"].r = jets->add_option("-r", r, "log parameter r");
  jets->add_option("--component", component, "contact vector a,b,c");

  auto* module = app.add_subcommand("module", "invariant factors of a presented module");
  add_file(module);
  flags["module"].m = module->add_option("-m", m, "largest order reported");

  auto* jacobian = app.add_subcommand("jacobian", "log differentials and their restriction to the arc");
  add_file(jacobian);
  jacobian->add_flag("--relative", relative, "differentials relative to the base chart");

  auto* embdim = app.add_subcommand("embdim", "embedding dimension of the jet space at the arc");
  add_file(embdim);
  flags["embdim"].m = embdim->add_option("-m", m, "jet order");
  embdim->add_flag("--oracle", oracle, "also compute the Jacobian-rank oracle");
  embdim->add_flag("--relative", relative, "relative to the base chart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  logjet::RunOptions opts;
  opts.command = app.get_subcommands().front()->get_name();
  opts.input_name = std::filesystem::path(file).filename().string();
  const Flags& f = flags[opts.command];
  if (f.m && f.m->count()) opts.m = m;
  if (f.r && f.r->count()) opts.r = r;
  if (f.bound && f.bound->count()) opts.bound = bound;
  opts.oracle = oracle;
  opts.relative = relative;

  try {
    opts.component = parse_component(component);
    std::ifstream in(file, std::ios::binary);
    if (!in) throw logjet::ValidationError("cannot read '" + file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const logjet::InputDocument doc = logjet::parse_document(buf.str());
    const logjet::RunResult res = logjet::run(doc, opts);
    std::cout << (format == "json" ? logjet::render_json(res.report) : logjet::render_text(res.report));
    return res.exit_code;
  } catch (const logjet::PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return kPrecision;
  } catch (const logjet::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const logjet::ValidationError& e) {
    std::cerr << "invalid input:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
    return kInvalid;
  } catch (const logjet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
