#include "bldg/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bldg/errors.hpp"
#include "suites.hpp"

namespace bldg::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string join(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) out += (out.empty() ? "" : " ") + a;
  return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  unsigned long long seed = kDefaultSeed;
  bool json_only = false;
  std::string profile = "quick";

  CLI::App app{"Finite and compact building checks", "bldg"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", seed, "seed for every random choice")->capture_default_str();
  app.add_flag("--json-only", json_only, "suppress the prose summary");
  app.add_option("--profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  RunReport report;
  std::function<void()> action;

  // coxeter
  auto* cox = app.add_subcommand("coxeter", "Coxeter group from a matrix file");
  std::string matrix_file;
  bool poincare = false;
  cox->add_option("--matrix", matrix_file, "one row per line")->required();
  cox->add_flag("--poincare", poincare, "include the Poincare polynomial");
  cox->callback([&] {
    action = [&] {
      auto r = run_coxeter(report, "matrix", CoxeterMatrix::parse(read_file(matrix_file)));
      if (!poincare) r.erase("poincare");
      report.results = r;
    };
  });

  // field
  auto* field = app.add_subcommand("field", "Coefficient fields");
  field->require_subcommand(1);
  std::string field_spec, op = "mul", x_lit, y_lit = "0";
  auto* classify_cmd = field->add_subcommand("classify", "Classify a field");
  classify_cmd->add_option("--field", field_spec)->required();
  classify_cmd->callback([&] { action = [&] { report.results = run_field_classify(report, field_spec); }; });
  auto* eval = field->add_subcommand("eval", "Evaluate an operation");
  eval->add_option("--field", field_spec)->required();
  eval->add_option("--op", op)->check(CLI::IsMember({"add", "sub", "mul", "div", "val"}));
  eval->add_option("--x", x_lit)->required();
  eval->add_option("--y", y_lit);
  eval->callback([&] { action = [&] { report.results = run_field_eval(field_spec, op, x_lit, y_lit); }; });

  // projline
  auto* proj = app.add_subcommand("projline", "Projective line and Hua recovery");
  proj->require_subcommand(1);
  int samples = 100;
  auto* hua = proj->add_subcommand("hua", "Hua triple product x y x");
  hua->add_option("--field", field_spec)->required();
  hua->add_option("--x", x_lit)->required();
  hua->add_option("--y", y_lit)->required();
  hua->callback([&] { action = [&] { report.results = run_projline_hua(field_spec, x_lit, y_lit); }; });
  auto* recover = proj->add_subcommand("recover", "Recovered against native multiplication");
  recover->add_option("--field", field_spec)->required();
  recover->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  recover->callback(
      [&] { action = [&] { report.results = run_projline_recover(report, field_spec, seed, samples); }; });

  // building
  auto* building = app.add_subcommand("building", "Finite chamber systems");
  building->require_subcommand(1);
  std::string geometry;
  int base = 0;
  bool every_word = false;
  auto* verify = building->add_subcommand("verify", "Building axioms");
  verify->add_option("--geometry", geometry)->required();
  verify->callback([&] { action = [&] { report.results = run_building_verify(report, geometry); }; });
  auto* cells = building->add_subcommand("cells", "Schubert cell sizes");
  cells->add_option("--geometry", geometry)->required();
  cells->add_option("--base", base, "base chamber");
  cells->callback([&] { action = [&] { report.results = run_building_cells(report, geometry, base); }; });
  auto* coords = building->add_subcommand("coords", "Schubert coordinates round trip");
  coords->add_option("--geometry", geometry)->required();
  coords->add_option("--base", base, "base chamber");
  coords->add_flag("--every-word", every_word, "all reduced words, not one per element");
  coords->callback(
      [&] { action = [&] { report.results = run_building_coords(report, geometry, base, every_word); }; });

  // moufang
  auto* mou = app.add_subcommand("moufang", "Root groups");
  mou->require_subcommand(1);
  bool mu = false, commutators = false;
  int max_roots = -1, from = 0, to = 4;
  auto* check = mou->add_subcommand("check", "Moufang condition");
  check->add_option("--geometry", geometry)->required();
  check->add_flag("--mu", mu, "mu uniqueness and formula");
  check->add_flag("--commutators", commutators, "product and commutator relations");
  check->add_option("--max-roots", max_roots, "-1 for every root");
  check->callback([&] {
    action = [&] { report.results = run_moufang_check(report, geometry, mu, commutators, max_roots); };
  });
  auto* filt = mou->add_subcommand("filtration", "Valuation filtration of a root group");
  filt->add_option("--field", field_spec)->required();
  filt->add_option("--from", from);
  filt->add_option("--to", to);
  filt->callback(
      [&] { action = [&] { report.results = run_moufang_filtration(report, field_spec, from, to, seed); }; });

  // bt
  auto* bt = app.add_subcommand("bt", "Bruhat-Tits tree");
  bt->require_subcommand(1);
  int radius = 2, depth = 2;
  std::string dot_file;
  auto* tree = bt->add_subcommand("tree", "Ball around the base vertex");
  tree->add_option("--field", field_spec)->required();
  tree->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  tree->add_option("--dot", dot_file, "write the ball as DOT");
  tree->callback([&] {
    action = [&] {
      std::string dot;
      report.results = run_bt_tree(report, field_spec, radius, dot_file.empty() ? nullptr : &dot);
      if (!dot_file.empty()) {
        std::ofstream f(dot_file);
        if (!f) throw ParseError("cannot write " + dot_file);
        f << dot;
      }
    };
  });
  auto* iwa = bt->add_subcommand("iwasawa", "Random Iwasawa decompositions");
  iwa->add_option("--field", field_spec)->required();
  iwa->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  iwa->callback([&] { action = [&] { report.results = run_bt_iwasawa(report, field_spec, seed, samples); }; });
  auto* boundary = bt->add_subcommand("boundary", "Transitivity on the boundary");
  boundary->add_option("--field", field_spec)->required();
  boundary->add_option("--depth", depth)->check(CLI::PositiveNumber);
  boundary->callback([&] { action = [&] { report.results = run_bt_boundary(report, field_spec, depth); }; });
  auto* cone = bt->add_subcommand("cone", "Ray agreement against valuation distance");
  cone->add_option("--field", field_spec)->required();
  cone->add_option("--depth", depth)->check(CLI::PositiveNumber);
  cone->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  cone->callback([&] { action = [&] { report.results = run_bt_cone(report, field_spec, depth, seed, samples); }; });

  // all
  auto* all = app.add_subcommand("all", "Acceptance suite");
  all->callback([&] { action = [&] { report.results = run_all(report, profile, seed); }; });

  const std::string command = join(args);
  auto emit = [&](int code, const json& extra) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json j = report.to_json(command, seed, ms);
    for (const auto& [k, v] : extra.items()) j[k] = v;
    out << j.dump(2) << "\n";
    return code;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return emit(0, {{"usage", app.help()}});
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return emit(2, {{"error", e.what()}});
  }

  try {
    if (action) action();
  } catch (const std::exception& e) {
    // Malformed specs and literals are usage errors; anything else is a
    // failed check.
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidSpec*>(&e) ||
        dynamic_cast<const UnsupportedSpec*>(&e)) {
      err << "usage error: " << e.what() << "\n";
      return emit(2, {{"error", e.what()}});
    }
    report.check("command", false, {{"error", e.what()}});
  }

  const int code = report.failed() == 0 ? 0 : 1;
  if (!json_only) {
    err << command << ": " << report.run() - report.failed() << "/" << report.run() << " checks passed\n";
    for (const auto& f : report.failures()) err << "  FAIL " << f["id"].get<std::string>() << "\n";
  }
  return emit(code, json::object());
}

}  // namespace bldg::cli
