#include "suites.hpp"

#include <algorithm>
#include <random>

#include "bldg/btree.hpp"
#include "bldg/chambers.hpp"
#include "bldg/errors.hpp"
#include "bldg/field.hpp"
#include "bldg/moufang.hpp"
#include "bldg/projline.hpp"

namespace bldg::cli {

void RunReport::check(const std::string& id, bool passed, json witness) {
  ++run_;
  if (passed) {
    ++passed_;
    return;
  }
  failures_.push_back({{"id", id}, {"witness", std::move(witness)}});
}

json RunReport::to_json(const std::string& command, unsigned long long seed, double wall_ms) const {
  return {{"schema_version", 1},
          {"command", command},
          {"seed", seed},
          {"checks", {{"run", run_}, {"passed", passed_}, {"failed", failed()}}},
          {"failures", failures_},
          {"wall_time_ms", wall_ms},
          {"results", results}};
}

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int val(const Field& F, const FieldElement& x) { return x.is_zero() ? kInfinity : F.valuation(x); }

}  // namespace

json run_coxeter(RunReport& report, const std::string& name, const CoxeterMatrix& matrix) {
  const auto W = CoxeterSystem::build(matrix);
  const auto poincare = W.poincare_polynomial();
  long long total = 0;
  for (long long c : poincare) total += c;
  const int longest = W.length(W.longest());
  report.check("coxeter." + name + ".poincare_sum", total == W.order(),
               {{"order", W.order()}, {"poincare_sum", total}});
  report.check("coxeter." + name + ".longest_top_degree",
               longest + 1 == static_cast<int>(poincare.size()) && poincare.back() == 1,
               {{"longest_length", longest}, {"degree", static_cast<int>(poincare.size()) - 1}});
  return {{"order", W.order()}, {"longest_length", longest}, {"poincare", poincare}};
}

json run_field_classify(RunReport& report, const std::string& spec) {
  const auto fs = FieldSpec::parse(spec);
  const auto c = classify(fs);
  report.check("field." + spec + ".residue", c.residue_q == fs.q, {{"residue_q", c.residue_q}});
  return {{"tag", c.tag},
          {"characteristic", c.characteristic},
          {"residue_q", c.residue_q},
          {"local", c.local},
          {"description", c.description}};
}

json run_field_properties(RunReport& report, const std::string& spec, unsigned long long seed, int samples) {
  const Field F = Field::parse(spec);
  std::mt19937_64 rng(seed);
  const bool local = F.kind() != FieldKind::finite;
  Tally ultra, inverse, residue;
  for (int s = 0; s < samples; ++s) {
    const auto x = F.random_element(rng, local ? -3 : 0, local ? 3 : 0);
    const auto y = F.random_element(rng, local ? -3 : 0, local ? 3 : 0);
    const json w = {{"x", F.format(x)}, {"y", F.format(y)}};
    if (local) {
      ++ultra.checked;
      const auto sum = F.add(x, y);
      if (!sum.is_zero() && val(F, sum) < std::min(val(F, x), val(F, y))) ultra.fail(w);
    }
    if (!x.is_zero()) {
      ++inverse.checked;
      if (!F.equal(F.mul(x, F.inv(x)), F.one())) inverse.fail(w);
    }
    if (val(F, x) >= 0 && val(F, y) >= 0) {
      ++residue.checked;
      const auto& k = F.residue_field();
      if (F.residue(F.mul(x, y)) != k.mul(F.residue(x), F.residue(y)) ||
          F.residue(F.add(x, y)) != k.add(F.residue(x), F.residue(y)))
        residue.fail(w);
    }
  }
  if (local) report.check("field." + spec + ".ultrametric", ultra.failed == 0, ultra.summary());
  report.check("field." + spec + ".inverse", inverse.failed == 0, inverse.summary());
  report.check("field." + spec + ".residue_homomorphism", residue.failed == 0, residue.summary());
  return {{"samples", samples}, {"ultrametric", ultra.checked}, {"residue", residue.checked}};
}

json run_field_eval(const std::string& spec, const std::string& op, const std::string& x, const std::string& y) {
  const Field F = Field::parse(spec);
  const auto a = F.parse_element(x);
  FieldElement r;
  if (op == "val") return {{"x", F.format(a)}, {"valuation", a.is_zero() ? json(nullptr) : json(val(F, a))}};
  const auto b = F.parse_element(y);
  if (op == "add") {
    r = F.add(a, b);
  } else if (op == "sub") {
    r = F.sub(a, b);
  } else if (op == "mul") {
    r = F.mul(a, b);
  } else if (op == "div") {
    r = F.div(a, b);
  } else {
    throw InvalidSpec("unknown operation " + op);
  }
  return {{"op", op}, {"x", F.format(a)}, {"y", F.format(b)}, {"value", F.format(r)}};
}

json run_projline_hua(const std::string& spec, const std::string& x, const std::string& y) {
  const ProjectiveLine line(Field::parse(spec));
  const auto px = line.parse_point(x);
  const auto py = line.parse_point(y);
  return {{"x", line.format(px)}, {"y", line.format(py)}, {"value", line.format(line.hua_triple_product(px, py))}};
}

json run_projline_recover(RunReport& report, const std::string& spec, unsigned long long seed, int samples) {
  const Field F = Field::parse(spec);
  const ProjectiveLine line(F);
  std::mt19937_64 rng(seed);
  const bool local = F.kind() != FieldKind::finite;
  Tally tally;
  for (int s = 0; s < samples; ++s) {
    auto x = F.random_element(rng, local ? -2 : 0, local ? 2 : 0);
    auto y = F.random_element(rng, local ? -2 : 0, local ? 2 : 0);
    // Every tenth pair forces xy = 0, the next one xy = -1.
    if (s % 10 == 0) y = F.zero();
    if (s % 10 == 1) {
      if (x.is_zero()) x = F.one();
      y = F.neg(F.inv(x));
    }
    json w = {{"x", F.format(x)}, {"y", F.format(y)}};
    ++tally.checked;
    try {
      const auto want = F.mul(x, y);
      const auto got = line.recover_multiplication(x, y);
      w["want"] = F.format(want);
      w["got"] = F.format(got);
      if (!F.equal(got, want) || (!want.is_zero() && got.prec < want.prec)) tally.fail(w);
    } catch (const std::exception& e) {
      w["error"] = e.what();
      tally.fail(w);
    }
  }
  report.check("projline." + spec + ".recover", tally.failed == 0, tally.summary());
  return {{"checked", tally.checked}, {"failures", tally.failures}};
}

json run_building_verify(RunReport& report, const std::string& spec) {
  const auto c = ChamberComplex::build(spec);
  const auto axioms = verify_building_axioms(c);
  json out = {{"chambers", c.size()}, {"axiom_report", json::array()}};
  for (const auto& r : axioms.results) {
    report.check("building." + spec + "." + r.axiom, r.passed, {{"detail", r.detail}, {"chambers", r.witness}});
    out["axiom_report"].push_back({{"axiom", r.axiom}, {"passed", r.passed}, {"detail", r.detail}});
  }
  return out;
}

json run_building_cells(RunReport& report, const std::string& spec, int base) {
  const auto c = ChamberComplex::build(spec);
  const int q = GeometrySpec::parse(spec).q;
  const auto& W = c.coxeter();
  json cells = json::object();
  Tally tally;
  long long total = 0;
  for (int k = 0; k < W.order(); ++k) {
    const auto w = W.element(k);
    const auto size = static_cast<long long>(c.schubert_cell(base, w).size());
    cells[W.to_string(w)] = size;
    total += size;
    ++tally.checked;
    if (size != ipow(q, W.length(w))) tally.fail({{"word", W.to_string(w)}, {"size", size}, {"base", base}});
  }
  report.check("building." + spec + ".cells", tally.failed == 0, tally.summary());
  report.check("building." + spec + ".cells_total", total == c.size(), {{"total", total}, {"chambers", c.size()}});
  return {{"chambers", c.size()}, {"base", base}, {"cells", cells}};
}

json run_building_coords(RunReport& report, const std::string& spec, int base, bool every_word) {
  const auto c = ChamberComplex::build(spec);
  const auto& W = c.coxeter();
  Tally tally;
  long long chambers = 0;
  for (int k = 1; k < W.order(); ++k) {
    const auto w = W.element(k);
    const auto words = every_word ? W.reduced_words(w) : std::vector<Word>{W.word(w)};
    for (const auto& word : words) {
      ++tally.checked;
      const SchubertChart chart(c, base, word);
      chambers += static_cast<long long>(c.schubert_cell(base, w).size());
      if (!chart.verify()) tally.fail({{"word", format_word(word)}, {"base", base}});
    }
  }
  report.check("building." + spec + ".coordinates", tally.failed == 0, tally.summary());
  return {{"charts", tally.checked}, {"chambers_round_tripped", chambers}, {"every_word", every_word}};
}

json run_moufang_check(RunReport& report, const std::string& spec, bool mu, bool commutators, int max_roots) {
  const auto c = ChamberComplex::build(spec);
  const int q = GeometrySpec::parse(spec).q;
  const std::string id = "moufang." + spec;
  const auto m = check_moufang(c, max_roots);
  json orbit_counts = json::object();
  for (const auto& [size, count] : m.orbit_counts) orbit_counts[std::to_string(size)] = count;
  json failures = json::array();
  for (const auto& f : m.failures) {
    if (failures.size() >= 10) break;
    failures.push_back({{"root", f.chambers},
                        {"group_order", f.group_order},
                        {"apartments_containing", f.apartments_containing},
                        {"orbit_size", f.orbit_size}});
  }
  report.check(id + ".thick", m.thick, json::object());
  report.check(id + ".simply_transitive", m.passed(), {{"roots_checked", m.roots_checked}, {"failures", failures}});
  report.check(id + ".root_group_order", m.orbit_counts.size() == 1 && m.orbit_counts.begin()->first == q,
               {{"orbit_counts", orbit_counts}});
  json out = {{"roots_checked", m.roots_checked}, {"apartments", m.apartments}, {"orbit_counts", orbit_counts}};
  if (!mu && !commutators) return out;

  const LabeledApartment sigma(c, c.apartments().front());
  if (mu) {
    if (!is_prime(q)) {
      out["mu"] = "skipped: q is not prime";
    } else {
      const auto r = check_mu_formula(c, sigma, q);
      report.check(id + ".mu_unique", r.unique, {{"failures", r.failures}});
      report.check(id + ".mu_formula", r.formula && r.opposite_in_group, {{"failures", r.failures}});
      out["mu_unique"] = r.unique;
      out["mu_formula"] = r.formula;
    }
  }
  if (commutators) {
    const auto r = commutator_containment(c, sigma, q);
    json containments = json::array();
    for (const auto& chk : r.checks) {
      report.check(id + "." + chk.relation, chk.holds, {{"detail", chk.detail}});
      containments.push_back({{"relation", chk.relation}, {"holds", chk.holds}, {"detail", chk.detail}});
    }
    out["containments"] = containments;
    if (r.quadrangle.attempted && is_prime(q)) {
      report.check(id + ".quadratic_form", r.quadrangle.passed, {{"detail", r.quadrangle.detail}});
      out["quadratic_form"] = {{"form", r.quadrangle.form}, {"detail", r.quadrangle.detail}};
    }
  }
  return out;
}

json run_moufang_filtration(RunReport& report, const std::string& spec, int from, int to,
                            unsigned long long seed) {
  const Field F = Field::parse(spec);
  json indices = json::array();
  for (const auto& level : filtration_indices(F, from, to, seed)) {
    report.check("moufang.filtration." + spec + ".k=" + std::to_string(level.k),
                 level.index == F.residue_order() && level.nested,
                 {{"index", level.index}, {"nested", level.nested}});
    indices.push_back({{"k", level.k}, {"index", level.index}, {"nested", level.nested}});
  }
  return {{"indices", indices}};
}

json run_bt_tree(RunReport& report, const std::string& spec, int radius, std::string* dot) {
  const Field F = Field::parse(spec);
  const auto ball = build_tree_ball(F, radius);
  const int q = F.residue_order();
  const std::string id = "bt." + spec + ".r=" + std::to_string(radius);
  const long long expected = ball_size(q, radius);
  report.check(id + ".size", static_cast<long long>(ball.vertices.size()) == expected,
               {{"vertices", ball.vertices.size()}, {"expected", expected}});
  report.check(id + ".acyclic", ball.edges.size() + 1 == ball.vertices.size(), {{"edges", ball.edges.size()}});
  std::vector<int> degree(ball.vertices.size(), 0);
  for (const auto& [a, b] : ball.edges) {
    ++degree[a];
    ++degree[b];
  }
  Tally tally;
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    ++tally.checked;
    const int want = ball.depth[i] < radius ? q + 1 : (radius == 0 ? 0 : 1);
    if (degree[i] != want) tally.fail({{"vertex", ball.vertices[i].to_string()}, {"degree", degree[i]}});
  }
  report.check(id + ".degrees", tally.failed == 0, tally.summary());
  if (dot) *dot = ball.to_dot();
  return {{"vertices", ball.vertices.size()}, {"edges", ball.edges.size()}, {"expected", expected}};
}

json run_bt_iwasawa(RunReport& report, const std::string& spec, unsigned long long seed, int samples) {
  const Field F = Field::parse(spec);
  std::mt19937_64 rng(seed);
  Tally product, integral;
  for (int s = 0; s < samples; ++s) {
    const auto g = random_sl2(F, rng);
    json w = json::array();
    for (const auto& row : g.m) w.push_back({F.format(row[0]), F.format(row[1])});
    ++product.checked;
    ++integral.checked;
    try {
      const auto f = iwasawa_decompose(F, g);
      if (!equal(F, multiply(F, f.k, f.b), g) || !f.b.m[1][0].is_zero()) product.fail({{"g", w}});
      if (!in_base_stabilizer(F, f.k)) integral.fail({{"g", w}});
    } catch (const std::exception& e) {
      product.fail({{"g", w}, {"error", e.what()}});
    }
  }
  report.check("bt." + spec + ".iwasawa_multiply_back", product.failed == 0, product.summary());
  report.check("bt." + spec + ".iwasawa_k_integral", integral.failed == 0, integral.summary());
  return {{"samples", samples}};
}

json run_bt_boundary(RunReport& report, const std::string& spec, int depth) {
  const Field F = Field::parse(spec);
  const auto r = boundary_transitivity_check(F, depth);
  report.check("bt." + spec + ".boundary.depth=" + std::to_string(depth), r.passed(),
               {{"classes", r.classes}, {"expected", r.expected_classes}, {"orbits", r.orbits}});
  return {{"depth", depth},
          {"classes", r.classes},
          {"expected_classes", r.expected_classes},
          {"orbits", r.orbits},
          {"generators", r.generators}};
}

json run_bt_cone(RunReport& report, const std::string& spec, int depth, unsigned long long seed, int samples) {
  const Field F = Field::parse(spec);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution chart(0.5);
  auto random_end = [&] {
    const bool inf = chart(rng);
    const auto x = F.random_element(rng, inf ? 1 : 0, depth + 1);
    return inf ? BoundaryPoint::make(F, F.one(), x) : BoundaryPoint::make(F, x, F.one());
  };
  Tally tally;
  for (int s = 0; s < samples; ++s) {
    const auto x = random_end();
    const auto y = random_end();
    const auto [x1, x2] = x.vector(F);
    const auto [y1, y2] = y.vector(F);
    if (F.sub(F.mul(x1, y2), F.mul(x2, y1)).is_zero()) continue;
    ++tally.checked;
    const auto a = cone_vs_ultrametric(F, x, y, depth);
    const auto b = cone_vs_ultrametric(F, y, x, depth);
    if (!a.consistent || a.agreement != b.agreement || a.valuation_distance != b.valuation_distance)
      tally.fail({{"x", x.to_string(F)},
                  {"y", y.to_string(F)},
                  {"agreement", a.agreement},
                  {"valuation_distance", a.valuation_distance}});
  }
  report.check("bt." + spec + ".cone_offset", tally.failed == 0, tally.summary());
  return {{"pairs", tally.checked}, {"formula", "agreement = min(v(det), depth)"}};
}

json run_all(RunReport& report, const std::string& profile, unsigned long long seed) {
  if (profile != "quick" && profile != "full") throw InvalidSpec("profile must be quick or full");
  const bool full = profile == "full";
  const int samples = full ? 1000 : 100;
  json out;

  const std::vector<std::pair<std::string, CoxeterMatrix>> groups = {
      {"A3", CoxeterMatrix::type_a(3)},
      {"B3", CoxeterMatrix::parse("1 3 2\n3 1 4\n2 4 1")},
      {"H3", CoxeterMatrix::parse("1 5 2\n5 1 3\n2 3 1")},
      {"I2(8)", CoxeterMatrix::dihedral(8)},
  };
  for (const auto& [name, m] : groups)
    report.guarded("coxeter." + name, [&] { out["coxeter"][name] = run_coxeter(report, name, m); });
  if (full)
    report.guarded("coxeter.F4", [&] {
      out["coxeter"]["F4"] = run_coxeter(report, "F4", CoxeterMatrix::parse("1 3 2 2\n3 1 4 2\n2 4 1 3\n2 2 3 1"));
    });

  std::vector<std::string> fields = {"F7", "F4", "Q2", "Q5", "Laurent:q=3,prec=8"};
  if (full) fields.push_back("Laurent:q=2,prec=8");
  for (const auto& f : fields)
    report.guarded("field." + f, [&] {
      out["field"][f] = run_field_classify(report, f);
      out["field"][f]["properties"] = run_field_properties(report, f, seed, samples);
    });

  for (const char* f : {"F7", "F4", "Q5", "Laurent:q=3,prec=8"})
    report.guarded(std::string("projline.") + f,
                   [&] { out["projline"][f] = run_projline_recover(report, f, seed, samples); });

  std::vector<std::string> geometries = {"PG2:q=2", "PG2:q=3", "W:q=2"};
  if (full) geometries.push_back("Aflags:n=3,q=2");
  for (const auto& g : geometries)
    report.guarded("building." + g, [&] {
      out["building"][g]["verify"] = run_building_verify(report, g);
      out["building"][g]["cells"] = run_building_cells(report, g, 0);
      out["building"][g]["coords"] = run_building_coords(report, g, 0, full || g != "PG2:q=3");
    });

  std::vector<std::string> moufang = {"PG2:q=2", "PG2:q=3", "W:q=2"};
  for (const auto& g : moufang)
    report.guarded("moufang." + g, [&] { out["moufang"][g] = run_moufang_check(report, g, true, true, -1); });
  if (full)
    report.guarded("moufang.W:q=3",
                   [&] { out["moufang"]["W:q=3"] = run_moufang_check(report, "W:q=3", true, true, 200); });
  for (const char* f : {"Q2", "Q5", "Laurent:q=3,prec=8"})
    report.guarded(std::string("moufang.filtration.") + f,
                   [&] { out["filtration"][f] = run_moufang_filtration(report, f, -2, 4, seed); });

  for (const char* f : {"Q2", "Q3"})
    for (int r = 0; r <= 4; ++r)
      report.guarded(std::string("bt.tree.") + f, [&] {
        out["bt"]["tree"][f][std::to_string(r)] = run_bt_tree(report, f, r, nullptr);
      });
  report.guarded("bt.iwasawa", [&] { out["bt"]["iwasawa"]["Q5"] = run_bt_iwasawa(report, "Q5", seed, samples); });
  for (const char* f : {"Q2", "Q3", "Q5"})
    for (int d = 1; d <= 4; ++d)
      report.guarded(std::string("bt.boundary.") + f, [&] {
        out["bt"]["boundary"][f][std::to_string(d)] = run_bt_boundary(report, f, d);
      });
  for (const char* f : {"Q2", "Q3", "Laurent:q=2,prec=8"})
    report.guarded(std::string("bt.cone.") + f,
                   [&] { out["bt"]["cone"][f] = run_bt_cone(report, f, 6, seed, samples); });
  return out;
}

}  // namespace bldg::cli
