// One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "bldg/btree.hpp"
#include "bldg/chambers.hpp"
#include "bldg/cli.hpp"
#include "bldg/moufang.hpp"
#include "bldg/projline.hpp"
#include "json.hpp"

using namespace bldg;

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Flag counts from point/line counts: (q^2+q+1)(q+1) and (q+1)(q^2+1)(q+1).
long long expected_chambers(const GeometrySpec& g) {
  const long long q = g.q;
  return g.kind == GeometrySpec::Kind::projective_plane ? (q * q + q + 1) * (q + 1)
                                                        : (q + 1) * (q * q + 1) * (q + 1);
}

struct Outcome {
  bool passed = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok && passed) note = what;
    passed = passed && ok;
  }
};

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.passed = false;
    out.note = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && s > limit_s) out.require(false, "took " + std::to_string(s) + " s");
  if (!out.passed) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", out.passed ? "PASS" : "FAIL", n, title, s,
              out.note.empty() ? "" : " -- ", out.note.c_str());
  std::fflush(stdout);
}

Outcome schubert() {
  Outcome out;
  for (const char* spec : {"PG2:q=2", "PG2:q=3", "W:q=2"}) {
    const auto g = GeometrySpec::parse(spec);
    const auto c = ChamberComplex::build(g);
    const auto& W = c.coxeter();
    out.require(c.size() == expected_chambers(g), std::string(spec) + " chamber count");
    for (int c0 = 0; c0 < c.size(); ++c0) {
      long long total = 0;
      for (int k = 0; k < W.order(); ++k) {
        const auto w = W.element(k);
        const auto cell = c.schubert_cell(c0, w);
        total += static_cast<long long>(cell.size());
        out.require(static_cast<long long>(cell.size()) == ipow(g.q, W.length(w)), std::string(spec) + " cell size");
      }
      out.require(total == c.size(), std::string(spec) + " cells do not partition");
    }
    // Coordinates round-trip on every chamber, for every reduced word.
    std::set<int> covered{0};
    for (int k = 1; k < W.order(); ++k) {
      const auto w = W.element(k);
      const auto cell = c.schubert_cell(0, w);
      for (const auto& word : W.reduced_words(w)) {
        const SchubertChart chart(c, 0, word);
        for (int x : cell) {
          out.require(chart.chamber(chart.coordinates(x)) == x, std::string(spec) + " round trip " + format_word(word));
          covered.insert(x);
        }
        out.require(chart.verify(), std::string(spec) + " chart " + format_word(word));
      }
    }
    out.require(static_cast<int>(covered.size()) == c.size(), std::string(spec) + " coverage");
  }
  return out;
}

Outcome hua() {
  Outcome out;
  std::mt19937_64 rng(1);
  for (const char* spec : {"F7", "F4", "Q5", "Laurent:q=3,prec=8"}) {
    const Field F = Field::parse(spec);
    const ProjectiveLine line(F);
    const bool local = F.kind() != FieldKind::finite;
    for (int s = 0; s < 1000; ++s) {
      auto x = F.random_element(rng, local ? -2 : 0, local ? 2 : 0);
      auto y = F.random_element(rng, local ? -2 : 0, local ? 2 : 0);
      if (s % 10 == 0) y = F.zero();
      if (s % 10 == 1) {
        if (x.is_zero()) x = F.one();
        y = F.neg(F.inv(x));
      }
      const auto want = F.mul(x, y);
      const auto got = line.recover_multiplication(x, y);
      out.require(F.equal(got, want) && (want.is_zero() || got.prec >= want.prec),
                  std::string(spec) + " x=" + F.format(x) + " y=" + F.format(y));
    }
  }
  return out;
}

Outcome moufang() {
  Outcome out;
  for (const char* spec : {"PG2:q=2", "PG2:q=3", "W:q=2"}) {
    const int q = GeometrySpec::parse(spec).q;
    const auto r = check_moufang(ChamberComplex::build(spec));
    out.require(r.passed(), std::string(spec) + " not simply transitive");
    out.require(r.orbit_counts.size() == 1 && r.orbit_counts.begin()->first == q, std::string(spec) + " |U| != q");
  }
  return out;
}

Outcome root_groups() {
  Outcome out;
  int products = 0;
  for (const char* spec : {"PG2:q=2", "PG2:q=3", "W:q=2", "W:q=3"}) {
    const auto c = ChamberComplex::build(spec);
    const int q = GeometrySpec::parse(spec).q;
    const auto r = commutator_containment(c, LabeledApartment(c, c.apartments().front()), q);
    for (const auto& chk : r.checks) {
      out.require(chk.holds, std::string(spec) + " " + chk.relation);
      if (chk.relation.find("fix") != std::string::npos) ++products;
    }
  }
  // Three ranges per plane, seven per quadrangle.
  out.require(products == 2 * 3 + 2 * 7, "unexpected number of product ranges");
  return out;
}

Outcome mu_formula() {
  Outcome out;
  for (const char* spec : {"PG2:q=2", "PG2:q=3"}) {
    const auto c = ChamberComplex::build(spec);
    const auto r = check_mu_formula(c, LabeledApartment(c, c.apartments().front()), GeometrySpec::parse(spec).q);
    out.require(r.passed(), std::string(spec) + (r.failures.empty() ? "" : " " + r.failures.front()));
  }
  return out;
}

Outcome filtration() {
  Outcome out;
  for (const char* spec : {"Q2", "Q5", "Laurent:q=3,prec=8"}) {
    const Field F = Field::parse(spec);
    for (const auto& l : filtration_indices(F, -3, 5, 1))
      out.require(l.index == F.residue_order() && l.nested, std::string(spec) + " k=" + std::to_string(l.k));
  }
  return out;
}

Outcome iwasawa() {
  Outcome out;
  const Field Q5 = Field::parse("Qp:p=5,prec=8");
  std::mt19937_64 rng(1);
  for (int s = 0; s < 1000; ++s) {
    const auto g = random_sl2(Q5, rng);
    const auto f = iwasawa_decompose(Q5, g);
    out.require(equal(Q5, multiply(Q5, f.k, f.b), g) && in_base_stabilizer(Q5, f.k) && f.b.m[1][0].is_zero(),
                "sample " + std::to_string(s));
  }
  for (const char* spec : {"Q2", "Q3", "Q5"})
    for (int d = 1; d <= 4; ++d)
      out.require(boundary_transitivity_check(Field::parse(spec), d).passed(),
                  std::string(spec) + " depth " + std::to_string(d));
  return out;
}

// Elementary-divisor enumeration of the ball, independent of the neighbour map.
long long brute_ball_size(int q, int r) {
  long long count = 0;
  for (int a = -r; a <= r; ++a) {
    if (std::abs(a) <= r) ++count;  // b = 0
    for (int low = -r; low < a; ++low)
      for (int high = low; high < a; ++high) {
        const int m = std::min({a, low, 0});
        if (a - 2 * m > r) continue;
        // Strings with nonzero end digits at low and high.
        count += high == low ? q - 1 : (q - 1) * (q - 1) * ipow(q, high - low - 1);
      }
  }
  return count;
}

Outcome tree() {
  Outcome out;
  for (const char* spec : {"Q2", "Q3"}) {
    const Field F = Field::parse(spec);
    const int q = F.residue_order();
    for (int r = 0; r <= 4; ++r) {
      const auto n = static_cast<long long>(build_tree_ball(F, r).vertices.size());
      out.require(n == ball_size(q, r) && n == brute_ball_size(q, r), std::string(spec) + " r=" + std::to_string(r));
    }
    // Ends with three residue digits in both charts, all pairs.
    std::vector<BoundaryPoint> ends;
    for (int code = 0; code < q * q * q; ++code) {
      std::vector<int> digits{code % q, code / q % q, code / (q * q)};
      const bool zero = code == 0;
      const auto x = zero ? F.zero() : F.from_digits(0, digits);
      ends.push_back(BoundaryPoint::make(F, x, F.one()));
      if (digits[0] == 0) ends.push_back(BoundaryPoint::make(F, F.one(), x));
    }
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j)
        out.require(cone_vs_ultrametric(F, ends[i], ends[j], 4).consistent, std::string(spec) + " cone offset");
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  const std::vector<std::string> args{"all", "--profile", "quick", "--seed", "1", "--json-only"};
  std::string reports[2];
  for (auto& text : reports) {
    std::ostringstream o, e;
    const int code = cli::dispatch(args, o, e);
    out.require(code == 0, "exit code " + std::to_string(code));
    auto j = nlohmann::json::parse(o.str());
    j.erase("wall_time_ms");
    text = j.dump();
  }
  out.require(reports[0] == reports[1], "reports differ");
  return out;
}

}  // namespace

int main() {
  criterion(1, "Schubert cells and coordinates", 10, schubert);
  criterion(2, "Hua recovery of multiplication", 10, hua);
  criterion(3, "Moufang condition", 0, moufang);
  criterion(4, "root-group products and commutators", 0, root_groups);
  criterion(5, "mu formula", 0, mu_formula);
  criterion(6, "root-group filtration indices", 0, filtration);
  criterion(7, "Iwasawa decomposition and boundary transitivity", 0, iwasawa);
  criterion(8, "tree balls and cone offset", 0, tree);
  criterion(9, "determinism of the quick suite", 60, determinism);
  return failures == 0 ? 0 : 1;
}
