#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bldg/errors.hpp"
#include "bldg/moufang.hpp"

using namespace bldg;

namespace {

const ChamberComplex& pg2_2() {
  static const ChamberComplex c = ChamberComplex::build("PG2:q=2");
  return c;
}

const ChamberComplex& pg2_3() {
  static const ChamberComplex c = ChamberComplex::build("PG2:q=3");
  return c;
}

const ChamberComplex& w2() {
  static const ChamberComplex c = ChamberComplex::build("W:q=2");
  return c;
}

const ChamberComplex& w3() {
  static const ChamberComplex c = ChamberComplex::build("W:q=3");
  return c;
}

LabeledApartment first_apartment(const ChamberComplex& c) {
  const auto apartments = c.apartments();
  return LabeledApartment(c, apartments.front());
}

}  // namespace

TEST(Permutation, GroupLaws) {
  const Permutation g{1, 2, 0, 3};
  const Permutation h{0, 1, 3, 2};
  // Right action: x^(gh) = (x^g)^h.
  const auto gh = compose(g, h);
  for (int x = 0; x < 4; ++x) EXPECT_EQ(gh[x], h[g[x]]);
  EXPECT_TRUE(is_identity(compose(g, inverse(g))));
  EXPECT_TRUE(is_identity(power(g, 3)));
  EXPECT_EQ(power(g, -1), inverse(g));
  EXPECT_EQ(conjugate(g, h), compose(compose(inverse(h), g), h));
  EXPECT_EQ(commutator(g, h), compose(inverse(g), conjugate(g, h)));
  EXPECT_TRUE(is_identity(commutator(g, g)));
}

TEST(Automorphisms, FanoPlaneFlagGroupOrder) {
  // PGL(3,2) has order 168 and acts regularly on pairs (flag, opposite flag)
  // modulo a torus; on chambers the stabilizer of one chamber has order 8.
  const auto& c = pg2_2();
  const auto all = find_automorphisms(c, {});
  EXPECT_EQ(all.size(), 168u);
  for (const auto& g : all) EXPECT_TRUE(is_automorphism(c, g));
  const auto stab = find_automorphisms(c, {{0}, {}});
  EXPECT_EQ(stab.size(), 8u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(Automorphisms, BudgetAndLimits) {
  SearchOptions tiny;
  tiny.node_budget = 5;
  EXPECT_THROW(find_automorphisms(pg2_2(), {}, tiny), SearchBudgetExceeded);
  SearchOptions one;
  one.max_results = 1;
  EXPECT_EQ(find_automorphisms(pg2_2(), {}, one).size(), 1u);
  // Fixing a panel setwise keeps only its stabilizer.
  const auto fixed = find_automorphisms(pg2_2(), {{}, {pg2_2().panel_of(0, 0)}});
  EXPECT_EQ(fixed.size(), 168u / 7);
  Permutation broken = identity_permutation(pg2_2().size());
  std::swap(broken[0], broken[1]);
  EXPECT_FALSE(is_automorphism(pg2_2(), broken) && pg2_2().panel_of(0, 0) != pg2_2().panel_of(1, 0) &&
               pg2_2().panel_of(0, 1) != pg2_2().panel_of(1, 1));
}

TEST(Roots, HalfApartments) {
  const auto& c = pg2_2();
  const auto apt = c.apartments().front();
  const auto roots = roots_of(c, apt);
  EXPECT_EQ(roots.size(), 6u);
  for (const auto& r : roots) {
    EXPECT_EQ(r.chambers.size(), 3u);
    EXPECT_EQ(interior_panels(c, r).size(), 2u);
  }
}

TEST(Roots, RootGroupOrderIsQ) {
  for (const auto* cx : {&pg2_2(), &pg2_3(), &w2()}) {
    const auto& c = *cx;
    const int q = c.panel(c.panel_of(0, 0)).size() - 1;
    const auto apt = c.apartments().front();
    for (const auto& r : roots_of(c, apt)) {
      const auto U = root_group(c, r);
      EXPECT_EQ(static_cast<int>(U.size()), q) << c.provenance();
      for (const auto& u : U)
        for (int x : r.chambers) EXPECT_EQ(u[x], x);
    }
  }
}

TEST(Moufang, FanoPlaneEveryRoot) {
  const auto report = check_moufang(pg2_2());
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.apartments, 28);
  EXPECT_GT(report.roots_checked, 0);
  ASSERT_EQ(report.orbit_counts.size(), 1u);
  EXPECT_EQ(report.orbit_counts.begin()->first, 2);
}

TEST(Moufang, QuadrangleAndPlaneOverF3) {
  for (const auto* cx : {&w2(), &pg2_3()}) {
    const auto report = check_moufang(*cx, 60);
    EXPECT_TRUE(report.passed()) << cx->provenance();
    EXPECT_EQ(report.roots_checked, 60);
  }
}

TEST(Moufang, ThinComplexIsNotThick) {
  const auto thin = ChamberComplex::coxeter_complex(CoxeterSystem::build(CoxeterMatrix::type_a(2)));
  const auto report = check_moufang(thin);
  EXPECT_FALSE(report.thick);
  EXPECT_FALSE(report.passed());
}

TEST(LabeledApartment, CircuitLabels) {
  for (const auto* cx : {&pg2_2(), &w2()}) {
    const auto sigma = first_apartment(*cx);
    const int n = sigma.n();
    EXPECT_EQ(n, cx == &w2() ? 4 : 3);
    for (int k = 1; k <= 2 * n; ++k) {
      // e_k lies on vertices k-1 and k.
      const int e = sigma.chamber(k);
      const auto a = sigma.vertex(k - 1), b = sigma.vertex(k);
      EXPECT_EQ(cx->panel_of(e, a.type), a);
      EXPECT_EQ(cx->panel_of(e, b.type), b);
      EXPECT_EQ(sigma.chamber(k + 2 * n), e);
    }
    EXPECT_EQ(sigma.interior(1).size(), static_cast<std::size_t>(n - 1));
    EXPECT_EQ(sigma.root(1).chambers.size(), static_cast<std::size_t>(n));
  }
}

TEST(Mu, UniqueAndReflecting) {
  const auto& c = pg2_3();
  const auto sigma = first_apartment(c);
  const auto U1 = root_group(c, sigma, 1);
  const auto opp = root_group(c, sigma, 4);
  for (const auto& u : U1) {
    if (is_identity(u)) continue;
    const auto m = mu_element(sigma, u, opp);
    EXPECT_EQ(m.matches, 1);
    EXPECT_TRUE(sigma.induces_reflection(m.mu));
    EXPECT_TRUE(is_automorphism(c, m.mu));
  }
}

TEST(Mu, Parametrization) {
  const auto& c = pg2_3();
  const auto sigma = first_apartment(c);
  const auto U1 = root_group(c, sigma, 1);
  const auto x = parametrize(sigma, U1, 1, 3);
  EXPECT_TRUE(is_identity(x[0]));
  EXPECT_EQ(compose(x[1], x[2]), x[0]);
  EXPECT_EQ(std::set<Permutation>(x.begin(), x.end()), std::set<Permutation>(U1.begin(), U1.end()));
  EXPECT_THROW(parametrize(sigma, U1, 1, 5), UnsupportedSpec);
}

TEST(Mu, FormulaOverPrimeFields) {
  for (const auto* cx : {&pg2_2(), &pg2_3(), &w2(), &w3()}) {
    const int q = cx->panel(cx->panel_of(0, 0)).size() - 1;
    const auto report = check_mu_formula(*cx, first_apartment(*cx), q);
    EXPECT_TRUE(report.passed()) << cx->provenance();
    for (const auto& f : report.failures) ADD_FAILURE() << f;
  }
}

TEST(Commutators, Planes) {
  for (const auto* cx : {&pg2_2(), &pg2_3()}) {
    const int q = cx->panel(cx->panel_of(0, 0)).size() - 1;
    const auto report = commutator_containment(*cx, first_apartment(*cx), q);
    EXPECT_TRUE(report.passed()) << cx->provenance();
    EXPECT_FALSE(report.quadrangle.attempted);
    for (const auto& chk : report.checks) EXPECT_TRUE(chk.holds) << chk.relation << " " << chk.detail;
  }
}

TEST(Commutators, QuadranglesFitAQuadraticForm) {
  for (const auto* cx : {&w2(), &w3()}) {
    const int q = cx->panel(cx->panel_of(0, 0)).size() - 1;
    const auto report = commutator_containment(*cx, first_apartment(*cx), q);
    for (const auto& chk : report.checks) EXPECT_TRUE(chk.holds) << chk.relation << " " << chk.detail;
    EXPECT_TRUE(report.quadrangle.attempted);
    EXPECT_TRUE(report.quadrangle.passed) << report.quadrangle.detail;
    ASSERT_EQ(report.quadrangle.form.size(), static_cast<std::size_t>(q));
    EXPECT_EQ(report.quadrangle.form[0], 0);
  }
}

TEST(Filtration, IndexIsResidueOrder) {
  for (const char* spec : {"Q5", "Qp:p=3,prec=10", "Laurent:q=3,prec=8", "Laurent:q=4,prec=8"}) {
    const auto F = Field::parse(spec);
    const auto levels = filtration_indices(F, -2, 4, 7);
    ASSERT_EQ(levels.size(), 6u);
    for (const auto& l : levels) {
      EXPECT_EQ(l.index, F.residue_order()) << spec << " k=" << l.k;
      EXPECT_TRUE(l.nested) << spec << " k=" << l.k;
    }
  }
  EXPECT_TRUE(filtration_indices(Field::parse("Q5"), 3, 3).empty());
  EXPECT_THROW(filtration_indices(Field::parse("F5"), 0, 1), InvalidSpec);
}
