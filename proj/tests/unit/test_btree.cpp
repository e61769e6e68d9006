#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "bldg/btree.hpp"
#include "bldg/errors.hpp"

using namespace bldg;

namespace bldg {
void PrintTo(const LatticeVertex& v, std::ostream* os) { *os << v.to_string(); }
}  // namespace bldg

namespace {

// Membership oracle: (u1, u2) lies in the lattice with basis columns
// (pi^a, b), (0, 1) iff v(u2) >= 0 and v(u1 - u2 b) >= a.
bool contains(const Field& F, const LatticeVertex& L, const FieldElement& u1, const FieldElement& u2) {
  auto val = [&](const FieldElement& e) { return e.is_zero() ? kInfinity : F.valuation(e); };
  if (val(u2) < 0) return false;
  return val(F.sub(u1, F.mul(u2, L.b(F)))) >= L.a;
}

// Independent ball oracle: all (a, b) with b a digit string below a, kept
// when the elementary-divisor distance is at most r.
std::set<LatticeVertex> brute_ball(int q, int r) {
  std::set<LatticeVertex> out;
  for (int a = -r; a <= r; ++a) {
    out.insert({a, a, {}});
    // Nonzero b with digits at exponents low..high, both ends nonzero.
    for (int low = -r; low < a; ++low) {
      for (int high = low; high < a; ++high) {
        const int len = high - low + 1;
        long long total = 1;
        for (int i = 0; i < len; ++i) total *= q;
        for (long long code = 0; code < total; ++code) {
          std::vector<int> digits;
          long long c = code;
          for (int i = 0; i < len; ++i, c /= q) digits.push_back(static_cast<int>(c % q));
          if (digits.front() == 0 || digits.back() == 0) continue;
          // Elementary divisors of (pi^a, b; 0, 1): min(a, v(b), 0) and a - min.
          const int m = std::min({a, low, 0});
          if (a - 2 * m <= r) out.insert({a, low, digits});
        }
      }
    }
  }
  std::erase_if(out, [&](const LatticeVertex& v) { return v.a - 2 * std::min({v.a, v.b_valuation(), 0}) > r; });
  return out;
}

BoundaryPoint point(const Field& F, long long num, long long den = 1) {
  return BoundaryPoint::make(F, F.from_rational(num, den), F.one());
}

BoundaryPoint point_at_infinity(const Field& F, const FieldElement& y) {
  return BoundaryPoint::make(F, F.one(), y);
}

}  // namespace

TEST(TreeBall, SpecExamples) {
  const Field Q2 = Field::parse("Q2");
  EXPECT_EQ(build_tree_ball(Q2, 2).vertices.size(), 10u);
  EXPECT_EQ(build_tree_ball(Q2, 0).vertices.size(), 1u);
  EXPECT_EQ(build_tree_ball(Field::parse("Q3"), 1).vertices.size(), 5u);
  EXPECT_THROW(build_tree_ball(Field::parse("Qp:p=2,prec=3"), 4), PrecisionExhausted);
  EXPECT_THROW(build_tree_ball(Field::parse("F5"), 1), InvalidSpec);
}

TEST(TreeBall, SizesMatchFormulaAndEnumeration) {
  for (const char* spec : {"Q2", "Q3", "Laurent:q=2,prec=8", "Laurent:q=4,prec=8"}) {
    const Field F = Field::parse(spec);
    const int q = F.residue_order();
    for (int r = 0; r <= 4; ++r) {
      if (q == 4 && r > 3) break;
      const auto ball = build_tree_ball(F, r);
      EXPECT_EQ(static_cast<long long>(ball.vertices.size()), ball_size(q, r)) << spec << " r=" << r;
      const std::set<LatticeVertex> got(ball.vertices.begin(), ball.vertices.end());
      const auto want = brute_ball(q, r);
      EXPECT_EQ(got.size(), want.size()) << spec << " r=" << r;
      EXPECT_EQ(got, want) << spec << " r=" << r;
    }
  }
}

TEST(TreeBall, TreeAndDegreeLaws) {
  const Field F = Field::parse("Q3");
  const auto ball = build_tree_ball(F, 4);
  EXPECT_EQ(ball.edges.size() + 1, ball.vertices.size());
  std::vector<int> degree(ball.vertices.size(), 0);
  for (const auto& [a, b] : ball.edges) {
    ++degree[a];
    ++degree[b];
    EXPECT_TRUE(adjacent(ball.vertices[a], ball.vertices[b], 3));
    EXPECT_TRUE(adjacent(ball.vertices[b], ball.vertices[a], 3));
  }
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    EXPECT_EQ(distance_from_base(ball.vertices[i]), ball.depth[i]);
    EXPECT_EQ(degree[i], ball.depth[i] < 4 ? 4 : 1);
  }
  const std::string dot = ball.to_dot();
  EXPECT_NE(dot.find("graph tree"), std::string::npos);
  EXPECT_NE(dot.find("v0 -- v1"), std::string::npos);
}

TEST(TreeBall, DistancesAreMetric) {
  const Field F = Field::parse("Q2");
  const auto ball = build_tree_ball(F, 3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, ball.vertices.size() - 1);
  for (int s = 0; s < 300; ++s) {
    const auto& u = ball.vertices[pick(rng)];
    const auto& v = ball.vertices[pick(rng)];
    const auto& w = ball.vertices[pick(rng)];
    EXPECT_EQ(tree_distance(u, v, 2), tree_distance(v, u, 2));
    EXPECT_EQ(tree_distance(u, u, 2), 0);
    EXPECT_LE(tree_distance(u, w, 2), tree_distance(u, v, 2) + tree_distance(v, w, 2));
    EXPECT_EQ(tree_distance(u, LatticeVertex::base(), 2), distance_from_base(u));
  }
  EXPECT_THROW(parent(LatticeVertex::base(), 2), std::invalid_argument);
}

TEST(Rays, SpecExamples) {
  const Field Q2 = Field::parse("Q2");
  // (1 : 0) runs through (-a, 0); (0 : 1) through (a, 0).
  const auto inf = ray_to_end(Q2, point_at_infinity(Q2, Q2.zero()), 3);
  const auto origin = ray_to_end(Q2, point(Q2, 0), 3);
  ASSERT_EQ(inf.size(), 4u);
  for (int a = 0; a <= 3; ++a) {
    EXPECT_EQ(inf[a], (LatticeVertex{-a, -a, {}}));
    EXPECT_EQ(origin[a], (LatticeVertex{a, a, {}}));
  }
  EXPECT_EQ(ray_to_end(Q2, point(Q2, 5), 0), std::vector<LatticeVertex>{LatticeVertex::base()});
  const auto other = ray_to_end(Q2, point(Q2, 2), 3);
  EXPECT_EQ(other[1], origin[1]);
  EXPECT_NE(other[2], origin[2]);
  EXPECT_THROW(ray_to_end(Field::parse("Qp:p=2,prec=3"), point(Q2, 0), 4), PrecisionExhausted);
}

TEST(Rays, ContainLineAndArePrimitive) {
  for (const char* spec : {"Q3", "Laurent:q=3,prec=8", "Q2"}) {
    const Field F = Field::parse(spec);
    std::mt19937_64 rng(11);
    for (int s = 0; s < 60; ++s) {
      const auto u = F.random_element(rng, -2, 3);
      const auto v = F.random_nonzero(rng, -2, 3);
      const auto end = s % 2 ? BoundaryPoint::make(F, u, v) : BoundaryPoint::make(F, v, u);
      const auto ray = ray_to_end(F, end, 5);
      const auto [x1, x2] = end.vector(F);
      for (int k = 0; k <= 5; ++k) {
        EXPECT_EQ(distance_from_base(ray[k]), k) << spec;
        if (k > 0) EXPECT_TRUE(adjacent(ray[k - 1], ray[k], F.residue_order()));
        // The representative contains the primitive vector of the end.
        EXPECT_TRUE(contains(F, ray[k], x1, x2)) << spec << " k=" << k;
      }
    }
  }
}

TEST(Cone, SpecExamples) {
  const Field Q2 = Field::parse("Q2");
  const auto c = cone_vs_ultrametric(Q2, point(Q2, 0), point(Q2, 1), 5);
  EXPECT_EQ(c.agreement, 0);
  EXPECT_EQ(c.valuation_distance, 0);
  EXPECT_TRUE(c.consistent);
  for (int m = 1; m <= 4; ++m) {
    const auto r = cone_vs_ultrametric(Q2, point(Q2, 0), point(Q2, 1LL << m), 6);
    EXPECT_EQ(r.agreement, m);
    EXPECT_EQ(r.valuation_distance, m);
    const auto s = cone_vs_ultrametric(Q2, point(Q2, 1LL << m), point(Q2, 0), 6);
    EXPECT_EQ(s.agreement, r.agreement);
    EXPECT_EQ(s.valuation_distance, r.valuation_distance);
  }
  EXPECT_THROW(cone_vs_ultrametric(Q2, point(Q2, 3), point(Q2, 3), 4), InvalidSpec);
}

TEST(Cone, CalibratedOffsetOnAllResidueEnds) {
  // Brute force: every pair of ends with digits below the depth, in both
  // charts, compared by ray prefix against v(det).
  for (const char* spec : {"Q2", "Q3", "Laurent:q=2,prec=8"}) {
    const Field F = Field::parse(spec);
    const int q = F.residue_order();
    const int D = 3;
    std::vector<BoundaryPoint> ends;
    long long total = 1;
    for (int i = 0; i < D; ++i) total *= q;
    for (long long code = 0; code < total; ++code) {
      std::vector<int> digits;
      for (long long c = code, i = 0; i < D; ++i, c /= q) digits.push_back(static_cast<int>(c % q));
      const bool zero = std::all_of(digits.begin(), digits.end(), [](int d) { return d == 0; });
      const auto x = zero ? F.zero() : F.from_digits(0, digits);
      ends.push_back(BoundaryPoint::make(F, x, F.one()));
      if (digits[0] == 0) ends.push_back(BoundaryPoint::make(F, F.one(), x));
    }
    EXPECT_EQ(ends.size(), static_cast<std::size_t>(total + total / q));
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        const auto r = cone_vs_ultrametric(F, ends[i], ends[j], D + 1);
        EXPECT_TRUE(r.consistent) << spec << " " << ends[i].to_string(F) << " " << ends[j].to_string(F);
        EXPECT_LT(r.agreement, D);
      }
  }
}

TEST(Iwasawa, SpecExamples) {
  const Field Q5 = Field::parse("Q5");
  const auto zero = Q5.zero(), one = Q5.one(), p = Q5.uniformizer();
  const Matrix2 diag{{{Q5.inv(p), zero}, {zero, p}}};
  const auto f = iwasawa_decompose(Q5, diag);
  EXPECT_TRUE(equal(Q5, f.k, Matrix2{{{one, zero}, {zero, one}}}));
  EXPECT_TRUE(equal(Q5, f.b, diag));
  const Matrix2 rot{{{zero, Q5.neg(one)}, {one, zero}}};
  const auto g = iwasawa_decompose(Q5, rot);
  EXPECT_TRUE(equal(Q5, g.k, rot));
  EXPECT_TRUE(equal(Q5, g.b, Matrix2{{{one, zero}, {zero, one}}}));
  EXPECT_THROW(iwasawa_decompose(Q5, Matrix2{{{p, zero}, {zero, p}}}), InvalidSpec);
}

TEST(Iwasawa, RandomMultiplyBack) {
  for (const char* spec : {"Q5", "Q2", "Laurent:q=3,prec=8", "Laurent:q=4,prec=8"}) {
    const Field F = Field::parse(spec);
    std::mt19937_64 rng(1);
    for (int s = 0; s < 1000; ++s) {
      const auto g = random_sl2(F, rng);
      ASSERT_TRUE(F.equal(determinant(F, g), F.one()));
      const auto f = iwasawa_decompose(F, g);
      EXPECT_TRUE(equal(F, multiply(F, f.k, f.b), g)) << spec;
      EXPECT_TRUE(in_base_stabilizer(F, f.k)) << spec;
      EXPECT_TRUE(f.b.m[1][0].is_zero());
      EXPECT_TRUE(F.equal(determinant(F, f.b), F.one()));
    }
  }
}

TEST(Boundary, TransitivityAndClassCounts) {
  EXPECT_EQ(boundary_transitivity_check(Field::parse("Q2"), 2).classes, 6);
  EXPECT_EQ(boundary_transitivity_check(Field::parse("Q3"), 1).classes, 4);
  for (const char* spec : {"Q2", "Q3", "Q5", "Laurent:q=2,prec=8", "Laurent:q=4,prec=8"}) {
    const Field F = Field::parse(spec);
    for (int d = 1; d <= 4; ++d) {
      if (F.residue_order() == 4 && d > 3) break;
      const auto r = boundary_transitivity_check(F, d);
      EXPECT_TRUE(r.passed()) << spec << " depth " << d;
      EXPECT_EQ(r.orbits, 1);
      EXPECT_TRUE(r.identity_fixes_all);
    }
  }
  EXPECT_THROW(boundary_transitivity_check(Field::parse("Q2"), 0), InvalidSpec);
  EXPECT_THROW(boundary_transitivity_check(Field::parse("Qp:p=2,prec=3"), 4), PrecisionExhausted);
}
