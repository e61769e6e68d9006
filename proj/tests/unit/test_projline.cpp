#include <gtest/gtest.h>

#include <random>

#include "bldg/errors.hpp"
#include "bldg/projline.hpp"

using namespace bldg;

namespace {

Field finite(int q) { return Field(FieldSpec{FieldKind::finite, q, 1}); }

std::vector<Field> oracle_fields() {
  return {finite(5),
          finite(7),
          finite(4),
          finite(8),
          finite(9),
          Field(FieldSpec{FieldKind::padic, 3, 8}),
          Field(FieldSpec{FieldKind::padic, 5, 6}),
          Field(FieldSpec{FieldKind::padic, 2, 16}),
          Field(FieldSpec{FieldKind::laurent, 3, 8}),
          Field(FieldSpec{FieldKind::laurent, 2, 8}),
          Field(FieldSpec{FieldKind::laurent, 4, 6})};
}

}  // namespace

TEST(ProjectiveLine, Conventions) {
  const ProjectiveLine line(finite(5));
  const auto& f = line.field();
  const auto inf = ProjPoint::infinity();
  EXPECT_TRUE(line.iota(line.point(f.zero())).at_infinity);
  EXPECT_TRUE(line.same(line.invert(inf), line.point(f.zero())));
  EXPECT_TRUE(line.add(line.point(f.from_integer(3)), inf).at_infinity);
  EXPECT_TRUE(line.add(inf, inf).at_infinity);
  EXPECT_TRUE(line.neg(inf).at_infinity);
  EXPECT_TRUE(line.same(line.iota(line.point(f.from_integer(2))), line.point(f.from_integer(2))));

  const LineGenerator word[] = {LineGenerator::translation(f.from_integer(4))};
  EXPECT_TRUE(line.apply(word, inf).at_infinity);
}

TEST(ProjectiveLine, ParseAndFormat) {
  const ProjectiveLine line(finite(7));
  EXPECT_TRUE(line.parse_point("inf").at_infinity);
  EXPECT_EQ(line.format(ProjPoint::infinity()), "inf");
  EXPECT_TRUE(line.same(line.parse_point("3"), line.point(line.field().from_integer(3))));
}

TEST(ProjectiveLine, GeneratorRelations) {
  const ProjectiveLine line(finite(7));
  const auto& f = line.field();
  std::vector<ProjPoint> points{ProjPoint::infinity()};
  for (int c = 0; c < 7; ++c) points.push_back(line.point(f.from_code(c)));
  for (const auto& x : points) {
    EXPECT_TRUE(line.same(line.iota(line.iota(x)), x));
    for (int a = 0; a < 7; ++a) {
      for (int b = 0; b < 7; ++b) {
        const LineGenerator two[] = {LineGenerator::translation(f.from_code(b)),
                                     LineGenerator::translation(f.from_code(a))};
        const LineGenerator one[] = {
            LineGenerator::translation(f.add(f.from_code(a), f.from_code(b)))};
        EXPECT_TRUE(line.same(line.apply(two, x), line.apply(one, x)));
      }
    }
  }
}

TEST(ProjectiveLine, HuaExamples) {
  const ProjectiveLine line(finite(5));
  const auto& f = line.field();
  auto pt = [&](int n) { return line.point(f.from_integer(n)); };
  EXPECT_TRUE(line.same(line.hua_triple_product(pt(2), pt(3)), pt(2)));
  EXPECT_TRUE(line.same(line.hua_triple_product(pt(1), pt(-1)), pt(-1)));
  for (int x = 0; x < 5; ++x) EXPECT_TRUE(line.same(line.hua_triple_product(pt(x), pt(0)), pt(0)));
}

// The identity must hold for every pair in F_5, including xy = 0 and
// xy = -1 where intermediate values pass through infinity.
TEST(ProjectiveLine, HuaExhaustiveF5) {
  const ProjectiveLine line(finite(5));
  const auto& f = line.field();
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      const auto fx = f.from_code(x), fy = f.from_code(y);
      const auto got = line.hua_triple_product(line.point(fx), line.point(fy));
      ASSERT_FALSE(got.at_infinity) << x << "," << y;
      EXPECT_TRUE(f.equal(got.value, f.mul(f.mul(fx, fy), fx))) << x << "," << y;
    }
  }
}

TEST(ProjectiveLine, SquareExamples) {
  const ProjectiveLine line(finite(7));
  const auto& f = line.field();
  EXPECT_TRUE(line.same(line.recover_square(line.point(f.from_integer(3))),
                        line.point(f.from_integer(2))));
  EXPECT_TRUE(line.recover_square(ProjPoint::infinity()).at_infinity);
  EXPECT_TRUE(line.same(line.recover_square(line.point(f.zero())), line.point(f.zero())));
}

TEST(ProjectiveLine, MultiplicationExamples) {
  const ProjectiveLine f7(finite(7));
  const auto& k7 = f7.field();
  EXPECT_TRUE(k7.equal(f7.recover_multiplication(k7.from_integer(3), k7.from_integer(5)), k7.one()));

  const ProjectiveLine f4(finite(4));
  const auto& k4 = f4.field();
  const auto omega = k4.from_code(2);
  EXPECT_TRUE(k4.equal(f4.recover_multiplication(omega, omega), k4.from_code(3)));

  for (const auto& field : oracle_fields()) {
    const ProjectiveLine line(field);
    std::mt19937_64 rng(1);
    const auto y = field.random_nonzero(rng, 0, 0);
    EXPECT_TRUE(field.equal(line.recover_multiplication(field.one(), y), y)) << field.name();
  }
}

TEST(ProjectiveLine, Char2RootFailsOffSquares) {
  // In F_2((t)) the root exists only for elements supported on even
  // exponents; x y^2 x always is, so this exercises the direct root.
  const Field l(FieldSpec{FieldKind::laurent, 2, 8});
  EXPECT_THROW(l.frobenius_root(l.uniformizer()), FrobeniusNotInvertible);
}

TEST(ProjectiveLineProperties, OracleEquivalence) {
  std::mt19937_64 rng(20240601);
  for (const auto& field : oracle_fields()) {
    const ProjectiveLine line(field);
    const bool fin = field.kind() == FieldKind::finite;
    for (int k = 0; k < 200; ++k) {
      const auto x = field.random_element(rng, fin ? 0 : -2, fin ? 0 : 2);
      const auto y = field.random_element(rng, fin ? 0 : -2, fin ? 0 : 2);
      const auto want = field.mul(x, y);
      const auto got = line.recover_multiplication(x, y);
      EXPECT_TRUE(field.equal(got, want))
          << field.name() << " x=" << field.format(x) << " y=" << field.format(y);
      // No precision may be lost relative to the native product.
      if (!want.is_zero()) EXPECT_GE(got.prec, want.prec) << field.name();

      const auto h = line.hua_triple_product(line.point(x), line.point(y));
      ASSERT_FALSE(h.at_infinity) << field.name();
      const auto xyx = field.mul(want, x);
      EXPECT_TRUE(field.equal(h.value, xyx))
          << field.name() << " x=" << field.format(x) << " y=" << field.format(y);
      if (!xyx.is_zero()) EXPECT_GE(h.value.prec, xyx.prec) << field.name();
    }
  }
}

TEST(ProjectiveLineProperties, Char2CenterTest) {
  for (int q : {2, 4, 8}) {
    const ProjectiveLine line(finite(q));
    const auto& f = line.field();
    std::vector<FieldElement> probes;
    for (int c = 0; c < q; ++c) probes.push_back(f.from_code(c));
    for (int c = 0; c < q; ++c) EXPECT_TRUE(line.squares_additive_at(f.from_code(c), probes));
  }
  // Odd characteristic: only x = 0 is central in this sense.
  const ProjectiveLine line(finite(5));
  const auto& f = line.field();
  std::vector<FieldElement> probes;
  for (int c = 0; c < 5; ++c) probes.push_back(f.from_code(c));
  EXPECT_TRUE(line.squares_additive_at(f.zero(), probes));
  EXPECT_FALSE(line.squares_additive_at(f.one(), probes));
}

// Ultrametric Lipschitz check for squaring on integral points:
// nu(x^2 - x'^2) >= nu(x - x').
TEST(ProjectiveLineProperties, SquaringIsLipschitz) {
  std::mt19937_64 rng(77);
  for (const auto& field : {Field(FieldSpec{FieldKind::padic, 5, 8}),
                            Field(FieldSpec{FieldKind::laurent, 3, 8})}) {
    const ProjectiveLine line(field);
    for (int k = 0; k < 200; ++k) {
      const auto x = field.random_nonzero(rng, 0, 2);
      const auto dx = field.random_nonzero(rng, 1, 5);
      const auto x2 = field.add(x, dx);
      const auto s1 = line.recover_square(line.point(x));
      const auto s2 = line.recover_square(line.point(x2));
      const auto diff = field.sub(s1.value, s2.value);
      EXPECT_GE(field.valuation(diff), field.valuation(dx)) << field.name();
    }
  }
}
