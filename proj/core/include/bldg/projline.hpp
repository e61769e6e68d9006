#pragma once

#include <span>
#include <string>
#include <vector>

#include "bldg/field.hpp"

namespace bldg {

/// A point of F ∪ {∞}.
struct ProjPoint {
  bool at_infinity = false;
  FieldElement value;  // ignored at infinity

  static ProjPoint infinity() { return {true, {}}; }
  static ProjPoint finite(FieldElement v) { return {false, std::move(v)}; }
};

/// Generator of the little projective group: x -> a + x or x -> -x^{-1}.
struct LineGenerator {
  enum class Kind { translation, inversion };
  Kind kind = Kind::inversion;
  FieldElement shift;

  static LineGenerator translation(FieldElement a) { return {Kind::translation, std::move(a)}; }
  static LineGenerator inversion() { return {Kind::inversion, {}}; }
};

/// The projective line over a commutative field, with the extended
/// conventions -∞ = ∞, a + ∞ = ∞, 0^{-1} = ∞, ∞^{-1} = 0. Every operation
/// that touches ∞ goes through the four kernel functions add, neg, invert
/// and iota, so the conventions are applied in exactly one place.
///
/// A finite point whose value is zero to the available precision counts as
/// 0 for inversion.
class ProjectiveLine {
 public:
  explicit ProjectiveLine(Field field) : field_(std::move(field)) {}

  const Field& field() const { return field_; }

  ProjPoint point(const FieldElement& v) const { return ProjPoint::finite(v); }
  ProjPoint parse_point(const std::string& literal) const;
  std::string format(const ProjPoint& x) const;

  ProjPoint add(const ProjPoint& x, const ProjPoint& y) const;
  ProjPoint neg(const ProjPoint& x) const;
  ProjPoint invert(const ProjPoint& x) const;
  /// x -> -x^{-1}
  ProjPoint iota(const ProjPoint& x) const;
  ProjPoint sub(const ProjPoint& x, const ProjPoint& y) const { return add(x, neg(y)); }

  /// Applies the generators left to right.
  ProjPoint apply(std::span<const LineGenerator> word, const ProjPoint& x) const;

  /// x y x computed as (x^{-1} - (x + y^{-1})^{-1})^{-1} - x with the
  /// extended conventions, so that xy = 0 and xy = -1 need no special case.
  ProjPoint hua_triple_product(const ProjPoint& x, const ProjPoint& y) const;

  /// x^2 from the triple product: x·1·x on integral points, -ι(ι(x)^2) on
  /// points of negative valuation, ∞^2 = ∞.
  ProjPoint recover_square(const ProjPoint& x) const;

  /// xy from squares, translations and inversion only. In odd or zero
  /// characteristic: ((x+y)^2 - x^2 - y^2) halved by an addition chain. In
  /// characteristic 2: the Frobenius root of x·y^2·x. Throws
  /// FrobeniusNotInvertible when that root does not exist at the stored
  /// precision.
  FieldElement recover_multiplication(const FieldElement& x, const FieldElement& y) const;

  /// (x+y)^2 == x^2 + y^2 for every y in `probes`, with squares recovered
  /// through the triple product.
  bool squares_additive_at(const FieldElement& x, std::span<const FieldElement> probes) const;

  /// Equality on P, to the available precision for finite points.
  bool same(const ProjPoint& x, const ProjPoint& y) const;

 private:
  // The identities above cancel leading digits in a truncated field, so
  // the public entry points evaluate them on a copy of the field with
  // guard digits and cut the result back to the precision it is owed.
  ProjPoint hua_raw(const ProjPoint& x, const ProjPoint& y) const;
  ProjPoint square_raw(const ProjPoint& x) const;
  FieldElement multiply_raw(const FieldElement& x, const FieldElement& y) const;
  FieldElement halve(const FieldElement& z) const;

  Field field_;
};

}  // namespace bldg
