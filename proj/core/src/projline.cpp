#include "bldg/projline.hpp"

#include <algorithm>
#include <cstdlib>

#include "bldg/errors.hpp"

namespace bldg {

ProjPoint ProjectiveLine::parse_point(const std::string& literal) const {
  if (literal == "inf" || literal == "oo" || literal == "∞") return ProjPoint::infinity();
  return point(field_.parse_element(literal));
}

std::string ProjectiveLine::format(const ProjPoint& x) const {
  return x.at_infinity ? "inf" : field_.format(x.value);
}

ProjPoint ProjectiveLine::add(const ProjPoint& x, const ProjPoint& y) const {
  if (x.at_infinity || y.at_infinity) return ProjPoint::infinity();
  return point(field_.add(x.value, y.value));
}

ProjPoint ProjectiveLine::neg(const ProjPoint& x) const {
  if (x.at_infinity) return x;
  return point(field_.neg(x.value));
}

ProjPoint ProjectiveLine::invert(const ProjPoint& x) const {
  if (x.at_infinity) return point(field_.zero());
  if (x.value.is_zero()) return ProjPoint::infinity();
  return point(field_.inv(x.value));
}

ProjPoint ProjectiveLine::iota(const ProjPoint& x) const { return neg(invert(x)); }

ProjPoint ProjectiveLine::apply(std::span<const LineGenerator> word,
                                const ProjPoint& x) const {
  ProjPoint y = x;
  for (const auto& g : word) {
    if (g.kind == LineGenerator::Kind::translation)
      y = add(point(g.shift), y);
    else
      y = iota(y);
  }
  return y;
}

namespace {

// Lower bound for the valuation: the precision of an inexact zero.
int valuation_floor(const FieldElement& a) { return a.is_zero() ? a.prec : a.valuation; }

int saturating_add(int a, int b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

// Copy of `field` carrying `guard` extra digits, within the word-size limit
// for Q_p.
Field widened(const Field& field, int guard) {
  FieldSpec spec = field.spec();
  int target = spec.precision + guard;
  if (spec.kind == FieldKind::padic) {
    long double pn = 1;
    int cap = 0;
    while (pn * spec.q < 4.0e18L) {
      pn *= spec.q;
      ++cap;
    }
    target = std::min(target, cap);
  }
  spec.precision = std::max(spec.precision, target);
  return Field(spec);
}

FieldElement lift(const Field& from, const Field& to, const FieldElement& a) {
  if (a.is_zero()) return a.is_exact() ? to.zero() : to.truncate(to.zero(), a.prec);
  return to.from_digits(a.valuation, from.expansion(a, a.valuation, a.prec));
}

// Cuts `a` back into `to`, keeping at most `abs_prec` digits.
FieldElement lower(const Field& from, const Field& to, const FieldElement& a, int abs_prec) {
  const int prec = std::min(abs_prec, a.prec);
  if (a.is_zero() || prec <= a.valuation)
    return prec == kInfinity ? to.zero() : to.truncate(to.zero(), prec);
  const int top = std::min(prec, a.valuation + to.precision());
  return to.truncate(to.from_digits(a.valuation, from.expansion(a, a.valuation, top)), prec);
}

int guard_digits(std::initializer_list<FieldElement> args) {
  int g = 4;
  for (const auto& a : args)
    if (!a.is_zero()) g += 4 * std::abs(a.valuation);
  return g;
}

}  // namespace

ProjPoint ProjectiveLine::hua_raw(const ProjPoint& x, const ProjPoint& y) const {
  const ProjPoint inner = invert(add(x, invert(y)));
  return sub(invert(sub(invert(x), inner)), x);
}

ProjPoint ProjectiveLine::hua_triple_product(const ProjPoint& x, const ProjPoint& y) const {
  if (field_.kind() == FieldKind::finite || x.at_infinity || y.at_infinity) return hua_raw(x, y);
  const Field wide = widened(field_, guard_digits({x.value, y.value}));
  const ProjectiveLine line(wide);
  const ProjPoint r = line.hua_raw(point(lift(field_, wide, x.value)),
                                   point(lift(field_, wide, y.value)));
  if (r.at_infinity) return r;
  const int vx = valuation_floor(x.value), vy = valuation_floor(y.value);
  const int owed = std::min(saturating_add(x.value.prec, saturating_add(vx, vy)),
                            saturating_add(y.value.prec, saturating_add(vx, vx)));
  return point(lower(wide, field_, r.value, owed));
}

ProjPoint ProjectiveLine::square_raw(const ProjPoint& x) const {
  if (x.at_infinity) return x;
  if (!x.value.is_zero() && field_.valuation(x.value) < 0) {
    const ProjPoint ix = iota(x);
    return neg(iota(hua_raw(ix, point(field_.one()))));
  }
  return hua_raw(x, point(field_.one()));
}

ProjPoint ProjectiveLine::recover_square(const ProjPoint& x) const {
  if (field_.kind() == FieldKind::finite || x.at_infinity) return square_raw(x);
  const Field wide = widened(field_, guard_digits({x.value}));
  const ProjectiveLine line(wide);
  const ProjPoint r = line.square_raw(point(lift(field_, wide, x.value)));
  if (r.at_infinity) return r;
  const int owed = saturating_add(x.value.prec, valuation_floor(x.value));
  return point(lower(wide, field_, r.value, owed));
}

FieldElement ProjectiveLine::halve(const FieldElement& z) const {
  // Multiplier n with 2n == 1 modulo p (resp. p^precision in Q_p),
  // applied as a double-and-add chain.
  long long n = 0;
  const long long p = field_.residue_field().characteristic();
  // In Q_2 doubling is a bijection but not an additive chain away from 1.
  if (p == 2) return field_.div(z, field_.from_integer(2));
  if (field_.kind() == FieldKind::padic) {
    long long pn = 1;
    for (int i = 0; i < field_.precision(); ++i) pn *= p;
    n = (pn + 1) / 2;
  } else {
    n = (p + 1) / 2;
  }
  FieldElement acc = field_.zero();
  FieldElement base = z;
  while (n > 0) {
    if (n & 1) acc = field_.add(acc, base);
    n >>= 1;
    if (n) base = field_.add(base, base);
  }
  return acc;
}

FieldElement ProjectiveLine::multiply_raw(const FieldElement& x,
                                         const FieldElement& y) const {
  auto square = [&](const FieldElement& v) {
    const ProjPoint s = square_raw(point(v));
    if (s.at_infinity) throw PrecisionExhausted("square of a finite point at infinity");
    return s.value;
  };
  if (field_.characteristic() != 2) {
    const FieldElement twice =
        field_.sub(field_.sub(square(field_.add(x, y)), square(x)), square(y));
    return halve(twice);
  }
  const ProjPoint xy2x = hua_raw(point(x), point(square(y)));
  if (xy2x.at_infinity) throw PrecisionExhausted("x y^2 x landed at infinity");
  return field_.frobenius_root(xy2x.value);
}

FieldElement ProjectiveLine::recover_multiplication(const FieldElement& x,
                                                   const FieldElement& y) const {
  if (field_.kind() == FieldKind::finite) return multiply_raw(x, y);
  int guard = guard_digits({x, y});
  // The Frobenius root halves the absolute precision.
  if (field_.characteristic() == 2) guard = 2 * guard + field_.precision();
  const Field wide = widened(field_, guard);
  const ProjectiveLine line(wide);
  const FieldElement r = line.multiply_raw(lift(field_, wide, x), lift(field_, wide, y));
  const int owed = std::min(saturating_add(x.prec, valuation_floor(y)),
                            saturating_add(y.prec, valuation_floor(x)));
  return lower(wide, field_, r, owed);
}

bool ProjectiveLine::squares_additive_at(const FieldElement& x,
                                         std::span<const FieldElement> probes) const {
  for (const auto& y : probes) {
    const ProjPoint lhs = recover_square(point(field_.add(x, y)));
    const ProjPoint rhs = add(recover_square(point(x)), recover_square(point(y)));
    if (!same(lhs, rhs)) return false;
  }
  return true;
}

bool ProjectiveLine::same(const ProjPoint& x, const ProjPoint& y) const {
  if (x.at_infinity || y.at_infinity) return x.at_infinity && y.at_infinity;
  return field_.equal(x.value, y.value);
}

}  // namespace bldg
