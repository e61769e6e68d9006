#pragma once

#include <climits>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bldg/finite_field.hpp"

namespace bldg {

/// Valuation (and absolute precision) of an exact zero.
inline constexpr int kInfinity = INT_MAX;

enum class FieldKind { finite, padic, laurent };

/// Which field to build: F_q, Q_p to `precision` p-adic digits, or
/// F_q((t)) to `precision` coefficients. Precision is relative: the number
/// of significant digits carried by a nonzero element.
struct FieldSpec {
  FieldKind kind = FieldKind::finite;
  int q = 2;  // residue field size; equals p for Q_p
  int precision = 1;

  /// Grammar: `Fq:q=<n>` | `Qp:p=<prime>,prec=<n>` |
  /// `Laurent:q=<n>,prec=<n>`. The shorthands `F<q>` and `Q<p>` (precision
  /// 8) are accepted too. Throws ParseError.
  static FieldSpec parse(const std::string& text);
  std::string to_string() const;

  bool operator==(const FieldSpec&) const = default;
};

/// Element of a Field. A nonzero element is pi^valuation * (unit) where the
/// unit is known modulo pi^(prec - valuation). Zero has valuation
/// kInfinity; its `prec` records how well it is known (kInfinity when the
/// zero is exact). Finite-field elements are always exact.
struct FieldElement {
  std::uint64_t field_tag = 0;
  int valuation = kInfinity;
  int prec = kInfinity;
  std::int64_t unit = 0;    // F_q code, or p-adic unit mod p^(prec-valuation)
  std::vector<int> digits;  // Laurent coefficients from t^valuation upwards

  bool is_zero() const { return valuation == kInfinity; }
  bool is_exact() const { return prec == kInfinity; }
  int relative_precision() const { return is_zero() ? 0 : prec - valuation; }

  /// Representation equality (not equality to precision; see Field::equal).
  bool operator==(const FieldElement&) const = default;
};

struct FieldClassification {
  std::string tag;  // "finite", "laurent-series", "p-adic"
  int characteristic = 0;
  int residue_q = 0;
  bool local = false;
  std::string description;
};

/// Result of splitting an element of F_q((t)) along the basis
/// 1, t, ..., t^(p-1) of F over F^p.
struct FrobeniusDecomposition {
  std::vector<FieldElement> components;  // z = sum components[i]^p t^i
  bool reconstructs = false;
};

/// Arithmetic context for one of the coefficient fields. Cheap to copy;
/// copies share the same tables and compare equal.
class Field {
 public:
  /// Throws InvalidSpec for a non-prime p, a q that is not a prime power,
  /// or a precision that does not fit the internal word size.
  explicit Field(const FieldSpec& spec);
  static Field parse(const std::string& spec) { return Field(FieldSpec::parse(spec)); }

  const FieldSpec& spec() const;
  FieldKind kind() const { return spec().kind; }
  int characteristic() const;
  int residue_order() const { return spec().q; }
  int precision() const { return spec().precision; }
  std::uint64_t tag() const;
  const FiniteField& residue_field() const;
  std::string name() const { return spec().to_string(); }

  bool operator==(const Field& o) const { return tag() == o.tag(); }

  FieldElement zero() const;
  FieldElement one() const;
  /// p or t. Throws InvalidSpec for a finite field.
  FieldElement uniformizer() const;
  FieldElement from_integer(long long n) const;
  /// num/den for Q_p and (via the prime subfield) the other kinds.
  FieldElement from_rational(long long num, long long den) const;
  /// A finite-field code (only meaningful for kind finite).
  FieldElement from_code(int code) const;
  /// pi^valuation * sum digits[i] pi^i with digits in the residue
  /// representatives (0..p-1 for Q_p, F_q codes otherwise). Leading zero
  /// digits are absorbed; the result is truncated to the field precision.
  FieldElement from_digits(int valuation, std::span<const int> digits) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  /// DivisionByZero on an exact zero, PrecisionExhausted on a zero that
  /// is only known to finite precision.
  FieldElement inv(const FieldElement& a) const;
  FieldElement div(const FieldElement& a, const FieldElement& b) const;
  FieldElement pow(const FieldElement& a, long long k) const;

  /// a with its absolute precision capped at abs_prec.
  FieldElement truncate(const FieldElement& a, int abs_prec) const;

  int valuation(const FieldElement& a) const;
  /// a - b vanishes to the available precision.
  bool equal(const FieldElement& a, const FieldElement& b) const;
  /// Image in the residue field; requires valuation(a) >= 0.
  int residue(const FieldElement& a) const;
  /// Digits of a at exponents [from, to), with the residue representatives
  /// of from_digits. Throws PrecisionExhausted if any are unknown.
  std::vector<int> expansion(const FieldElement& a, int from, int to) const;

  /// x -> x^p in characteristic p.
  FieldElement frobenius(const FieldElement& a) const;
  /// The unique y with y^p = a. Throws FrobeniusNotInvertible in
  /// characteristic 0 or when a is not a p-th power.
  FieldElement frobenius_root(const FieldElement& a) const;
  /// Splits a Laurent-series element along 1, t, ..., t^(p-1).
  FrobeniusDecomposition frobenius_decompose(const FieldElement& a) const;

  /// Nonzero element with valuation in [min_val, max_val] and a full
  /// window of random digits.
  FieldElement random_nonzero(std::mt19937_64& rng, int min_val, int max_val) const;
  /// Like random_nonzero but returns zero with probability 1/(q+1).
  FieldElement random_element(std::mt19937_64& rng, int min_val, int max_val) const;

  /// Literal syntax: finite `<code>` or `g^<k>`; p-adic `<int>` or
  /// `<int>/<int>`; Laurent a sum of terms `c`, `t^k`, `c*t^k`, `ct^k`
  /// (coefficients are F_q codes, signs allowed). Throws ParseError.
  FieldElement parse_element(const std::string& literal) const;
  std::string format(const FieldElement& a) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;

  void check(const FieldElement& a) const;
  FieldElement make_zero(int prec) const;
};

FieldClassification classify(const FieldSpec& spec);

}  // namespace bldg
