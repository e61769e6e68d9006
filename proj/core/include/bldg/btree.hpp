#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bldg/field.hpp"

namespace bldg {

/// Class of the lattice spanned by the columns (pi^a, b) and (0, 1), with b
/// reduced modulo pi^a. b is kept as its digits at exponents
/// [b_low, b_low + size) in the residue representatives of
/// Field::from_digits; no digit reaches exponent a. Zero b has no digits
/// and b_low = a.
struct LatticeVertex {
  int a = 0;
  int b_low = 0;
  std::vector<int> b_digits;

  static LatticeVertex base() { return {}; }
  /// Builds (a, b mod pi^a) from a field element. PrecisionExhausted when
  /// b is not known modulo pi^a.
  static LatticeVertex make(const Field& field, int a, const FieldElement& b);

  /// Valuation of b, or a when b vanishes mod pi^a.
  int b_valuation() const { return b_digits.empty() ? a : b_low; }
  FieldElement b(const Field& field) const;
  std::string to_string() const;

  auto operator<=>(const LatticeVertex&) const = default;
};

/// Graph distance to the base vertex: a - 2 min(a, v(b), 0).
int distance_from_base(const LatticeVertex& v);
/// q+1 neighbours: (a-1, b mod pi^(a-1)) first, then (a+1, b + c pi^a) for
/// each residue digit c.
std::vector<LatticeVertex> neighbours(const LatticeVertex& v, int q);
bool adjacent(const LatticeVertex& u, const LatticeVertex& v, int q);
/// The neighbour closer to the base. Throws std::invalid_argument at the base.
LatticeVertex parent(const LatticeVertex& v, int q);
/// v, parent(v), ..., base.
std::vector<LatticeVertex> path_to_base(const LatticeVertex& v, int q);
int tree_distance(const LatticeVertex& u, const LatticeVertex& v, int q);

struct TreeBall {
  int q = 0;
  int radius = 0;
  std::vector<LatticeVertex> vertices;  // BFS order from the base
  std::vector<int> depth;
  std::vector<std::pair<int, int>> edges;

  int index_of(const LatticeVertex& v) const;  // -1 if absent
  std::string to_dot() const;
};

/// All vertices within `radius` of the base. Throws InvalidSpec for a
/// finite field and PrecisionExhausted when radius exceeds the precision.
TreeBall build_tree_ball(const Field& field, int radius);

/// 1 + (q+1)(q^r - 1)/(q - 1).
long long ball_size(int q, int radius);

/// An end of the tree, i.e. a point of P^1(F), normalized as (x : 1) with
/// v(x) >= 0 or (1 : x) with v(x) > 0.
struct BoundaryPoint {
  bool at_infinity = false;  // (1 : x)
  FieldElement x;

  /// Normalizes (u : v); throws InvalidSpec when both vanish.
  static BoundaryPoint make(const Field& field, const FieldElement& u, const FieldElement& v);
  /// The primitive vector (x, 1) or (1, x).
  std::pair<FieldElement, FieldElement> vector(const Field& field) const;
  std::string to_string(const Field& field) const;
};

/// Vertices 0..depth of the ray from the base toward the end: the classes
/// of O v + pi^k O^2 for the primitive vector v. For (x : 1) these are
/// (k, x mod pi^k); for (1 : x) with m = v(x) they are (-k, 0) while
/// k <= m and (k - 2m, 1/x mod pi^(k-2m)) afterwards.
std::vector<LatticeVertex> ray_to_end(const Field& field, const BoundaryPoint& end, int depth);

struct ConeComparison {
  int agreement = 0;           // index of the last shared ray vertex
  int valuation_distance = 0;  // v(det(v_x, v_y)) of the primitive vectors
  bool consistent = false;     // agreement == min(valuation_distance, depth)
};

/// Compares the rays toward two distinct ends up to `depth`.
ConeComparison cone_vs_ultrametric(const Field& field, const BoundaryPoint& x, const BoundaryPoint& y,
                                   int depth);

/// Row-major 2x2 matrix over a Field.
struct Matrix2 {
  FieldElement m[2][2];
};

Matrix2 multiply(const Field& field, const Matrix2& a, const Matrix2& b);
FieldElement determinant(const Field& field, const Matrix2& a);
bool equal(const Field& field, const Matrix2& a, const Matrix2& b);
/// All entries integral and the determinant a unit.
bool in_base_stabilizer(const Field& field, const Matrix2& k);

struct IwasawaFactors {
  Matrix2 k;  // in GL_2(O) with determinant 1
  Matrix2 b;  // upper triangular with determinant 1
};

/// g = k b, pivoting on the first-column entry of least valuation. Throws
/// InvalidSpec unless det g = 1 to precision; PrecisionExhausted when the
/// first column vanishes to precision.
IwasawaFactors iwasawa_decompose(const Field& field, const Matrix2& g);

/// Determinant-1 matrix: first column with valuations in [min_val, max_val],
/// one entry of the second column random and the other solved for.
Matrix2 random_sl2(const Field& field, std::mt19937_64& rng, int min_val = -2, int max_val = 3);

struct TransitivityReport {
  int depth = 0;
  long long classes = 0;
  long long expected_classes = 0;  // q^(depth-1) (q+1)
  int orbits = 0;
  int generators = 0;
  bool identity_fixes_all = false;
  bool passed() const { return classes == expected_classes && orbits == 1 && identity_fixes_all; }
};

/// Orbits of SL_2(O) on P^1(O / pi^depth), generated by the elementary
/// matrices with entries c pi^j (c a residue digit, j < depth) and
/// (0, -1; 1, 0).
TransitivityReport boundary_transitivity_check(const Field& field, int depth);

}  // namespace bldg
