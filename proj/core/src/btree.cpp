#include "bldg/btree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bldg/errors.hpp"

namespace bldg {

namespace {

void require_local(const Field& field) {
  if (field.kind() == FieldKind::finite) throw InvalidSpec("the tree needs a local field, got " + field.name());
}

void require_depth(const Field& field, int depth, const char* what) {
  if (depth < 0) throw InvalidSpec(std::string(what) + " must be non-negative");
  if (depth > field.precision())
    throw PrecisionExhausted(std::string(what) + " " + std::to_string(depth) + " exceeds precision " +
                             std::to_string(field.precision()));
}

// Drops leading and trailing zero digits.
void normalize(LatticeVertex& v) {
  auto& d = v.b_digits;
  while (!d.empty() && d.back() == 0) d.pop_back();
  std::size_t lead = 0;
  while (lead < d.size() && d[lead] == 0) ++lead;
  d.erase(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(lead));
  v.b_low = d.empty() ? v.a : v.b_low + static_cast<int>(lead);
}

}  // namespace

LatticeVertex LatticeVertex::make(const Field& field, int a, const FieldElement& b) {
  LatticeVertex v;
  v.a = a;
  v.b_low = a;
  if (b.is_zero()) {
    if (!b.is_exact() && b.prec < a) throw PrecisionExhausted("b is not known modulo pi^" + std::to_string(a));
    return v;
  }
  const int low = field.valuation(b);
  if (low >= a) return v;
  v.b_low = low;
  v.b_digits = field.expansion(b, low, a);
  normalize(v);
  return v;
}

FieldElement LatticeVertex::b(const Field& field) const {
  if (b_digits.empty()) return field.zero();
  return field.from_digits(b_low, b_digits);
}

std::string LatticeVertex::to_string() const {
  std::ostringstream out;
  out << "(a=" << a << ", b=";
  if (b_digits.empty()) {
    out << "0)";
    return out.str();
  }
  out << "[";
  for (std::size_t i = 0; i < b_digits.size(); ++i) out << (i ? " " : "") << b_digits[i];
  out << "]@" << b_low << ")";
  return out.str();
}

int distance_from_base(const LatticeVertex& v) { return v.a - 2 * std::min({v.a, v.b_valuation(), 0}); }

std::vector<LatticeVertex> neighbours(const LatticeVertex& v, int q) {
  std::vector<LatticeVertex> out;
  LatticeVertex down = v;
  --down.a;
  if (!down.b_digits.empty() && down.b_low + static_cast<int>(down.b_digits.size()) > down.a)
    down.b_digits.pop_back();
  normalize(down);
  out.push_back(std::move(down));
  for (int c = 0; c < q; ++c) {
    LatticeVertex up = v;
    ++up.a;
    if (c != 0) {
      if (up.b_digits.empty()) up.b_low = v.a;
      up.b_digits.resize(static_cast<std::size_t>(v.a - up.b_low), 0);
      up.b_digits.push_back(c);
    }
    normalize(up);
    out.push_back(std::move(up));
  }
  return out;
}

bool adjacent(const LatticeVertex& u, const LatticeVertex& v, int q) {
  const auto n = neighbours(u, q);
  return std::find(n.begin(), n.end(), v) != n.end();
}

LatticeVertex parent(const LatticeVertex& v, int q) {
  const int d = distance_from_base(v);
  if (d == 0) throw std::invalid_argument("the base vertex has no parent");
  for (auto& n : neighbours(v, q))
    if (distance_from_base(n) == d - 1) return n;
  throw std::logic_error("no neighbour closer to the base");
}

std::vector<LatticeVertex> path_to_base(const LatticeVertex& v, int q) {
  std::vector<LatticeVertex> path{v};
  while (distance_from_base(path.back()) > 0) path.push_back(parent(path.back(), q));
  return path;
}

int tree_distance(const LatticeVertex& u, const LatticeVertex& v, int q) {
  auto pu = path_to_base(u, q);
  auto pv = path_to_base(v, q);
  std::reverse(pu.begin(), pu.end());
  std::reverse(pv.begin(), pv.end());
  std::size_t common = 0;
  while (common < pu.size() && common < pv.size() && pu[common] == pv[common]) ++common;
  return static_cast<int>(pu.size() + pv.size() - 2 * common);
}

int TreeBall::index_of(const LatticeVertex& v) const {
  const auto it = std::find(vertices.begin(), vertices.end(), v);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

std::string TreeBall::to_dot() const {
  std::ostringstream out;
  out << "graph tree {\n";
  for (std::size_t i = 0; i < vertices.size(); ++i)
    out << "  v" << i << " [label=\"" << vertices[i].to_string() << "\"];\n";
  for (const auto& [a, b] : edges) out << "  v" << a << " -- v" << b << ";\n";
  out << "}\n";
  return out.str();
}

TreeBall build_tree_ball(const Field& field, int radius) {
  require_local(field);
  require_depth(field, radius, "radius");
  TreeBall ball;
  ball.q = field.residue_order();
  ball.radius = radius;
  std::map<LatticeVertex, int> index;
  ball.vertices.push_back(LatticeVertex::base());
  ball.depth.push_back(0);
  index[ball.vertices[0]] = 0;
  for (std::size_t k = 0; k < ball.vertices.size(); ++k) {
    if (ball.depth[k] == radius) continue;
    const auto around = neighbours(ball.vertices[k], ball.q);
    for (const auto& n : around) {
      if (index.count(n)) continue;
      const int id = static_cast<int>(ball.vertices.size());
      index[n] = id;
      ball.vertices.push_back(n);
      ball.depth.push_back(ball.depth[k] + 1);
      ball.edges.emplace_back(static_cast<int>(k), id);
    }
  }
  return ball;
}

long long ball_size(int q, int radius) {
  long long power = 1;
  for (int i = 0; i < radius; ++i) power *= q;
  return 1 + (q + 1) * ((power - 1) / (q - 1));
}

BoundaryPoint BoundaryPoint::make(const Field& field, const FieldElement& u, const FieldElement& v) {
  if (u.is_zero() && v.is_zero()) throw InvalidSpec("(0 : 0) is not a point of the projective line");
  BoundaryPoint p;
  if (!v.is_zero() && (u.is_zero() || field.valuation(u) >= field.valuation(v))) {
    p.x = field.div(u, v);
  } else {
    p.at_infinity = true;
    p.x = field.div(v, u);
  }
  return p;
}

std::pair<FieldElement, FieldElement> BoundaryPoint::vector(const Field& field) const {
  return at_infinity ? std::pair{field.one(), x} : std::pair{x, field.one()};
}

std::string BoundaryPoint::to_string(const Field& field) const {
  return at_infinity ? "(1 : " + field.format(x) + ")" : "(" + field.format(x) + " : 1)";
}

std::vector<LatticeVertex> ray_to_end(const Field& field, const BoundaryPoint& end, int depth) {
  require_local(field);
  require_depth(field, depth, "depth");
  std::vector<LatticeVertex> ray;
  if (!end.at_infinity) {
    for (int k = 0; k <= depth; ++k) ray.push_back(LatticeVertex::make(field, k, end.x));
    return ray;
  }
  const int m = end.x.is_zero() ? end.x.prec : field.valuation(end.x);
  for (int k = 0; k <= depth; ++k) {
    if (k <= m) {
      ray.push_back({-k, -k, {}});
    } else {
      if (end.x.is_zero()) throw PrecisionExhausted("end is not known to depth " + std::to_string(depth));
      ray.push_back(LatticeVertex::make(field, k - 2 * m, field.inv(end.x)));
    }
  }
  return ray;
}

ConeComparison cone_vs_ultrametric(const Field& field, const BoundaryPoint& x, const BoundaryPoint& y,
                                   int depth) {
  const auto [x1, x2] = x.vector(field);
  const auto [y1, y2] = y.vector(field);
  const FieldElement det = field.sub(field.mul(x1, y2), field.mul(x2, y1));
  if (det.is_zero()) throw InvalidSpec("the ends coincide to precision");
  const auto rx = ray_to_end(field, x, depth);
  const auto ry = ray_to_end(field, y, depth);
  ConeComparison out;
  while (out.agreement < depth && rx[out.agreement + 1] == ry[out.agreement + 1]) ++out.agreement;
  out.valuation_distance = field.valuation(det);
  out.consistent = out.agreement == std::min(out.valuation_distance, depth);
  return out;
}

Matrix2 multiply(const Field& field, const Matrix2& a, const Matrix2& b) {
  Matrix2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.m[i][j] = field.add(field.mul(a.m[i][0], b.m[0][j]), field.mul(a.m[i][1], b.m[1][j]));
  return out;
}

FieldElement determinant(const Field& field, const Matrix2& a) {
  return field.sub(field.mul(a.m[0][0], a.m[1][1]), field.mul(a.m[0][1], a.m[1][0]));
}

bool equal(const Field& field, const Matrix2& a, const Matrix2& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!field.equal(a.m[i][j], b.m[i][j])) return false;
  return true;
}

bool in_base_stabilizer(const Field& field, const Matrix2& k) {
  for (const auto& row : k.m)
    for (const auto& e : row)
      if (!e.is_zero() && field.valuation(e) < 0) return false;
  const auto det = determinant(field, k);
  return !det.is_zero() && field.valuation(det) == 0;
}

IwasawaFactors iwasawa_decompose(const Field& field, const Matrix2& g) {
  require_local(field);
  if (!field.equal(determinant(field, g), field.one())) throw InvalidSpec("matrix does not have determinant 1");
  const auto& g11 = g.m[0][0];
  const auto& g21 = g.m[1][0];
  if (g11.is_zero() && g21.is_zero()) throw PrecisionExhausted("first column vanishes to precision");
  const FieldElement zero = field.zero(), one = field.one();
  IwasawaFactors f;
  Matrix2 k_inv;
  if (!g11.is_zero() && (g21.is_zero() || field.valuation(g11) <= field.valuation(g21))) {
    const auto r = field.div(g21, g11);
    f.k = {{{one, zero}, {r, one}}};
    k_inv = {{{one, zero}, {field.neg(r), one}}};
  } else {
    const auto r = field.div(g11, g21);
    f.k = {{{r, field.neg(one)}, {one, zero}}};
    k_inv = {{{zero, one}, {field.neg(one), r}}};
  }
  f.b = multiply(field, k_inv, g);
  f.b.m[1][0] = zero;  // vanishes by construction
  return f;
}

Matrix2 random_sl2(const Field& field, std::mt19937_64& rng, int min_val, int max_val) {
  require_local(field);
  Matrix2 g;
  g.m[0][0] = field.random_nonzero(rng, min_val, max_val);
  g.m[1][0] = field.random_element(rng, min_val, max_val);
  const auto& a = g.m[0][0];
  const auto& c = g.m[1][0];
  if (c.is_zero() || field.valuation(a) <= field.valuation(c)) {
    g.m[0][1] = field.random_element(rng, min_val, max_val);
    g.m[1][1] = field.div(field.add(field.one(), field.mul(g.m[0][1], c)), a);
  } else {
    g.m[1][1] = field.random_element(rng, min_val, max_val);
    g.m[0][1] = field.div(field.sub(field.mul(a, g.m[1][1]), field.one()), c);
  }
  return g;
}

namespace {

// P^1(O / pi^D): ids [0, q^D) are (x : 1), the rest (1 : y) with v(y) >= 1.
class ResidueLine {
 public:
  ResidueLine(const Field& field, int depth) : field_(field), depth_(depth), q_(field.residue_order()) {
    power_ = 1;
    for (int i = 0; i < depth; ++i) power_ *= q_;
  }

  long long size() const { return power_ + power_ / q_; }

  std::pair<FieldElement, FieldElement> vector(long long id) const {
    if (id < power_) return {element(id, 0, depth_), field_.one()};
    return {field_.one(), element(id - power_, 1, depth_ - 1)};
  }

  long long id_of(const FieldElement& u, const FieldElement& v) const {
    if (!v.is_zero() && field_.valuation(v) == 0) return code(field_.div(u, v), 0);
    if (u.is_zero() || field_.valuation(u) != 0) throw std::logic_error("vector is not primitive");
    return power_ + code(field_.div(v, u), 1);
  }

 private:
  FieldElement element(long long code, int low, int count) const {
    std::vector<int> digits;
    for (int i = 0; i < count; ++i, code /= q_) digits.push_back(static_cast<int>(code % q_));
    if (std::all_of(digits.begin(), digits.end(), [](int d) { return d == 0; })) return field_.zero();
    return field_.from_digits(low, digits);
  }

  long long code(const FieldElement& x, int low) const {
    const auto digits = field_.expansion(x, low, depth_);
    long long out = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) out = out * q_ + *it;
    return out;
  }

  const Field& field_;
  int depth_, q_;
  long long power_;
};

}  // namespace

TransitivityReport boundary_transitivity_check(const Field& field, int depth) {
  require_local(field);
  require_depth(field, depth, "depth");
  if (depth < 1) throw InvalidSpec("depth must be at least 1");
  const int q = field.residue_order();
  const ResidueLine line(field, depth);
  TransitivityReport report;
  report.depth = depth;
  report.classes = line.size();
  long long power = 1;
  for (int i = 1; i < depth; ++i) power *= q;
  report.expected_classes = power * (q + 1);

  const FieldElement zero = field.zero(), one = field.one();
  std::vector<Matrix2> gens;
  for (int j = 0; j < depth; ++j)
    for (int c = 1; c < q; ++c) {
      const int digit[] = {c};
      const auto e = field.from_digits(j, digit);
      gens.push_back({{{one, e}, {zero, one}}});
      gens.push_back({{{one, zero}, {e, one}}});
    }
  gens.push_back({{{zero, field.neg(one)}, {one, zero}}});
  report.generators = static_cast<int>(gens.size());

  auto act = [&](const Matrix2& g, long long id) {
    const auto [u, v] = line.vector(id);
    return line.id_of(field.add(field.mul(g.m[0][0], u), field.mul(g.m[0][1], v)),
                      field.add(field.mul(g.m[1][0], u), field.mul(g.m[1][1], v)));
  };

  const Matrix2 identity{{{one, zero}, {zero, one}}};
  report.identity_fixes_all = true;
  for (long long id = 0; id < line.size(); ++id)
    if (act(identity, id) != id) report.identity_fixes_all = false;

  std::vector<long long> root(static_cast<std::size_t>(line.size()));
  std::iota(root.begin(), root.end(), 0LL);
  auto find = [&](long long x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (long long id = 0; id < line.size(); ++id)
    for (const auto& g : gens) root[find(id)] = find(act(g, id));
  std::vector<char> is_root(root.size(), 0);
  for (long long id = 0; id < line.size(); ++id) is_root[find(id)] = 1;
  report.orbits = static_cast<int>(std::count(is_root.begin(), is_root.end(), 1));
  return report;
}

}  // namespace bldg
