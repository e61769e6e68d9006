#include "bldg/chambers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bldg/errors.hpp"
#include "bldg/finite_field.hpp"

namespace bldg {

namespace {

int parse_param(const std::string& body, const std::string& key, const std::string& text) {
  const std::string needle = key + "=";
  std::size_t pos = 0;
  while ((pos = body.find(needle, pos)) != std::string::npos) {
    if (pos == 0 || body[pos - 1] == ',') break;
    pos += needle.size();
  }
  if (pos == std::string::npos) throw ParseError("missing " + key + " in geometry spec '" + text + "'");
  const std::size_t start = pos + needle.size();
  const std::size_t end = body.find(',', start);
  const std::string value = body.substr(start, end == std::string::npos ? std::string::npos : end - start);
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad value for " + key + " in geometry spec '" + text + "'");
  }
}

// Vectors of F_q^dim are coded as sum v_k q^k.
class VectorSpace {
 public:
  VectorSpace(int q, int dim) : field_(q), q_(q), dim_(dim) {
    count_ = 1;
    for (int k = 0; k < dim; ++k) count_ *= q;
  }

  int count() const { return count_; }
  int coord(int v, int k) const {
    for (int i = 0; i < k; ++i) v /= q_;
    return v % q_;
  }
  int combine(int u, int c, int v) const {  // u + c v
    int out = 0, place = 1;
    for (int k = 0; k < dim_; ++k, u /= q_, v /= q_, place *= q_)
      out += place * field_.add(u % q_, field_.mul(c, v % q_));
    return out;
  }
  // x0 y1 - x1 y0 + x2 y3 - x3 y2
  int symplectic(int x, int y) const {
    auto term = [&](int a, int b) {
      return field_.sub(field_.mul(coord(x, a), coord(y, b)), field_.mul(coord(x, b), coord(y, a)));
    };
    return field_.add(term(0, 1), term(2, 3));
  }

  std::vector<int> span_with(const std::vector<int>& subspace, int v) const {
    std::vector<int> out;
    out.reserve(subspace.size() * q_);
    for (int s : subspace)
      for (int c = 0; c < q_; ++c) out.push_back(combine(s, c, v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  FiniteField field_;
  int q_;
  int dim_;
  int count_;
};

// Subspaces of dimension 1..top, each a sorted list of vector codes, in
// lexicographic order per dimension. `keep` filters the candidates.
template <class Keep>
std::vector<std::vector<std::vector<int>>> subspaces(const VectorSpace& vs, int top, Keep keep) {
  std::vector<std::vector<std::vector<int>>> by_dim(top + 1);
  by_dim[0] = {{0}};
  for (int k = 1; k <= top; ++k) {
    std::set<std::vector<int>> found;
    for (const auto& s : by_dim[k - 1]) {
      for (int v = 1; v < vs.count(); ++v) {
        if (std::binary_search(s.begin(), s.end(), v)) continue;
        auto t = vs.span_with(s, v);
        if (keep(t)) found.insert(std::move(t));
      }
    }
    by_dim[k].assign(found.begin(), found.end());
  }
  return by_dim;
}

constexpr int kMaxChambers = 5000;

ChamberComplex flag_complex(CoxeterSystem coxeter, const std::vector<std::vector<std::vector<int>>>& by_dim,
                            int n, std::string provenance) {
  // contained_in[k][a]: (k+1)-dim subspaces containing the k-dim subspace a.
  std::vector<std::vector<std::vector<int>>> contained_in(n);
  for (int k = 1; k < n; ++k) {
    contained_in[k].resize(by_dim[k].size());
    for (std::size_t a = 0; a < by_dim[k].size(); ++a)
      for (std::size_t b = 0; b < by_dim[k + 1].size(); ++b)
        if (std::includes(by_dim[k + 1][b].begin(), by_dim[k + 1][b].end(), by_dim[k][a].begin(),
                          by_dim[k][a].end()))
          contained_in[k][a].push_back(static_cast<int>(b));
  }

  std::vector<std::vector<int>> flags;
  std::vector<int> flag;
  auto extend = [&](auto&& self, int k) -> void {
    if (k > n) {
      flags.push_back(flag);
      if (static_cast<int>(flags.size()) > kMaxChambers)
        throw UnsupportedSpec("geometry has more than " + std::to_string(kMaxChambers) + " chambers");
      return;
    }
    const std::vector<int>* options = nullptr;
    std::vector<int> all;
    if (k == 1) {
      all.resize(by_dim[1].size());
      for (std::size_t a = 0; a < all.size(); ++a) all[a] = static_cast<int>(a);
      options = &all;
    } else {
      options = &contained_in[k - 1][flag.back()];
    }
    for (int b : *options) {
      flag.push_back(b);
      self(self, k + 1);
      flag.pop_back();
    }
  };
  extend(extend, 1);

  static const char* kNames = "pLH";
  std::vector<std::vector<int>> panel_of(flags.size(), std::vector<int>(n));
  std::vector<std::string> labels;
  std::vector<std::map<std::vector<int>, int>> keys(n);
  for (std::size_t c = 0; c < flags.size(); ++c) {
    std::string label;
    for (int i = 0; i < n; ++i) {
      if (i) label += ' ';
      label += kNames[std::min(i, 2)] + std::to_string(flags[c][i]);
      auto key = flags[c];
      key[i] = -1;
      const auto [it, fresh] = keys[i].emplace(key, static_cast<int>(keys[i].size()));
      panel_of[c][i] = it->second;
      (void)fresh;
    }
    labels.push_back(std::move(label));
  }
  return ChamberComplex(std::move(coxeter), std::move(panel_of), std::move(labels), std::move(provenance));
}

}  // namespace

GeometrySpec GeometrySpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("bad geometry spec '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  GeometrySpec spec;
  if (head == "PG2") {
    spec.kind = Kind::projective_plane;
    spec.n = 2;
  } else if (head == "W") {
    spec.kind = Kind::symplectic_quadrangle;
    spec.n = 2;
  } else if (head == "Aflags") {
    spec.kind = Kind::full_flags;
    spec.n = parse_param(body, "n", text);
  } else {
    throw ParseError("unknown geometry '" + head + "'");
  }
  spec.q = parse_param(body, "q", text);
  return spec;
}

std::string GeometrySpec::to_string() const {
  switch (kind) {
    case Kind::projective_plane:
      return "PG2:q=" + std::to_string(q);
    case Kind::symplectic_quadrangle:
      return "W:q=" + std::to_string(q);
    case Kind::full_flags:
      break;
  }
  return "Aflags:n=" + std::to_string(n) + ",q=" + std::to_string(q);
}

ChamberComplex::ChamberComplex(CoxeterSystem coxeter, std::vector<std::vector<int>> panel_of,
                               std::vector<std::string> labels, std::string provenance)
    : coxeter_(std::move(coxeter)),
      panel_of_(std::move(panel_of)),
      labels_(std::move(labels)),
      provenance_(std::move(provenance)) {
  const int r = coxeter_.rank();
  if (labels_.size() != panel_of_.size()) throw InvalidSpec("one label per chamber is required");
  panels_.assign(r, {});
  for (int c = 0; c < size(); ++c) {
    if (static_cast<int>(panel_of_[c].size()) != r) throw InvalidSpec("panel table has the wrong rank");
    for (int i = 0; i < r; ++i) {
      const int p = panel_of_[c][i];
      if (p < 0) throw InvalidSpec("negative panel index");
      if (p >= static_cast<int>(panels_[i].size())) panels_[i].resize(p + 1);
      panels_[i][p].push_back(c);
    }
  }
  for (const auto& of_type : panels_)
    for (const auto& p : of_type)
      if (p.empty()) throw InvalidSpec("panel indices must be contiguous");
  tabulate();
}

ChamberComplex ChamberComplex::build(const GeometrySpec& spec) {
  const auto [p, e] = prime_power(spec.q);
  if (p == 0 || spec.q > 5)
    throw UnsupportedSpec("geometry requires a prime power q <= 5, got " + std::to_string(spec.q));
  switch (spec.kind) {
    case GeometrySpec::Kind::projective_plane:
    case GeometrySpec::Kind::full_flags: {
      if (spec.n < 1 || spec.n > 3)
        throw UnsupportedSpec("full flags are supported for 1 <= n <= 3");
      const VectorSpace vs(spec.q, spec.n + 1);
      const auto by_dim = subspaces(vs, spec.n, [](const std::vector<int>&) { return true; });
      return flag_complex(CoxeterSystem::build(CoxeterMatrix::type_a(spec.n)), by_dim, spec.n,
                          spec.to_string());
    }
    case GeometrySpec::Kind::symplectic_quadrangle: {
      const VectorSpace vs(spec.q, 4);
      const auto by_dim = subspaces(vs, 2, [&](const std::vector<int>& s) {
        for (int x : s)
          for (int y : s)
            if (vs.symplectic(x, y) != 0) return false;
        return true;
      });
      return flag_complex(CoxeterSystem::build(CoxeterMatrix::dihedral(4)), by_dim, 2,
                          spec.to_string());
    }
  }
  throw UnsupportedSpec("unknown geometry kind");
}

ChamberComplex ChamberComplex::coxeter_complex(const CoxeterSystem& coxeter) {
  const int n = coxeter.order();
  const int r = coxeter.rank();
  std::vector<std::vector<int>> panel_of(n, std::vector<int>(r, -1));
  std::vector<int> next(r, 0);
  std::vector<std::string> labels;
  for (int w = 0; w < n; ++w) {
    labels.push_back(coxeter.to_string(coxeter.element(w)));
    for (int s = 0; s < r; ++s) {
      if (panel_of[w][s] >= 0) continue;
      const int ws = coxeter.times_generator(coxeter.element(w), s).index;
      panel_of[w][s] = panel_of[ws][s] = next[s]++;
    }
  }
  return ChamberComplex(coxeter, std::move(panel_of), std::move(labels), "thin");
}

ChamberComplex ChamberComplex::restrict_to(std::span<const int> keep, std::string provenance) const {
  const int r = rank();
  std::vector<std::vector<int>> panel_of;
  std::vector<std::string> labels;
  std::vector<std::map<int, int>> renumber(r);
  for (int c : keep) {
    std::vector<int> row(r);
    for (int i = 0; i < r; ++i) {
      auto& m = renumber[i];
      row[i] = m.emplace(panel_of_.at(c)[i], static_cast<int>(m.size())).first->second;
    }
    panel_of.push_back(std::move(row));
    labels.push_back(labels_[c]);
  }
  return ChamberComplex(coxeter_, std::move(panel_of), std::move(labels), std::move(provenance));
}

void ChamberComplex::tabulate() {
  const int n = size();
  const int r = rank();
  dist_.assign(static_cast<std::size_t>(n) * n, -1);
  delta_.assign(static_cast<std::size_t>(n) * n, -1);
  parent_.assign(static_cast<std::size_t>(n) * n, -1);
  connected_ = true;
  inconsistency_.clear();
  auto note = [&](const std::string& what) {
    if (inconsistency_.empty()) inconsistency_ = what;
  };

  std::deque<int> queue;
  for (int c = 0; c < n; ++c) {
    int* dist = &dist_[index(c, 0)];
    int* delta = &delta_[index(c, 0)];
    int* parent = &parent_[index(c, 0)];
    dist[c] = 0;
    delta[c] = coxeter_.identity().index;
    queue.assign(1, c);
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int i = 0; i < r; ++i) {
        const int step = coxeter_.times_generator(coxeter_.element(delta[x]), i).index;
        for (int y : panels_[i][panel_of_[x][i]]) {
          if (y == x) continue;
          if (dist[y] < 0) {
            dist[y] = dist[x] + 1;
            delta[y] = step;
            parent[y] = x;
            queue.push_back(y);
          } else if (dist[y] == dist[x] + 1 && delta[y] != step) {
            note("minimal galleries from chamber " + std::to_string(c) + " to " + std::to_string(y) +
                 " have different types");
          }
        }
      }
    }
    for (int d = 0; d < n; ++d) {
      if (dist[d] < 0) {
        connected_ = false;
        note("chambers " + std::to_string(c) + " and " + std::to_string(d) + " are not connected");
      } else if (coxeter_.length(coxeter_.element(delta[d])) != dist[d]) {
        note("gallery distance from " + std::to_string(c) + " to " + std::to_string(d) +
             " differs from the length of its type");
      }
    }
  }
}

CoxeterElement ChamberComplex::delta(int c, int d) const {
  const int w = delta_.at(index(c, d));
  if (w < 0) throw NotFound("chambers " + std::to_string(c) + " and " + std::to_string(d) + " are not connected");
  return coxeter_.element(w);
}

std::vector<int> ChamberComplex::minimal_gallery(int c, int d) const {
  if (gallery_distance(c, d) < 0) throw NotFound("no gallery between the chambers");
  std::vector<int> out{d};
  while (out.back() != c) out.push_back(parent_[index(c, out.back())]);
  std::reverse(out.begin(), out.end());
  return out;
}

int ChamberComplex::projection(PanelId p, int c) const {
  int best = -1, best_dist = -1;
  bool unique = true;
  for (int x : panel(p)) {
    const int dx = gallery_distance(c, x);
    if (dx < 0) continue;
    if (best < 0 || dx < best_dist) {
      best = x;
      best_dist = dx;
      unique = true;
    } else if (dx == best_dist) {
      unique = false;
    }
  }
  if (best < 0) throw NotFound("panel is not reachable from the chamber");
  if (!unique) throw std::logic_error("projection onto panel is not unique");
  return best;
}

std::vector<int> ChamberComplex::schubert_cell(int c0, CoxeterElement w) const {
  if (w.system_tag != coxeter_.tag()) throw SystemMismatch("element of a different Coxeter system");
  std::vector<int> out;
  for (int d = 0; d < size(); ++d)
    if (delta_[index(c0, d)] == w.index) out.push_back(d);
  return out;
}

std::vector<int> ChamberComplex::convex_hull(int c, int e) const {
  const int total = gallery_distance(c, e);
  std::vector<int> out;
  if (total < 0) return out;
  for (int x = 0; x < size(); ++x) {
    const int a = gallery_distance(c, x), b = gallery_distance(x, e);
    if (a >= 0 && b >= 0 && a + b == total) out.push_back(x);
  }
  return out;
}

bool ChamberComplex::is_apartment(std::span<const int> chambers) const {
  if (static_cast<int>(chambers.size()) != coxeter_.order()) return false;
  const int f = chambers.front();
  std::vector<char> member(size(), 0), hit(coxeter_.order(), 0);
  for (int x : chambers) member.at(x) = 1;
  for (int x : chambers) {
    const int w = delta_[index(f, x)];
    if (w < 0 || hit[w]) return false;
    hit[w] = 1;
  }
  for (int x : chambers) {
    for (int i = 0; i < rank(); ++i) {
      int count = 0, y = -1;
      for (int z : panels_[i][panel_of_[x][i]])
        if (z != x && member[z]) {
          ++count;
          y = z;
        }
      if (count != 1) return false;
      if (coxeter_.times_generator(coxeter_.element(delta_[index(f, x)]), i).index != delta_[index(f, y)])
        return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> ChamberComplex::apartments() const {
  std::set<std::vector<int>> found;
  const int w0 = coxeter_.longest().index;
  for (int c = 0; c < size(); ++c) {
    for (int e = c + 1; e < size(); ++e) {
      if (delta_[index(c, e)] != w0) continue;
      auto hull = convex_hull(c, e);
      if (is_apartment(hull)) found.insert(std::move(hull));
    }
  }
  return {found.begin(), found.end()};
}

bool AxiomReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

AxiomReport verify_building_axioms(const ChamberComplex& complex) {
  AxiomReport report;
  const auto& W = complex.coxeter();
  const int n = complex.size();

  AxiomResult b1{"B1", true, "every pair of chambers lies in a common apartment", {}};
  if (complex.connected()) {
    const auto w0 = W.longest();
    std::vector<char> covered(n);
    for (int c = 0; c < n && b1.passed; ++c) {
      std::fill(covered.begin(), covered.end(), 0);
      for (int e = 0; e < n; ++e) {
        if (complex.delta(c, e) != w0) continue;
        const auto hull = complex.convex_hull(c, e);
        if (!complex.is_apartment(hull)) continue;
        for (int x : hull) covered[x] = 1;
      }
      for (int d = 0; d < n; ++d) {
        if (!covered[d]) {
          b1 = {"B1", false,
                "no apartment contains chambers " + std::to_string(c) + " and " + std::to_string(d),
                {c, d}};
          break;
        }
      }
    }
  } else {
    b1 = {"B1", false, "chamber graph is not connected", {}};
  }
  report.results.push_back(std::move(b1));

  AxiomResult b2{"B2", true, "W-distance is well defined", {}};
  if (!complex.distance_inconsistency().empty()) {
    b2 = {"B2", false, complex.distance_inconsistency(), {}};
  } else {
    for (int c = 0; c < n && b2.passed; ++c)
      for (int d = 0; d < n; ++d)
        if (complex.delta(d, c) != W.inverse(complex.delta(c, d))) {
          b2 = {"B2", false, "delta(d, c) is not delta(c, d)^-1", {c, d}};
          break;
        }
  }
  report.results.push_back(std::move(b2));

  AxiomResult b3{"B3", true, "every panel has at least 3 chambers", {}};
  for (int i = 0; i < complex.rank() && b3.passed; ++i) {
    for (int p = 0; p < complex.panel_count(i); ++p) {
      const auto& members = complex.panel({i, p});
      if (members.size() < 3) {
        b3 = {"B3", false,
              "panel " + std::to_string(p) + " of type " + std::to_string(i + 1) + " has " +
                  std::to_string(members.size()) + " chambers",
              members};
        break;
      }
    }
  }
  report.results.push_back(std::move(b3));
  return report;
}

SchubertChart::SchubertChart(const ChamberComplex& complex, int c0, Word direction)
    : complex_(&complex), c0_(c0), direction_(std::move(direction)) {
  const auto& W = complex.coxeter();
  if (!W.is_reduced(direction_)) throw NotReduced("direction " + format_word(direction_) + " is not reduced");
  w_ = W.reduce_word(direction_);
  const int m = static_cast<int>(direction_.size());
  const auto w0 = W.longest();
  j_.assign(m, -1);
  d_.assign(m, -1);
  for (int k = 0; k < m; ++k) {
    const int i = direction_[k];
    if (k == 0) {
      std::vector<int> punctured;
      for (int x : complex.panel(complex.panel_of(c0, i)))
        if (x != c0) punctured.push_back(x);
      factors_.push_back(std::move(punctured));
      continue;
    }
    const auto wk = W.reduce_word(std::span<const int>(direction_).first(k + 1));
    const auto conj = W.multiply(W.multiply(w0, W.generator(i)), w0);
    for (int s = 0; s < W.rank(); ++s)
      if (W.generator(s) == conj) j_[k] = s;
    const auto cell = complex.schubert_cell(c0, W.multiply(wk, w0));
    if (cell.empty()) throw NotFound("Schubert cell C_{w w0} is empty");
    d_[k] = cell.front();
    std::vector<int> punctured;
    for (int x : complex.panel(complex.panel_of(d_[k], j_[k])))
      if (x != d_[k]) punctured.push_back(x);
    factors_.push_back(std::move(punctured));
  }
}

std::vector<int> SchubertChart::coordinates(int c) const {
  if (complex_->delta(c0_, c) != w_) throw NotFound("chamber is not in the Schubert cell");
  const int m = static_cast<int>(direction_.size());
  std::vector<int> tuple(m);
  int cur = c;
  for (int k = m - 1; k >= 1; --k) {
    const int a = complex_->projection(complex_->panel_of(cur, direction_[k]), c0_);
    tuple[k] = complex_->projection(complex_->panel_of(d_[k], j_[k]), cur);
    cur = a;
  }
  if (m > 0) tuple[0] = cur;
  return tuple;
}

int SchubertChart::chamber(std::span<const int> tuple) const {
  if (tuple.size() != direction_.size()) throw std::invalid_argument("coordinate tuple has the wrong length");
  if (tuple.empty()) return c0_;
  int cur = tuple[0];
  for (std::size_t k = 1; k < tuple.size(); ++k)
    cur = complex_->projection(complex_->panel_of(cur, direction_[k]), tuple[k]);
  return cur;
}

bool SchubertChart::verify() const {
  const auto cell = complex_->schubert_cell(c0_, w_);
  long long product = 1;
  for (const auto& f : factors_) product *= static_cast<long long>(f.size());
  if (product != static_cast<long long>(cell.size())) return false;

  for (int c : cell) {
    const auto t = coordinates(c);
    for (std::size_t k = 0; k < t.size(); ++k)
      if (std::find(factors_[k].begin(), factors_[k].end(), t[k]) == factors_[k].end()) return false;
    if (chamber(t) != c) return false;
  }

  // Odometer over the product of punctured panels.
  const std::size_t m = factors_.size();
  std::vector<std::size_t> pos(m, 0);
  std::vector<int> tuple(m);
  for (;;) {
    for (std::size_t k = 0; k < m; ++k) tuple[k] = factors_[k][pos[k]];
    const int c = chamber(tuple);
    if (complex_->delta(c0_, c) != w_ || coordinates(c) != tuple) return false;
    std::size_t k = 0;
    while (k < m && ++pos[k] == factors_[k].size()) pos[k++] = 0;
    if (k == m) break;
  }
  return true;
}

}  // namespace bldg
