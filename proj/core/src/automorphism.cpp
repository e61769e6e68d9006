#include "bldg/automorphism.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bldg/errors.hpp"

namespace bldg {

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) throw std::invalid_argument("permutations of different degree");
  Permutation out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = h[g[x]];
  return out;
}

Permutation inverse(const Permutation& g) {
  Permutation out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[g[x]] = static_cast<int>(x);
  return out;
}

Permutation power(const Permutation& g, long long k) {
  Permutation base = k < 0 ? inverse(g) : g;
  if (k < 0) k = -k;
  Permutation out = identity_permutation(static_cast<int>(g.size()));
  while (k > 0) {
    if (k & 1) out = compose(out, base);
    k >>= 1;
    if (k) base = compose(base, base);
  }
  return out;
}

Permutation conjugate(const Permutation& g, const Permutation& m) {
  return compose(compose(inverse(m), g), m);
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  return compose(compose(inverse(a), inverse(b)), compose(a, b));
}

bool is_identity(const Permutation& g) {
  for (std::size_t x = 0; x < g.size(); ++x)
    if (g[x] != static_cast<int>(x)) return false;
  return true;
}

bool is_automorphism(const ChamberComplex& complex, const Permutation& g) {
  const int n = complex.size();
  if (static_cast<int>(g.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : g) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  for (int i = 0; i < complex.rank(); ++i) {
    for (int p = 0; p < complex.panel_count(i); ++p) {
      const auto& members = complex.panel({i, p});
      const PanelId image = complex.panel_of(g[members.front()], i);
      if (complex.panel(image).size() != members.size()) return false;
      for (int x : members)
        if (complex.panel_of(g[x], i) != image) return false;
    }
  }
  return true;
}

namespace {

class Search {
 public:
  Search(const ChamberComplex& complex, const SearchOptions& options)
      : cx_(complex), options_(options), n_(complex.size()), r_(complex.rank()) {
    image_.assign(n_, -1);
    used_.assign(n_, 0);
    panel_image_.resize(r_);
    panel_used_.resize(r_);
    for (int i = 0; i < r_; ++i) {
      panel_image_[i].assign(cx_.panel_count(i), -1);
      panel_used_[i].assign(cx_.panel_count(i), 0);
    }
  }

  bool fix_panel(PanelId p) {
    int& img = panel_image_[p.type][p.index];
    if (img >= 0) return img == p.index;
    if (panel_used_[p.type][p.index]) return false;
    img = p.index;
    panel_used_[p.type][p.index] = 1;
    return true;
  }

  // Assigns x -> y if consistent; records undo information.
  bool assign(int x, int y) {
    if (used_[y]) return false;
    // Automorphisms preserve the Weyl distance to every placed chamber.
    for (int z : placed_)
      if (cx_.delta(x, z) != cx_.delta(y, image_[z])) return false;
    for (int i = 0; i < r_; ++i) {
      const int px = cx_.panel_of(x, i).index;
      const int py = cx_.panel_of(y, i).index;
      const int img = panel_image_[i][px];
      if (img >= 0 ? img != py : panel_used_[i][py] != 0) return false;
    }
    for (int i = 0; i < r_; ++i) {
      const int px = cx_.panel_of(x, i).index;
      if (panel_image_[i][px] < 0) {
        const int py = cx_.panel_of(y, i).index;
        panel_image_[i][px] = py;
        panel_used_[i][py] = 1;
        undo_.push_back({i, px});
      } else {
        undo_.push_back({-1, 0});
      }
    }
    image_[x] = y;
    used_[y] = 1;
    placed_.push_back(x);
    return true;
  }

  void unassign(int x) {
    placed_.pop_back();
    used_[image_[x]] = 0;
    image_[x] = -1;
    for (int i = 0; i < r_; ++i) {
      const auto [type, px] = undo_.back();
      undo_.pop_back();
      if (type >= 0) {
        panel_used_[type][panel_image_[type][px]] = 0;
        panel_image_[type][px] = -1;
      }
    }
  }

  std::vector<Permutation> run(const std::vector<int>& fixed) {
    if (!cx_.connected()) throw InvalidSpec("automorphism search needs a connected chamber system");
    for (int c : fixed) {
      if (image_[c] == c) continue;
      if (!assign(c, c)) return {};
    }
    recurse();
    return std::move(results_);
  }

 private:
  bool feasible(int x, int y) const {
    if (used_[y]) return false;
    for (int i = 0; i < r_; ++i) {
      const int img = panel_image_[i][cx_.panel_of(x, i).index];
      const int py = cx_.panel_of(y, i).index;
      if (img >= 0 ? img != py : panel_used_[i][py] != 0) return false;
    }
    return true;
  }

  // Feasible images of x, drawn from the smallest mapped panel; empty
  // vector with `open` set when none of its panels is mapped yet.
  std::vector<int> candidates(int x, bool& open) const {
    const std::vector<int>* pool = nullptr;
    for (int i = 0; i < r_; ++i) {
      const int img = panel_image_[i][cx_.panel_of(x, i).index];
      if (img < 0) continue;
      const auto& members = cx_.panel({i, img});
      if (pool == nullptr || members.size() < pool->size()) pool = &members;
    }
    open = pool == nullptr;
    std::vector<int> out;
    if (open) return out;
    for (int y : *pool)
      if (feasible(x, y)) out.push_back(y);
    return out;
  }

  // Branches on the unassigned chamber with the fewest feasible images.
  bool recurse() {
    if (++nodes_ > options_.node_budget)
      throw SearchBudgetExceeded("automorphism search exceeded " +
                                 std::to_string(options_.node_budget) + " nodes");
    int best = -1;
    std::vector<int> best_cands;
    int first_open = -1;
    for (int x = 0; x < n_; ++x) {
      if (image_[x] >= 0) continue;
      bool open = false;
      auto cands = candidates(x, open);
      if (open) {
        if (first_open < 0) first_open = x;
        continue;
      }
      if (cands.empty()) return true;
      if (best < 0 || cands.size() < best_cands.size()) {
        best = x;
        best_cands = std::move(cands);
        if (best_cands.size() == 1) break;
      }
    }
    if (best < 0 && first_open < 0) {
      results_.push_back(image_);
      return options_.max_results < 0 ||
             static_cast<long long>(results_.size()) < options_.max_results;
    }
    if (best < 0) {
      best = first_open;
      for (int y = 0; y < n_; ++y)
        if (feasible(best, y)) best_cands.push_back(y);
    }
    for (int y : best_cands) {
      if (!assign(best, y)) continue;
      const bool more = recurse();
      unassign(best);
      if (!more) return false;
    }
    return true;
  }

  const ChamberComplex& cx_;
  SearchOptions options_;
  int n_, r_;
  std::vector<int> image_, placed_;
  std::vector<char> used_;
  std::vector<std::vector<int>> panel_image_;
  std::vector<std::vector<char>> panel_used_;
  std::vector<std::pair<int, int>> undo_;
  std::vector<Permutation> results_;
  long long nodes_ = 0;
};

}  // namespace

std::vector<Permutation> find_automorphisms(const ChamberComplex& complex,
                                            const AutomorphismConstraints& constraints,
                                            const SearchOptions& options) {
  Search search(complex, options);
  for (const PanelId& p : constraints.fixed_panels)
    if (!search.fix_panel(p)) return {};
  auto found = search.run(constraints.fixed_chambers);
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace bldg
