#include "bldg/moufang.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "bldg/errors.hpp"

namespace bldg {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

int inverse_mod_prime(int t, int p) {
  for (int s = 1; s < p; ++s)
    if ((s * t) % p == 1) return s;
  throw DivisionByZero("no inverse of " + std::to_string(t) + " mod " + std::to_string(p));
}

std::set<Permutation> product_set(const std::vector<const std::vector<Permutation>*>& groups, int n) {
  std::set<Permutation> acc{identity_permutation(n)};
  for (const auto* g : groups) {
    std::set<Permutation> next;
    for (const auto& a : acc)
      for (const auto& b : *g) next.insert(compose(a, b));
    acc = std::move(next);
  }
  return acc;
}

std::string range_name(int from, int to) {  // "U2U3", or "1" when empty
  if (from > to) return "1";
  std::string out;
  for (int k = from; k <= to; ++k) out += "U" + std::to_string(k);
  return out;
}

}  // namespace

std::vector<Root> roots_of(const ChamberComplex& complex, std::span<const int> apartment) {
  std::vector<int> apt(apartment.begin(), apartment.end());
  std::sort(apt.begin(), apt.end());
  std::set<std::vector<int>> seen;
  std::vector<Root> out;
  for (int x : apt) {
    for (int i = 0; i < complex.rank(); ++i) {
      int y = -1;
      for (int z : complex.panel(complex.panel_of(x, i)))
        if (z != x && std::binary_search(apt.begin(), apt.end(), z)) y = z;
      if (y < 0) throw InvalidSpec("chamber set is not an apartment");
      std::vector<int> half;
      for (int z : apt)
        if (complex.gallery_distance(z, x) < complex.gallery_distance(z, y)) half.push_back(z);
      if (seen.insert(half).second) out.push_back({apt, std::move(half)});
    }
  }
  return out;
}

std::vector<PanelId> interior_panels(const ChamberComplex& complex, const Root& root) {
  std::set<PanelId> out;
  for (int x : root.chambers) {
    for (int i = 0; i < complex.rank(); ++i) {
      const PanelId p = complex.panel_of(x, i);
      for (int z : complex.panel(p))
        if (z != x && std::binary_search(root.chambers.begin(), root.chambers.end(), z)) out.insert(p);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Permutation> fixer_of_panels(const ChamberComplex& complex, std::span<const PanelId> panels,
                                         const SearchOptions& options) {
  AutomorphismConstraints constraints;
  std::set<int> fixed;
  for (const PanelId& p : panels)
    for (int c : complex.panel(p))
      if (fixed.insert(c).second) constraints.fixed_chambers.push_back(c);
  return find_automorphisms(complex, constraints, options);
}

std::vector<Permutation> root_group(const ChamberComplex& complex, const Root& root,
                                    const SearchOptions& options) {
  const auto panels = interior_panels(complex, root);
  return fixer_of_panels(complex, panels, options);
}

MoufangReport check_moufang(const ChamberComplex& complex, int max_roots) {
  MoufangReport report;
  report.thick = true;
  for (int i = 0; i < complex.rank(); ++i)
    for (int p = 0; p < complex.panel_count(i); ++p)
      if (complex.panel({i, p}).size() < 3) report.thick = false;
  if (!report.thick) return report;

  const auto apartments = complex.apartments();
  report.apartments = static_cast<int>(apartments.size());
  std::set<std::vector<int>> done;
  for (const auto& apt : apartments) {
    for (const auto& root : roots_of(complex, apt)) {
      if (max_roots >= 0 && report.roots_checked >= max_roots) return report;
      if (!done.insert(root.chambers).second) continue;
      ++report.roots_checked;

      RootCheck check;
      check.chambers = root.chambers;
      const auto group = root_group(complex, root);
      check.group_order = static_cast<int>(group.size());
      std::set<std::vector<int>> containing;
      for (const auto& a : apartments)
        if (std::includes(a.begin(), a.end(), root.chambers.begin(), root.chambers.end()))
          containing.insert(a);
      check.apartments_containing = static_cast<int>(containing.size());
      std::set<std::vector<int>> orbit;
      for (const auto& u : group) {
        std::vector<int> image;
        for (int c : root.apartment) image.push_back(u[c]);
        std::sort(image.begin(), image.end());
        orbit.insert(std::move(image));
      }
      check.orbit_size = static_cast<int>(orbit.size());
      check.simply_transitive = orbit == containing && check.group_order == check.orbit_size;
      ++report.orbit_counts[check.orbit_size];
      if (!check.simply_transitive) report.failures.push_back(std::move(check));
    }
  }
  return report;
}

LabeledApartment::LabeledApartment(const ChamberComplex& complex, std::span<const int> apartment,
                                   int first_type)
    : complex_(&complex) {
  if (complex.rank() != 2) throw UnsupportedSpec("labeled apartments need a rank-2 building");
  std::vector<int> apt(apartment.begin(), apartment.end());
  std::sort(apt.begin(), apt.end());
  if (!complex.is_apartment(apt)) throw InvalidSpec("chamber set is not an apartment");
  const int two_n = static_cast<int>(apt.size());
  auto in_apt = [&](int z) { return std::binary_search(apt.begin(), apt.end(), z); };

  if (first_type != 0 && first_type != 1) throw InvalidSpec("vertex type must be 0 or 1");
  // Odd vertices have type first_type.
  circuit_.push_back(apt.front());
  vertices_.assign(two_n, {});
  vertices_[0] = complex.panel_of(apt.front(), 1 - first_type);
  for (int k = 1; k < two_n; ++k) {
    const int type = k % 2 == 1 ? first_type : 1 - first_type;
    const PanelId v = complex.panel_of(circuit_.back(), type);
    vertices_[k] = v;
    int next = -1;
    for (int z : complex.panel(v))
      if (z != circuit_.back() && in_apt(z)) next = z;
    circuit_.push_back(next);
  }
  if (complex.panel_of(circuit_.back(), 1 - first_type) != vertices_[0])
    throw InvalidSpec("apartment circuit does not close");
}

LabeledApartment LabeledApartment::reversed() const {
  return LabeledApartment(*complex_, circuit_, 1 - first_type());
}

int LabeledApartment::chamber(int k) const {
  const int two_n = static_cast<int>(circuit_.size());
  return circuit_[mod(k - 1, two_n)];
}

PanelId LabeledApartment::vertex(int k) const { return vertices_[mod(k, static_cast<int>(vertices_.size()))]; }

Root LabeledApartment::root(int i) const {
  Root r;
  r.apartment = circuit_;
  std::sort(r.apartment.begin(), r.apartment.end());
  for (int k = i + 1; k <= i + n(); ++k) r.chambers.push_back(chamber(k));
  std::sort(r.chambers.begin(), r.chambers.end());
  return r;
}

std::vector<PanelId> LabeledApartment::interior(int i) const {
  std::vector<PanelId> out;
  for (int k = i + 1; k <= i + n() - 1; ++k) out.push_back(vertex(k));
  return out;
}

bool LabeledApartment::induces_reflection(const Permutation& g) const {
  for (int k = 1; k <= 2 * n(); ++k)
    if (g[chamber(k)] != chamber(3 - k)) return false;
  return true;
}

std::vector<Permutation> root_group(const ChamberComplex& complex, const LabeledApartment& sigma, int i,
                                    const SearchOptions& options) {
  const auto panels = sigma.interior(i);
  return fixer_of_panels(complex, panels, options);
}

MuSearch mu_element(const LabeledApartment& sigma, const Permutation& u,
                    std::span<const Permutation> opposite_group) {
  std::set<Permutation> found;
  for (const auto& a : opposite_group) {
    if (is_identity(a)) continue;
    const Permutation au = compose(a, u);
    for (const auto& b : opposite_group) {
      if (is_identity(b)) continue;
      Permutation g = compose(au, b);
      if (sigma.induces_reflection(g)) found.insert(std::move(g));
    }
  }
  MuSearch out;
  out.matches = static_cast<int>(found.size());
  if (!found.empty()) out.mu = *found.begin();
  return out;
}

std::vector<Permutation> parametrize(const LabeledApartment& sigma, std::span<const Permutation> group,
                                     int i, int p) {
  if (static_cast<int>(group.size()) != p)
    throw UnsupportedSpec("root group of order " + std::to_string(group.size()) +
                          " cannot be parametrized by F_" + std::to_string(p));
  const int e = sigma.chamber(i);
  const Permutation* best = nullptr;
  for (const auto& u : group)
    if (!is_identity(u) && (best == nullptr || u[e] < (*best)[e])) best = &u;
  std::vector<Permutation> out;
  for (int t = 0; t < p; ++t) out.push_back(power(*best, t));
  return out;
}

MuFormulaReport check_mu_formula(const ChamberComplex& complex, const LabeledApartment& sigma, int p) {
  MuFormulaReport report;
  report.p = p;
  const int n = sigma.n();
  const auto u1 = root_group(complex, sigma, 1);
  const auto opp = root_group(complex, sigma, n + 1);
  const std::set<Permutation> opp_set(opp.begin(), opp.end());
  const auto x1 = parametrize(sigma, u1, 1, p);

  std::vector<MuSearch> mu(p);
  report.unique = true;
  for (int t = 1; t < p; ++t) {
    mu[t] = mu_element(sigma, x1[t], opp);
    if (mu[t].matches != 1) {
      report.unique = false;
      report.failures.push_back("t=" + std::to_string(t) + ": " + std::to_string(mu[t].matches) +
                                " candidates for mu");
    }
  }
  if (!report.unique) return report;

  const Permutation& m = mu[1].mu;
  std::vector<Permutation> xn1(p);
  report.opposite_in_group = true;
  for (int t = 0; t < p; ++t) {
    xn1[t] = conjugate(x1[t], m);
    if (!opp_set.count(xn1[t])) {
      report.opposite_in_group = false;
      report.failures.push_back("x_1(" + std::to_string(t) + ")^m is not in U_" + std::to_string(n + 1));
    }
  }
  report.formula = true;
  for (int t = 1; t < p; ++t) {
    const auto& y = xn1[inverse_mod_prime(t, p)];
    if (compose(compose(y, x1[t]), y) != mu[t].mu) {
      report.formula = false;
      report.failures.push_back("mu formula fails at t=" + std::to_string(t));
    }
  }
  return report;
}

bool CommutatorReport::passed() const {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return !quadrangle.attempted || quadrangle.passed;
}

namespace {

QuadrangleFit fit_quadrangle(const std::vector<std::vector<Permutation>>& U, const LabeledApartment& sigma,
                             int p) {
  QuadrangleFit fit;
  fit.attempted = true;
  const auto x1 = parametrize(sigma, U[1], 1, p);
  const auto x4 = parametrize(sigma, U[4], 4, p);
  const std::set<Permutation> u3(U[3].begin(), U[3].end());

  std::vector<Permutation> a(p), b(p);
  for (int u = 0; u < p; ++u) {
    const Permutation c = commutator(x1[1], inverse(x4[u]));
    bool split = false;
    for (const auto& cand : U[2]) {
      Permutation rest = compose(inverse(cand), c);
      if (u3.count(rest)) {
        a[u] = cand;
        b[u] = std::move(rest);
        split = true;
        break;
      }
    }
    if (!split) {
      fit.detail = "commutator at u=" + std::to_string(u) + " is not in U2U3";
      return fit;
    }
  }
  if (is_identity(a[1])) {
    fit.detail = "the U2 component is trivial";
    return fit;
  }
  // x_2(u) := a(u); it must be the homomorphism u -> x_2(1)^u.
  for (int u = 0; u < p; ++u)
    if (a[u] != power(a[1], u)) {
      fit.detail = "u -> x_2(u) is not additive";
      return fit;
    }
  // x_3 generated by the U3 component at u = 1 when it is nontrivial.
  std::vector<Permutation> x3 =
      is_identity(b[1]) ? parametrize(sigma, U[3], 3, p) : std::vector<Permutation>{};
  if (x3.empty())
    for (int t = 0; t < p; ++t) x3.push_back(power(b[1], t));
  fit.form.assign(p, -1);
  for (int u = 0; u < p; ++u)
    for (int t = 0; t < p; ++t)
      if (x3[t] == b[u]) fit.form[u] = t;
  for (int u = 0; u < p; ++u) {
    if (fit.form[u] < 0) {
      fit.detail = "U3 component at u=" + std::to_string(u) + " is outside x_3";
      return fit;
    }
    if (fit.form[u] != (fit.form[1] * u % p) * u % p) {
      fit.detail = "q(u) != q(1) u^2 at u=" + std::to_string(u);
      return fit;
    }
  }
  fit.passed = true;
  fit.detail = "q(u) = " + std::to_string(fit.form[1]) + " u^2";
  return fit;
}

}  // namespace

CommutatorReport commutator_containment(const ChamberComplex& complex, const LabeledApartment& sigma, int p) {
  CommutatorReport report;
  const int n = sigma.n();
  const int size = complex.size();
  std::vector<std::vector<Permutation>> U(n + 1);
  for (int i = 1; i <= n; ++i) U[i] = root_group(complex, sigma, i);

  // (a) products as pointwise stabilizers of their fixed points.
  for (int j = 0; j <= n - 3; ++j) {
    for (int i = 1; i <= n - j; ++i) {
      std::vector<const std::vector<Permutation>*> factors;
      for (int k = i; k <= i + j; ++k) factors.push_back(&U[k]);
      const auto prod = product_set(factors, size);
      AutomorphismConstraints fixed;
      for (int c = 0; c < size; ++c)
        if (std::all_of(prod.begin(), prod.end(), [&](const Permutation& g) { return g[c] == c; }))
          fixed.fixed_chambers.push_back(c);
      for (int t = 0; t < complex.rank(); ++t)
        for (int q = 0; q < complex.panel_count(t); ++q) {
          const int rep = complex.panel({t, q}).front();
          if (std::all_of(prod.begin(), prod.end(),
                          [&](const Permutation& g) { return complex.panel_of(g[rep], t).index == q; }))
            fixed.fixed_panels.push_back({t, q});
        }
      const auto stab = find_automorphisms(complex, fixed);
      const std::set<Permutation> stab_set(stab.begin(), stab.end());
      ContainmentCheck check;
      check.relation = range_name(i, i + j) + " = fix(fix(" + range_name(i, i + j) + "))";
      check.holds = stab_set == prod;
      check.detail = std::to_string(prod.size()) + " vs " + std::to_string(stab_set.size()) + " elements";
      report.checks.push_back(std::move(check));
    }
  }

  // (b) commutator containments, including [U_i, U_i] = 1.
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      std::vector<const std::vector<Permutation>*> factors;
      for (int k = i + 1; k <= j - 1; ++k) factors.push_back(&U[k]);
      const auto target = product_set(factors, size);
      ContainmentCheck check;
      check.relation = "[U" + std::to_string(i) + ",U" + std::to_string(j) + "] <= " +
                       (i == j ? std::string("1") : range_name(i + 1, j - 1));
      check.holds = true;
      std::set<Permutation> seen;
      for (const auto& a : U[i])
        for (const auto& b : U[j]) {
          Permutation c = commutator(a, b);
          if (!target.count(c)) check.holds = false;
          seen.insert(std::move(c));
        }
      check.detail = std::to_string(seen.size()) + " commutators in a set of " + std::to_string(target.size());
      report.checks.push_back(std::move(check));
    }
  }

  if (n == 4) {
    // The quadratic side may sit at either end of the labeling.
    const LabeledApartment other = sigma.reversed();
    std::vector<std::vector<Permutation>> V(n + 1);
    for (int i = 1; i <= n; ++i) V[i] = root_group(complex, other, i);
    std::string tried;
    for (int pass = 0; pass < 2; ++pass) {
      const auto& labels = pass == 0 ? sigma : other;
      const auto& groups = pass == 0 ? U : V;
      QuadrangleFit fit;
      try {
        fit = fit_quadrangle(groups, labels, p);
      } catch (const UnsupportedSpec& e) {
        fit.attempted = true;
        fit.detail = e.what();
      }
      fit.detail = "vertex 1 of type " + std::to_string(labels.first_type()) + ": " + fit.detail;
      if (!tried.empty()) fit.detail = tried + "; " + fit.detail;
      report.quadrangle = fit;
      if (fit.passed) break;
      tried = fit.detail;
    }
  }
  return report;
}

std::vector<FiltrationLevel> filtration_indices(const Field& field, int from, int to, unsigned long long seed) {
  if (field.kind() == FieldKind::finite) throw InvalidSpec("filtrations need a local field");
  std::vector<FiltrationLevel> out;
  std::mt19937_64 rng(seed);
  const int q = field.residue_order();
  for (int k = from; k < to; ++k) {
    std::vector<FieldElement> reps;
    for (int c = 0; c < q; ++c) {
      const int digit[] = {c};
      reps.push_back(c == 0 ? field.zero() : field.from_digits(k, digit));
    }
    // Classes of U_k modulo U_{k+1} among the representatives.
    std::vector<int> cls(q, -1);
    int classes = 0;
    for (int a = 0; a < q; ++a) {
      if (cls[a] >= 0) continue;
      cls[a] = classes;
      for (int b = a + 1; b < q; ++b)
        if (cls[b] < 0 && field.valuation(field.sub(reps[a], reps[b])) >= k + 1) cls[b] = classes;
      ++classes;
    }
    FiltrationLevel level;
    level.k = k;
    level.index = classes;
    level.nested = true;
    for (int s = 0; s < 200; ++s) {
      const auto deep = field.random_element(rng, k + 1, k + 3);
      if (field.valuation(deep) < k) level.nested = false;
      // Every element of U_k lies in exactly one class.
      const auto x = field.random_element(rng, k, k + 2);
      int hits = 0;
      for (const auto& r : reps)
        if (field.valuation(field.sub(x, r)) >= k + 1) ++hits;
      if (hits != 1) level.nested = false;
    }
    out.push_back(level);
  }
  return out;
}

}  // namespace bldg
