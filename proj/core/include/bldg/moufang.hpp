#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bldg/automorphism.hpp"
#include "bldg/chambers.hpp"
#include "bldg/field.hpp"

namespace bldg {

/// A half-apartment: the chambers of `apartment` strictly closer to one
/// chamber of an adjacent pair than to the other.
struct Root {
  std::vector<int> apartment;  // sorted
  std::vector<int> chambers;   // sorted
};

/// The distinct roots of an apartment.
std::vector<Root> roots_of(const ChamberComplex& complex, std::span<const int> apartment);

/// Panels meeting the root in two chambers.
std::vector<PanelId> interior_panels(const ChamberComplex& complex, const Root& root);

/// Automorphisms fixing every chamber of each given panel.
std::vector<Permutation> fixer_of_panels(const ChamberComplex& complex,
                                         std::span<const PanelId> panels,
                                         const SearchOptions& options = {});

/// U_alpha.
std::vector<Permutation> root_group(const ChamberComplex& complex, const Root& root,
                                    const SearchOptions& options = {});

struct RootCheck {
  std::vector<int> chambers;
  int group_order = 0;
  int apartments_containing = 0;
  int orbit_size = 0;
  bool simply_transitive = false;
};

struct MoufangReport {
  bool thick = false;
  int apartments = 0;
  int roots_checked = 0;
  std::map<int, int> orbit_counts;  // orbit size -> number of roots
  std::vector<RootCheck> failures;
  bool passed() const { return thick && roots_checked > 0 && failures.empty(); }
};

/// For every root (up to `max_roots`, -1 for all) checks that U_alpha acts
/// simply transitively on the apartments containing it.
MoufangReport check_moufang(const ChamberComplex& complex, int max_roots = -1);

/// An apartment of a rank-2 building with its circuit labeled by Z/2n:
/// vertices are panels, chamber e_k joins vertices k-1 and k, and the root
/// alpha_i is the path of vertices i, ..., i+n.
class LabeledApartment {
 public:
  /// Labels the apartment starting from its least chamber: e_1 is that
  /// chamber and vertex 1 is its panel of type `first_type`; vertex types
  /// alternate around the circuit.
  LabeledApartment(const ChamberComplex& complex, std::span<const int> apartment, int first_type = 0);

  int n() const { return static_cast<int>(circuit_.size()) / 2; }
  /// e_k, k taken mod 2n.
  int chamber(int k) const;
  PanelId vertex(int k) const;
  int first_type() const { return vertices_[1].type; }
  /// The same apartment labeled from the other vertex type.
  LabeledApartment reversed() const;
  Root root(int i) const;
  /// Vertices i+1, ..., i+n-1.
  std::vector<PanelId> interior(int i) const;
  /// g maps the apartment to itself and acts as v -> 2 - v on the labels.
  bool induces_reflection(const Permutation& g) const;

 private:
  const ChamberComplex* complex_;
  std::vector<int> circuit_;  // circuit_[k-1] = e_k
  std::vector<PanelId> vertices_;  // vertices_[k] = vertex k, k in [0, 2n)
};

std::vector<Permutation> root_group(const ChamberComplex& complex, const LabeledApartment& sigma,
                                    int i, const SearchOptions& options = {});

struct MuSearch {
  Permutation mu;
  int matches = 0;  // elements of the double coset with the property
};

/// Searches U_{n+1}* u U_{n+1}* for elements stabilizing the apartment
/// and inducing the reflection fixing vertices 1 and n+1.
MuSearch mu_element(const LabeledApartment& sigma, const Permutation& u,
                    std::span<const Permutation> opposite_group);

/// x_i(t) for t in F_p, with x_i(1) the element of U_i moving e_i to the
/// least chamber, and x_i(t) = x_i(1)^t. Requires prime p.
std::vector<Permutation> parametrize(const LabeledApartment& sigma,
                                     std::span<const Permutation> group, int i, int p);

struct MuFormulaReport {
  int p = 0;
  bool unique = false;     // every double-coset search found exactly one mu
  bool formula = false;    // mu(x_1(t)) = x_{n+1}(1/t) x_1(t) x_{n+1}(1/t)
  bool opposite_in_group = false;  // x_1(t)^m lies in U_{n+1}
  std::vector<std::string> failures;
  bool passed() const { return unique && formula && opposite_in_group; }
};

/// Fixes x_1, sets m = mu(x_1(1)) and x_{n+1}(t) = x_1(t)^m, and checks the
/// mu formula for every t != 0. The building must come from a plane or
/// quadrangle over a prime field.
MuFormulaReport check_mu_formula(const ChamberComplex& complex, const LabeledApartment& sigma, int p);

struct ContainmentCheck {
  std::string relation;
  bool holds = false;
  std::string detail;
};

struct QuadrangleFit {
  bool attempted = false;
  bool passed = false;
  std::vector<int> form;  // q(u) for u = 0..p-1, in the fitted parametrization
  std::string detail;
};

struct CommutatorReport {
  std::vector<ContainmentCheck> checks;
  QuadrangleFit quadrangle;
  bool passed() const;
};

/// (a) products U_i ... U_{i+j} equal the pointwise stabilizers of their
/// fixed chambers and panels; (b) [U_i, U_j] lies in U_{i+1} ... U_{j-1};
/// (c) for quadrangles over F_p, the commutator [x_1(1), x_4(u)^-1] splits
/// as x_2(u) x_3(q(u)) with q(u) = q(1) u^2.
CommutatorReport commutator_containment(const ChamberComplex& complex, const LabeledApartment& sigma,
                                        int p);

struct FiltrationLevel {
  int k = 0;
  int index = 0;        // [U_k : U_{k+1}]
  bool nested = false;  // U_{k+1} is inside U_k on the sampled elements
};

/// The root group (F, +) filtered by U_k = {t : v(t) >= k}, for k in
/// [from, to).
std::vector<FiltrationLevel> filtration_indices(const Field& field, int from, int to,
                                                unsigned long long seed = 1);

}  // namespace bldg
