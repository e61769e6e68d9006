#pragma once

#include <vector>

#include "bldg/chambers.hpp"

namespace bldg {

/// A chamber permutation, perm[c] = image of c. Products act on the right:
/// x^(g h) = (x^g)^h, matching exponential notation for group actions.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);
Permutation power(const Permutation& g, long long k);
/// g^m = m^-1 g m
Permutation conjugate(const Permutation& g, const Permutation& m);
/// [a, b] = a^-1 b^-1 a b
Permutation commutator(const Permutation& a, const Permutation& b);
bool is_identity(const Permutation& g);

/// Type-preserving: a bijection that maps i-panels onto i-panels.
bool is_automorphism(const ChamberComplex& complex, const Permutation& g);

struct AutomorphismConstraints {
  std::vector<int> fixed_chambers;
  std::vector<PanelId> fixed_panels;  // stabilized setwise
};

struct SearchOptions {
  long long node_budget = 20'000'000;
  long long max_results = -1;  // -1: all
};

/// All type-preserving automorphisms satisfying the constraints, in
/// lexicographic order of their image lists. Throws SearchBudgetExceeded.
std::vector<Permutation> find_automorphisms(const ChamberComplex& complex,
                                            const AutomorphismConstraints& constraints,
                                            const SearchOptions& options = {});

}  // namespace bldg
