#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "bldg/coxeter.hpp"

namespace bldg {

/// Geometry catalog: `PG2:q=<n>`, `W:q=<n>` (the symplectic quadrangle),
/// `Aflags:n=<k>,q=<n>` (full flags of F_q^(k+1)).
struct GeometrySpec {
  enum class Kind { projective_plane, symplectic_quadrangle, full_flags };
  Kind kind = Kind::projective_plane;
  int n = 2;  // rank
  int q = 2;

  static GeometrySpec parse(const std::string& text);
  std::string to_string() const;
  bool operator==(const GeometrySpec&) const = default;
};

struct PanelId {
  int type = 0;
  int index = 0;
  auto operator<=>(const PanelId&) const = default;
};

/// A chamber system over a finite Coxeter system: chambers 0..size()-1 and,
/// for each type i, a partition of the chambers into i-panels. W-distances
/// and gallery distances are tabulated on construction by one BFS per
/// chamber (types tried in increasing order).
class ChamberComplex {
 public:
  /// panel_of[c][i] is the index of the i-panel containing c; indices of
  /// each type must be 0..k-1.
  ChamberComplex(CoxeterSystem coxeter, std::vector<std::vector<int>> panel_of,
                 std::vector<std::string> labels, std::string provenance);

  /// Throws UnsupportedSpec outside the catalog (q a prime power <= 5,
  /// rank <= 3 for full flags).
  static ChamberComplex build(const GeometrySpec& spec);
  static ChamberComplex build(const std::string& spec) { return build(GeometrySpec::parse(spec)); }
  /// The thin complex of W: chambers are group elements, {w, ws} the s-panels.
  static ChamberComplex coxeter_complex(const CoxeterSystem& coxeter);
  /// Subcomplex on the given chambers (renumbered in the given order).
  ChamberComplex restrict_to(std::span<const int> keep, std::string provenance) const;

  const CoxeterSystem& coxeter() const { return coxeter_; }
  int size() const { return static_cast<int>(panel_of_.size()); }
  int rank() const { return coxeter_.rank(); }
  const std::string& provenance() const { return provenance_; }
  const std::string& label(int c) const { return labels_.at(c); }

  PanelId panel_of(int c, int type) const { return {type, panel_of_.at(c).at(type)}; }
  const std::vector<int>& panel(PanelId p) const { return panels_.at(p.type).at(p.index); }
  int panel_count(int type) const { return static_cast<int>(panels_.at(type).size()); }
  bool adjacent(int c, int d, int type) const { return panel_of_[c][type] == panel_of_[d][type]; }

  bool connected() const { return connected_; }
  /// -1 when c and d lie in different components.
  int gallery_distance(int c, int d) const { return dist_[index(c, d)]; }
  /// Type of the first minimal gallery found by the BFS, reduced in W.
  /// Throws NotFound across components.
  CoxeterElement delta(int c, int d) const;
  std::vector<int> minimal_gallery(int c, int d) const;

  /// Empty when every minimal gallery from c to d has the same reduced
  /// type and length l(delta); otherwise a description of the first pair
  /// where this fails.
  const std::string& distance_inconsistency() const { return inconsistency_; }

  /// The chamber of p nearest to c. Throws std::logic_error if the nearest
  /// chamber is not unique (which cannot happen in a building).
  int projection(PanelId p, int c) const;

  std::vector<int> schubert_cell(int c0, CoxeterElement w) const;
  /// Chambers x with d(c,x) + d(x,e) = d(c,e).
  std::vector<int> convex_hull(int c, int e) const;
  /// Thin, of size |W|, and delta(first, .) a type-preserving bijection
  /// onto W.
  bool is_apartment(std::span<const int> chambers) const;
  /// Every apartment conv(c, e) with e opposite c, deduplicated. Each is
  /// a sorted chamber list.
  std::vector<std::vector<int>> apartments() const;

 private:
  std::size_t index(int c, int d) const { return static_cast<std::size_t>(c) * size() + d; }
  void tabulate();

  CoxeterSystem coxeter_;
  std::vector<std::vector<int>> panel_of_;
  std::vector<std::vector<std::vector<int>>> panels_;  // [type][panel] -> chambers
  std::vector<std::string> labels_;
  std::string provenance_;
  std::vector<int> dist_;
  std::vector<int> delta_;   // element index, or -1
  std::vector<int> parent_;  // BFS parent of d from c, or -1
  bool connected_ = false;
  std::string inconsistency_;
};

struct AxiomResult {
  std::string axiom;  // "B1", "B2", "B3"
  bool passed = false;
  std::string detail;
  std::vector<int> witness;  // chambers
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool passed() const;
};

/// (B1) every pair of chambers lies in an apartment, checked by covering
/// the complex with the convex hulls conv(c, e), e opposite c; (B2) the
/// W-distance is well defined; (B3) every panel has at least 3 chambers.
AxiomReport verify_building_axioms(const ChamberComplex& complex);

/// Coordinates on C_w(c0) built by peeling the last letter of a reduced
/// word: c -> (proj of c0 on p^i(c), proj of c on p^j(d)) with
/// j = w0 i w0 and d a fixed chamber of C_{w w0}(c0).
class SchubertChart {
 public:
  /// Throws NotReduced if `direction` is not a reduced word.
  SchubertChart(const ChamberComplex& complex, int c0, Word direction);

  const Word& direction() const { return direction_; }
  CoxeterElement element() const { return w_; }
  /// Punctured panels, one per letter.
  const std::vector<std::vector<int>>& factors() const { return factors_; }

  std::vector<int> coordinates(int c) const;
  int chamber(std::span<const int> tuple) const;

  /// Both composites are the identity, over the whole cell and the whole
  /// product of punctured panels.
  bool verify() const;

 private:
  const ChamberComplex* complex_;
  int c0_;
  Word direction_;
  CoxeterElement w_;
  std::vector<int> j_;  // j per level (level 0 unused)
  std::vector<int> d_;  // d per level (level 0 unused)
  std::vector<std::vector<int>> factors_;
};

}  // namespace bldg
