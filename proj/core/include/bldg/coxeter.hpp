#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bldg {

using Word = std::vector<int>;

/// Symmetric matrix of Coxeter exponents m(i,j). Generators are 0-based.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  /// Throws InvalidSpec unless the matrix is square, symmetric, has unit
  /// diagonal and off-diagonal entries >= 2.
  explicit CoxeterMatrix(std::vector<std::vector<int>> entries);

  /// One row per line, entries separated by whitespace.
  static CoxeterMatrix parse(const std::string& text);

  static CoxeterMatrix type_a(int rank);
  static CoxeterMatrix dihedral(int m);

  int rank() const { return static_cast<int>(entries_.size()); }
  int operator()(int i, int j) const { return entries_[i][j]; }
  const std::vector<std::vector<int>>& entries() const { return entries_; }

  bool operator==(const CoxeterMatrix&) const = default;

 private:
  std::vector<std::vector<int>> entries_;
};

/// Element handle; only meaningful together with the system that issued it.
struct CoxeterElement {
  std::uint64_t system_tag = 0;
  int index = 0;

  bool operator==(const CoxeterElement&) const = default;
  auto operator<=>(const CoxeterElement&) const = default;
};

/// A finite Coxeter group with every element enumerated.
///
/// Elements are numbered in shortlex order of their canonical words, so the
/// identity is element 0 and the generators s_0, s_1, ... follow it. The
/// canonical word of an element is its lexicographically least reduced
/// expression.
class CoxeterSystem {
 public:
  static constexpr int kDefaultBound = 100000;

  /// Enumerates W by coset enumeration over the trivial subgroup. Throws
  /// BoundExceeded when more than `element_bound` elements turn up (or the
  /// enumeration does not close), which is how infinite groups are rejected.
  static CoxeterSystem build(const CoxeterMatrix& matrix,
                             int element_bound = kDefaultBound);

  const CoxeterMatrix& matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }
  int order() const { return static_cast<int>(words_.size()); }
  std::uint64_t tag() const { return tag_; }

  CoxeterElement identity() const { return {tag_, 0}; }
  CoxeterElement generator(int s) const;
  CoxeterElement element(int index) const;
  CoxeterElement longest() const { return {tag_, longest_}; }

  const Word& word(CoxeterElement w) const;
  int length(CoxeterElement w) const;

  /// w * s_s (right multiplication by a generator).
  CoxeterElement times_generator(CoxeterElement w, int s) const;
  CoxeterElement multiply(CoxeterElement w, CoxeterElement v) const;
  CoxeterElement inverse(CoxeterElement w) const;

  /// Canonical reduced form of the product of `word`. Throws
  /// std::out_of_range on an invalid generator index.
  CoxeterElement reduce_word(std::span<const int> word) const;
  bool is_reduced(std::span<const int> word) const;

  /// Every reduced expression of w, in lexicographic order.
  std::vector<Word> reduced_words(CoxeterElement w) const;

  /// Coefficient d is the number of elements of length d.
  std::vector<long long> poincare_polynomial() const;

  /// Connected components of the Coxeter graph (edges where m(i,j) >= 3).
  std::vector<std::vector<int>> components() const;
  bool decomposable() const { return components().size() > 1; }

  std::string to_string(CoxeterElement w) const;

 private:
  CoxeterSystem() = default;
  void check(CoxeterElement w) const;

  CoxeterMatrix matrix_;
  std::uint64_t tag_ = 0;
  std::vector<Word> words_;
  std::vector<int> lengths_;
  std::vector<std::vector<int>> right_;  // right_[w][s] = index of w*s
  int longest_ = 0;
};

/// Human-readable word, 1-based: "s2s1", or "e" for the identity.
std::string format_word(std::span<const int> word);

}  // namespace bldg
