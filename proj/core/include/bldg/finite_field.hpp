#pragma once

#include <cstdint>
#include <vector>

namespace bldg {

/// The field with q = p^e elements, realized as F_p[x]/(f) for the
/// lexicographically least monic irreducible f of degree e.
///
/// Elements are integer codes 0..q-1: the code sum c_i p^i stands for the
/// residue class of sum c_i x^i. Code 0 is zero, code 1 is one. All
/// operations go through precomputed tables.
class FiniteField {
 public:
  /// Throws InvalidSpec unless q is a prime power in [2, 1024].
  explicit FiniteField(int q);

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return e_; }
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const;
  /// Throws DivisionByZero for a == 0.
  int inv(int a) const;
  int pow(int a, long long k) const;
  /// Image of the integer n under Z -> F_p -> F_q.
  int from_integer(long long n) const;
  /// The unique b with b^p == a.
  int pth_root(int a) const { return pth_root_[a]; }
  /// A fixed generator of the multiplicative group.
  int primitive() const { return exp_[1]; }

  bool operator==(const FiniteField& o) const { return q_ == o.q_; }

 private:
  int q_, p_, e_;
  std::vector<int> modulus_;  // coefficients, low degree first, monic
  std::vector<int> add_, neg_, log_, exp_, pth_root_;
};

bool is_prime(long long n);
/// Returns (p, e) with q == p^e, or (0, 0) if q is not a prime power.
std::pair<int, int> prime_power(long long q);

}  // namespace bldg
