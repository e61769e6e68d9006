#include "bldg/finite_field.hpp"

#include <string>

#include "bldg/errors.hpp"

namespace bldg {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<int, int> prime_power(long long q) {
  if (q < 2) return {0, 0};
  long long p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  long long r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) return {0, 0};
  return {static_cast<int>(p), e};
}

namespace {

// Polynomials over F_p as coefficient vectors, low degree first.
using Poly = std::vector<int>;

Poly poly_from_code(int code, int p, int len) {
  Poly out(len);
  for (int i = 0; i < len; ++i) {
    out[i] = code % p;
    code /= p;
  }
  return out;
}

int code_from_poly(const Poly& a, int p) {
  int code = 0;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) code = code * p + a[i];
  return code;
}

// (a * b) mod f, f monic of degree e.
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, int p) {
  const int e = static_cast<int>(f.size()) - 1;
  Poly prod(2 * e, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (int k = 2 * e - 1; k >= e; --k) {
    const int c = prod[k];
    if (c == 0) continue;
    for (int i = 0; i <= e; ++i)
      prod[k - e + i] = ((prod[k - e + i] - c * f[i]) % p + p) % p;
  }
  prod.resize(e);
  return prod;
}

// Remainder of a modulo the monic polynomial g.
Poly poly_rem(Poly a, const Poly& g, int p) {
  const int dg = static_cast<int>(g.size()) - 1;
  for (int k = static_cast<int>(a.size()) - 1; k >= dg; --k) {
    const int c = a[k];
    if (c == 0) continue;
    for (int i = 0; i <= dg; ++i)
      a[k - dg + i] = ((a[k - dg + i] - c * g[i]) % p + p) % p;
  }
  a.resize(dg);
  return a;
}

// f is irreducible iff no monic g of degree 1..deg(f)/2 divides it.
bool is_irreducible(const Poly& f, int p) {
  const int e = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= e; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int tail = 0; tail < count; ++tail) {
      Poly g = poly_from_code(tail, p, d);
      g.push_back(1);
      bool divides = true;
      for (int c : poly_rem(f, g, p)) divides = divides && c == 0;
      if (divides) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(int q) : q_(q) {
  auto [p, e] = prime_power(q);
  if (p == 0) throw InvalidSpec("q = " + std::to_string(q) + " is not a prime power");
  if (q > 1024) throw InvalidSpec("finite fields are limited to q <= 1024");
  p_ = p;
  e_ = e;

  if (e == 1) {
    modulus_ = {0, 1};
  } else {
    int tail_count = 1;
    for (int i = 0; i < e; ++i) tail_count *= p;
    for (int tail = 0; tail < tail_count; ++tail) {
      Poly f = poly_from_code(tail, p, e);
      f.push_back(1);
      if (is_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
  }

  add_.resize(static_cast<std::size_t>(q) * q);
  neg_.resize(q);
  for (int a = 0; a < q; ++a) {
    const Poly pa = poly_from_code(a, p, e);
    Poly na(e);
    for (int i = 0; i < e; ++i) na[i] = (p - pa[i]) % p;
    neg_[a] = code_from_poly(na, p);
    for (int b = 0; b < q; ++b) {
      const Poly pb = poly_from_code(b, p, e);
      Poly s(e);
      for (int i = 0; i < e; ++i) s[i] = (pa[i] + pb[i]) % p;
      add_[a * q + b] = code_from_poly(s, p);
    }
  }

  // Find a primitive element and build log/exp tables.
  log_.assign(q, -1);
  exp_.assign(q, 0);
  const Poly f = e == 1 ? Poly{} : modulus_;
  auto mul_slow = [&](int a, int b) {
    if (e == 1) return static_cast<int>((1LL * a * b) % p);
    return code_from_poly(
        mulmod(poly_from_code(a, p, e), poly_from_code(b, p, e), f, p), p);
  };
  for (int g = (q == 2 ? 1 : 2); g < q; ++g) {
    std::vector<int> seen(q, -1);
    int x = 1;
    int k = 0;
    for (; k < q - 1; ++k) {
      if (seen[x] >= 0) break;
      seen[x] = k;
      exp_[k] = x;
      x = mul_slow(x, g);
    }
    if (k == q - 1) {
      for (int i = 0; i < q - 1; ++i) log_[exp_[i]] = i;
      break;
    }
  }
  exp_[q - 1] = 1;

  pth_root_.assign(q, 0);
  for (int a = 0; a < q; ++a) pth_root_[pow(a, p)] = a;
}

int FiniteField::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  int k = log_[a] + log_[b];
  if (k >= q_ - 1) k -= q_ - 1;
  return exp_[k];
}

int FiniteField::inv(int a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int FiniteField::pow(int a, long long k) const {
  if (a == 0) {
    if (k < 0) throw DivisionByZero("negative power of zero");
    return k == 0 ? 1 : 0;
  }
  const long long n = q_ - 1;
  long long r = (static_cast<long long>(log_[a]) * (k % n)) % n;
  if (r < 0) r += n;
  return exp_[r];
}

int FiniteField::from_integer(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<int>(r);
}

}  // namespace bldg
