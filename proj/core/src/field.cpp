#include "bldg/field.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "bldg/errors.hpp"

namespace bldg {

namespace {

std::atomic<std::uint64_t> next_field_tag{1};

__extension__ using i128 = __int128;

int sat_add(int a, int b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<i128>(a) * b) % m);
}

// Inverse of a unit modulo m.
std::int64_t invmod(std::int64_t a, std::int64_t m) {
  i128 old_r = a % m, r = m, old_s = 1, s = 0;
  if (old_r < 0) old_r += m;
  while (r != 0) {
    const i128 quot = old_r / r;
    std::swap(old_r, r);
    r -= quot * old_r;
    std::swap(old_s, s);
    s -= quot * old_s;
  }
  i128 x = old_s % m;
  if (x < 0) x += m;
  return static_cast<std::int64_t>(x);
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + " '" + s + "'");
  }
}

long long parse_ll(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + " '" + s + "'");
  }
}

// "key=value,key=value" -> lookup
std::string param(const std::string& body, const std::string& key,
                  const std::string& full) {
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq != std::string::npos && item.substr(0, eq) == key)
      return item.substr(eq + 1);
  }
  throw ParseError("field spec '" + full + "' lacks '" + key + "='");
}

}  // namespace

FieldSpec FieldSpec::parse(const std::string& text) {
  FieldSpec spec;
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    // Shorthands F<q> and Q<p>.
    if (text.size() >= 2 && (text[0] == 'F' || text[0] == 'Q')) {
      const int n = parse_int(text.substr(1), "field shorthand");
      if (text[0] == 'F') {
        spec.kind = FieldKind::finite;
        spec.q = n;
        spec.precision = 1;
      } else {
        spec.kind = FieldKind::padic;
        spec.q = n;
        spec.precision = 8;
      }
      return spec;
    }
    throw ParseError("unrecognized field spec '" + text + "'");
  }
  const std::string head = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (head == "Fq") {
    spec.kind = FieldKind::finite;
    spec.q = parse_int(param(body, "q", text), "q");
    spec.precision = 1;
  } else if (head == "Qp") {
    spec.kind = FieldKind::padic;
    spec.q = parse_int(param(body, "p", text), "p");
    spec.precision = parse_int(param(body, "prec", text), "prec");
  } else if (head == "Laurent") {
    spec.kind = FieldKind::laurent;
    spec.q = parse_int(param(body, "q", text), "q");
    spec.precision = parse_int(param(body, "prec", text), "prec");
  } else {
    throw ParseError("unrecognized field kind '" + head + "'");
  }
  return spec;
}

std::string FieldSpec::to_string() const {
  switch (kind) {
    case FieldKind::finite:
      return "Fq:q=" + std::to_string(q);
    case FieldKind::padic:
      return "Qp:p=" + std::to_string(q) + ",prec=" + std::to_string(precision);
    case FieldKind::laurent:
      return "Laurent:q=" + std::to_string(q) +
             ",prec=" + std::to_string(precision);
  }
  return "?";
}

FieldClassification classify(const FieldSpec& spec) {
  FieldClassification c;
  const auto [p, e] = prime_power(spec.q);
  c.characteristic = spec.kind == FieldKind::padic ? 0 : p;
  c.residue_q = spec.q;
  switch (spec.kind) {
    case FieldKind::finite:
      c.tag = "finite";
      c.local = false;
      c.description = "finite field of order " + std::to_string(spec.q) +
                      "; discrete, hence not a local field";
      break;
    case FieldKind::laurent:
      c.tag = "laurent-series";
      c.local = true;
      c.description = "formal Laurent series over F_" + std::to_string(spec.q) +
                      "; every nondiscrete locally compact field of positive "
                      "characteristic has this form";
      break;
    case FieldKind::padic:
      c.tag = "p-adic";
      c.local = true;
      c.description = "p-adic field Q_" + std::to_string(spec.q) +
                      "; nonarchimedean locally compact fields of "
                      "characteristic 0 are its finite extensions";
      break;
  }
  return c;
}

struct Field::Impl {
  FieldSpec spec;
  std::uint64_t tag;
  FiniteField residue;
  std::vector<std::int64_t> ppow;  // p^0 .. p^precision (p-adic only)

  Impl(const FieldSpec& s, FiniteField f)
      : spec(s), tag(next_field_tag.fetch_add(1)), residue(std::move(f)) {}
};

Field::Field(const FieldSpec& spec) {
  if (spec.precision < 1) throw InvalidSpec("precision must be >= 1");
  if (spec.kind == FieldKind::padic && !is_prime(spec.q))
    throw InvalidSpec("p = " + std::to_string(spec.q) + " is not prime");
  if (prime_power(spec.q).first == 0)
    throw InvalidSpec("q = " + std::to_string(spec.q) + " is not a prime power");
  FieldSpec s = spec;
  if (s.kind == FieldKind::finite) s.precision = 1;
  auto impl = std::make_shared<Impl>(s, FiniteField(s.q));
  if (s.kind == FieldKind::padic) {
    std::int64_t v = 1;
    impl->ppow.push_back(1);
    for (int i = 0; i < s.precision; ++i) {
      if (v > (std::int64_t{1} << 62) / s.q)
        throw InvalidSpec("p^prec exceeds 2^62; lower the precision");
      v *= s.q;
      impl->ppow.push_back(v);
    }
  }
  impl_ = std::move(impl);
}

const FieldSpec& Field::spec() const { return impl_->spec; }
std::uint64_t Field::tag() const { return impl_->tag; }
const FiniteField& Field::residue_field() const { return impl_->residue; }

int Field::characteristic() const {
  return kind() == FieldKind::padic ? 0 : impl_->residue.characteristic();
}

void Field::check(const FieldElement& a) const {
  if (a.field_tag != impl_->tag)
    throw FieldMismatch("element belongs to a different field");
}

FieldElement Field::make_zero(int prec) const {
  FieldElement z;
  z.field_tag = impl_->tag;
  z.valuation = kInfinity;
  z.prec = kind() == FieldKind::finite ? kInfinity : prec;
  return z;
}

FieldElement Field::zero() const { return make_zero(kInfinity); }
FieldElement Field::one() const { return from_integer(1); }

FieldElement Field::uniformizer() const {
  if (kind() == FieldKind::finite)
    throw InvalidSpec("a finite field has no uniformizer");
  const int one_digit[] = {1};
  return from_digits(1, one_digit);
}

FieldElement Field::from_code(int code) const {
  const int q = residue_order();
  if (code < 0 || code >= q)
    throw std::out_of_range("residue code out of range");
  if (kind() == FieldKind::finite) {
    if (code == 0) return zero();
    FieldElement a;
    a.field_tag = impl_->tag;
    a.valuation = 0;
    a.unit = code;
    return a;
  }
  const int d[] = {code};
  return from_digits(0, d);
}

FieldElement Field::from_digits(int valuation, std::span<const int> digits) const {
  const int n = precision();
  std::size_t lead = 0;
  while (lead < digits.size() && digits[lead] == 0) ++lead;
  if (lead == digits.size()) return zero();
  valuation += static_cast<int>(lead);
  digits = digits.subspan(lead);
  if (kind() == FieldKind::finite) {
    if (valuation != 0 || digits.size() != 1)
      throw InvalidSpec("finite-field elements are single codes");
    return from_code(digits[0]);
  }
  FieldElement a;
  a.field_tag = impl_->tag;
  a.valuation = valuation;
  a.prec = valuation + n;
  const int q = residue_order();
  for (int d : digits)
    if (d < 0 || d >= q) throw std::out_of_range("digit out of range");
  if (kind() == FieldKind::padic) {
    std::int64_t u = 0;
    for (int i = std::min<int>(n, static_cast<int>(digits.size())) - 1; i >= 0; --i)
      u = u * q + digits[i];
    a.unit = u;
  } else {
    a.digits.assign(n, 0);
    for (int i = 0; i < n && i < static_cast<int>(digits.size()); ++i)
      a.digits[i] = digits[i];
  }
  return a;
}

FieldElement Field::from_integer(long long value) const {
  if (value == 0) return zero();
  if (kind() != FieldKind::padic)
    return from_code(residue_field().from_integer(value)) ;
  const std::int64_t p = residue_order();
  int v = 0;
  while (value % p == 0) {
    value /= p;
    ++v;
  }
  const std::int64_t mod = impl_->ppow[precision()];
  std::int64_t u = static_cast<std::int64_t>(value % mod);
  if (u < 0) u += mod;
  FieldElement a;
  a.field_tag = impl_->tag;
  a.valuation = v;
  a.prec = v + precision();
  a.unit = u;
  return a;
}

FieldElement Field::from_rational(long long num, long long den) const {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  return div(from_integer(num), from_integer(den));
}

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  if (a.is_zero() && a.is_exact()) return b;
  if (b.is_zero() && b.is_exact()) return a;
  if (kind() == FieldKind::finite) {
    const int s = impl_->residue.add(static_cast<int>(a.unit), static_cast<int>(b.unit));
    return s == 0 ? zero() : from_code(s);
  }
  const int prec = std::min(a.prec, b.prec);
  if (a.is_zero() && b.is_zero()) return make_zero(prec);
  const int m = std::min(a.valuation, b.valuation);
  if (prec <= m) return make_zero(prec);
  const int r = prec - m;

  FieldElement out;
  out.field_tag = impl_->tag;
  if (kind() == FieldKind::padic) {
    const std::int64_t mod = impl_->ppow[r];
    auto term = [&](const FieldElement& x) -> std::int64_t {
      if (x.is_zero() || x.valuation - m >= r) return 0;
      return mulmod(x.unit % mod, impl_->ppow[x.valuation - m], mod);
    };
    std::int64_t s = (term(a) + term(b)) % mod;
    if (s == 0) return make_zero(prec);
    const std::int64_t p = residue_order();
    int k = 0;
    while (s % p == 0) {
      s /= p;
      ++k;
    }
    out.valuation = m + k;
    out.prec = prec;
    out.unit = s;
    return out;
  }

  const FiniteField& F = impl_->residue;
  std::vector<int> acc(r, 0);
  for (const FieldElement* x : {&a, &b}) {
    if (x->is_zero()) continue;
    for (std::size_t i = 0; i < x->digits.size(); ++i) {
      const int pos = x->valuation - m + static_cast<int>(i);
      if (pos >= r) break;
      acc[pos] = F.add(acc[pos], x->digits[i]);
    }
  }
  int k = 0;
  while (k < r && acc[k] == 0) ++k;
  if (k == r) return make_zero(prec);
  out.valuation = m + k;
  out.prec = prec;
  out.digits.assign(acc.begin() + k, acc.end());
  return out;
}

FieldElement Field::neg(const FieldElement& a) const {
  check(a);
  if (a.is_zero()) return a;
  FieldElement out = a;
  switch (kind()) {
    case FieldKind::finite:
      out.unit = impl_->residue.neg(static_cast<int>(a.unit));
      break;
    case FieldKind::padic:
      out.unit = impl_->ppow[a.relative_precision()] - a.unit;
      break;
    case FieldKind::laurent:
      for (int& d : out.digits) d = impl_->residue.neg(d);
      break;
  }
  return out;
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
  return add(a, neg(b));
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  if (a.is_zero() || b.is_zero()) {
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact()))
      return zero();
    const int ka = a.is_zero() ? a.prec : a.valuation;
    const int kb = b.is_zero() ? b.prec : b.valuation;
    return make_zero(sat_add(ka, kb));
  }
  if (kind() == FieldKind::finite)
    return from_code(impl_->residue.mul(static_cast<int>(a.unit), static_cast<int>(b.unit)));

  const int r = std::min(a.relative_precision(), b.relative_precision());
  FieldElement out;
  out.field_tag = impl_->tag;
  out.valuation = a.valuation + b.valuation;
  out.prec = out.valuation + r;
  if (kind() == FieldKind::padic) {
    const std::int64_t mod = impl_->ppow[r];
    out.unit = mulmod(a.unit % mod, b.unit % mod, mod);
    return out;
  }
  const FiniteField& F = impl_->residue;
  out.digits.assign(r, 0);
  for (int i = 0; i < r; ++i) {
    if (a.digits[i] == 0) continue;
    for (int j = 0; i + j < r; ++j)
      out.digits[i + j] = F.add(out.digits[i + j], F.mul(a.digits[i], b.digits[j]));
  }
  return out;
}

FieldElement Field::inv(const FieldElement& a) const {
  check(a);
  if (a.is_zero()) {
    if (a.is_exact()) throw DivisionByZero("inverse of zero");
    throw PrecisionExhausted("inverse of a zero known only to O(pi^" +
                             std::to_string(a.prec) + ")");
  }
  if (kind() == FieldKind::finite)
    return from_code(impl_->residue.inv(static_cast<int>(a.unit)));
  const int r = a.relative_precision();
  FieldElement out;
  out.field_tag = impl_->tag;
  out.valuation = -a.valuation;
  out.prec = out.valuation + r;
  if (kind() == FieldKind::padic) {
    out.unit = invmod(a.unit, impl_->ppow[r]);
    return out;
  }
  const FiniteField& F = impl_->residue;
  out.digits.assign(r, 0);
  const int b0 = F.inv(a.digits[0]);
  out.digits[0] = b0;
  for (int n = 1; n < r; ++n) {
    int s = 0;
    for (int i = 1; i <= n; ++i) s = F.add(s, F.mul(a.digits[i], out.digits[n - i]));
    out.digits[n] = F.neg(F.mul(b0, s));
  }
  return out;
}

FieldElement Field::div(const FieldElement& a, const FieldElement& b) const {
  return mul(a, inv(b));
}

FieldElement Field::pow(const FieldElement& a, long long k) const {
  if (k < 0) return inv(pow(a, -k));
  FieldElement result = one();
  FieldElement base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

FieldElement Field::truncate(const FieldElement& a, int abs_prec) const {
  check(a);
  if (kind() == FieldKind::finite || abs_prec >= a.prec) return a;
  return add(a, make_zero(abs_prec));
}

int Field::valuation(const FieldElement& a) const {
  check(a);
  return a.valuation;
}

bool Field::equal(const FieldElement& a, const FieldElement& b) const {
  return sub(a, b).is_zero();
}

int Field::residue(const FieldElement& a) const {
  check(a);
  if (a.is_zero()) {
    if (a.prec < 1) throw PrecisionExhausted("residue of O(pi^0)");
    return 0;
  }
  if (a.valuation < 0) throw std::domain_error("residue of a non-integral element");
  if (a.valuation > 0) return 0;
  switch (kind()) {
    case FieldKind::finite:
      return static_cast<int>(a.unit);
    case FieldKind::padic:
      return static_cast<int>(a.unit % residue_order());
    case FieldKind::laurent:
      return a.digits[0];
  }
  return 0;
}

std::vector<int> Field::expansion(const FieldElement& a, int from, int to) const {
  check(a);
  if (kind() == FieldKind::finite)
    throw InvalidSpec("finite-field elements have no pi-adic expansion");
  if (to > a.prec)
    throw PrecisionExhausted("digit " + std::to_string(to - 1) +
                             " is beyond the known precision " +
                             std::to_string(a.prec));
  std::vector<int> out(std::max(0, to - from), 0);
  if (a.is_zero()) return out;
  if (kind() == FieldKind::laurent) {
    for (int e = std::max(from, a.valuation); e < to; ++e)
      out[e - from] = a.digits[e - a.valuation];
    return out;
  }
  std::int64_t u = a.unit;
  const std::int64_t p = residue_order();
  for (int e = a.valuation; e < to; ++e) {
    if (e >= from) out[e - from] = static_cast<int>(u % p);
    u /= p;
  }
  return out;
}

FieldElement Field::frobenius(const FieldElement& a) const {
  check(a);
  const int p = impl_->residue.characteristic();
  if (kind() != FieldKind::laurent) return pow(a, p);
  if (a.is_zero()) {
    return a.is_exact() ? a : make_zero(a.prec > kInfinity / p ? kInfinity : a.prec * p);
  }
  const int r = std::min(a.relative_precision() * p, precision());
  FieldElement out;
  out.field_tag = impl_->tag;
  out.valuation = a.valuation * p;
  out.prec = out.valuation + r;
  out.digits.assign(r, 0);
  for (int i = 0; i * p < r; ++i) out.digits[i * p] = impl_->residue.pow(a.digits[i], p);
  return out;
}

FieldElement Field::frobenius_root(const FieldElement& a) const {
  check(a);
  const FiniteField& F = impl_->residue;
  const int p = F.characteristic();
  switch (kind()) {
    case FieldKind::padic:
      throw FrobeniusNotInvertible("characteristic 0 has no Frobenius");
    case FieldKind::finite:
      if (a.is_zero()) return a;
      return from_code(F.pth_root(static_cast<int>(a.unit)));
    case FieldKind::laurent:
      break;
  }
  if (a.is_zero()) {
    if (a.is_exact()) return a;
    const int k = a.prec >= 0 ? (a.prec + p - 1) / p : -((-a.prec) / p);
    return make_zero(k);
  }
  if (((a.valuation % p) + p) % p != 0)
    throw FrobeniusNotInvertible("valuation " + std::to_string(a.valuation) +
                                 " is not divisible by p");
  const int r = a.relative_precision();
  for (int i = 0; i < r; ++i)
    if (i % p != 0 && a.digits[i] != 0)
      throw FrobeniusNotInvertible("element is not a p-th power");
  FieldElement out;
  out.field_tag = impl_->tag;
  out.valuation = a.valuation / p;
  const int rr = (r + p - 1) / p;
  out.prec = out.valuation + rr;
  out.digits.assign(rr, 0);
  for (int j = 0; j < rr; ++j) out.digits[j] = F.pth_root(a.digits[j * p]);
  return out;
}

FrobeniusDecomposition Field::frobenius_decompose(const FieldElement& z) const {
  check(z);
  if (kind() != FieldKind::laurent)
    throw InvalidSpec("Frobenius decomposition needs a Laurent-series field");
  const int p = impl_->residue.characteristic();
  FrobeniusDecomposition out;
  for (int i = 0; i < p; ++i) {
    // Terms of z at exponents congruent to i mod p, shifted down by i.
    FieldElement part = make_zero(z.is_exact() ? kInfinity : z.prec - i);
    if (!z.is_zero()) {
      std::vector<int> acc;
      int first = kInfinity;
      for (int e = z.valuation; e < z.prec; ++e) {
        if (((e - i) % p + p) % p != 0) continue;
        const int d = z.digits[e - z.valuation];
        if (first == kInfinity) {
          if (d == 0) continue;
          first = e;
        }
        acc.resize(e - first + 1, 0);
        acc[e - first] = d;
      }
      if (first != kInfinity) {
        part.valuation = first - i;
        part.prec = z.prec - i;
        part.digits.assign(part.prec - part.valuation, 0);
        for (std::size_t k = 0; k < acc.size(); ++k) part.digits[k] = acc[k];
      }
    }
    out.components.push_back(frobenius_root(part));
  }
  FieldElement sum = zero();
  FieldElement tpow = one();
  const FieldElement t = uniformizer();
  for (int i = 0; i < p; ++i) {
    sum = add(sum, mul(frobenius(out.components[i]), tpow));
    tpow = mul(tpow, t);
  }
  out.reconstructs = equal(sum, z);
  return out;
}

FieldElement Field::random_nonzero(std::mt19937_64& rng, int min_val,
                                   int max_val) const {
  const int q = residue_order();
  std::uniform_int_distribution<int> nonzero_digit(1, q - 1);
  if (kind() == FieldKind::finite) return from_code(nonzero_digit(rng));
  std::uniform_int_distribution<int> val(min_val, max_val);
  std::uniform_int_distribution<int> digit(0, q - 1);
  std::vector<int> digits(precision());
  digits[0] = nonzero_digit(rng);
  for (int i = 1; i < precision(); ++i) digits[i] = digit(rng);
  return from_digits(val(rng), digits);
}

FieldElement Field::random_element(std::mt19937_64& rng, int min_val,
                                   int max_val) const {
  std::uniform_int_distribution<int> pick(0, residue_order());
  if (pick(rng) == 0) return zero();
  return random_nonzero(rng, min_val, max_val);
}

FieldElement Field::parse_element(const std::string& literal) const {
  std::string s;
  for (char c : literal)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty field literal");
  // The big-O tail written by format() carries no digits.
  if (s.rfind("O(", 0) == 0 && s.back() == ')') return zero();
  if (const auto tail = s.rfind("+O("); tail != std::string::npos && s.back() == ')')
    s.erase(tail);

  if (kind() == FieldKind::finite) {
    if (s.rfind("g^", 0) == 0)
      return from_code(residue_field().pow(residue_field().primitive(),
                                           parse_ll(s.substr(2), "exponent")));
    const long long code = parse_ll(s, "finite-field code");
    if (code < 0) return neg(from_code(static_cast<int>((-code) % residue_order())));
    if (code >= residue_order()) throw ParseError("code out of range: " + s);
    return from_code(static_cast<int>(code));
  }
  if (kind() == FieldKind::padic) {
    if (const auto star = s.find('*'); star != std::string::npos) {
      const std::string base = std::to_string(residue_order()) + "^";
      if (s.compare(star + 1, base.size(), base) != 0) throw ParseError("bad p-adic literal '" + s + "'");
      return mul(from_integer(parse_ll(s.substr(0, star), "integer")),
                 pow(uniformizer(), parse_int(s.substr(star + 1 + base.size()), "exponent")));
    }
    const auto slash = s.find('/');
    if (slash == std::string::npos) return from_integer(parse_ll(s, "integer"));
    return from_rational(parse_ll(s.substr(0, slash), "numerator"),
                         parse_ll(s.substr(slash + 1), "denominator"));
  }

  // Laurent: split into signed terms.
  FieldElement total = zero();
  std::size_t pos = 0;
  const FiniteField& F = residue_field();
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' &&
           !(s[end] == '-' && end > pos && s[end - 1] != '^'))
      ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw ParseError("empty term in '" + literal + "'");
    int coeff = 1;
    int exponent = 0;
    const auto tpos = term.find('t');
    std::string coeff_str = tpos == std::string::npos ? term : term.substr(0, tpos);
    if (!coeff_str.empty() && coeff_str.back() == '*') coeff_str.pop_back();
    if (!coeff_str.empty()) {
      const long long c = parse_ll(coeff_str, "coefficient");
      if (c < 0 || c >= F.order()) throw ParseError("coefficient out of range: " + coeff_str);
      coeff = static_cast<int>(c);
    }
    if (tpos != std::string::npos) {
      const std::string rest = term.substr(tpos + 1);
      if (rest.empty()) {
        exponent = 1;
      } else if (rest[0] == '^') {
        exponent = parse_int(rest.substr(1), "exponent");
      } else {
        throw ParseError("bad term '" + term + "'");
      }
    }
    if (negative) coeff = F.neg(coeff);
    const int d[] = {coeff};
    total = add(total, from_digits(exponent, d));
  }
  return total;
}

std::string Field::format(const FieldElement& a) const {
  check(a);
  std::ostringstream out;
  const std::string pi = kind() == FieldKind::padic ? std::to_string(residue_order()) : "t";
  if (kind() == FieldKind::finite) return std::to_string(a.is_zero() ? 0 : a.unit);
  if (a.is_zero()) {
    if (a.is_exact()) return "0";
    out << "O(" << pi << "^" << a.prec << ")";
    return out.str();
  }
  if (kind() == FieldKind::padic) {
    out << a.unit << "*" << pi << "^" << a.valuation;
  } else {
    bool first = true;
    for (std::size_t i = 0; i < a.digits.size(); ++i) {
      if (a.digits[i] == 0) continue;
      if (!first) out << " + ";
      first = false;
      out << a.digits[i] << "*t^" << a.valuation + static_cast<int>(i);
    }
  }
  out << " + O(" << pi << "^" << a.prec << ")";
  return out.str();
}

}  // namespace bldg
