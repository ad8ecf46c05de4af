#include "modinv/gf.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace modinv {

namespace {

using UPoly = std::vector<std::int64_t>;  // ascending coefficients mod p

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // extended Euclid on integers
  std::int64_t t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw DivisionByZero();
  return (t % p + p) % p;
}

// remainder of a modulo b over F_p; b must be nonzero after trimming
UPoly poly_mod(UPoly a, const UPoly& b, std::int64_t p) {
  trim(a);
  const std::int64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::int64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

// quotient and remainder
std::pair<UPoly, UPoly> poly_divmod(UPoly a, const UPoly& b, std::int64_t p) {
  trim(a);
  UPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  const std::int64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::int64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    }
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly poly_sub_mul(const UPoly& a, const UPoly& q, const UPoly& b, std::int64_t p) {
  // a - q*b
  UPoly out(std::max(a.size(), q.size() + b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = ((out[i + j] - q[i] * b[j]) % p + p) % p;
  trim(out);
  return out;
}

}  // namespace

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic) {
  const std::size_t k = monic.size() - 1;
  if (k <= 1) return k == 1;
  UPoly f(monic.begin(), monic.end());
  // every monic divisor candidate of degree 1..k/2
  for (std::size_t deg = 1; deg <= k / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      UPoly g(deg + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < deg; ++i) {
        g[i] = static_cast<std::int64_t>(v % p);
        v /= p;
      }
      g[deg] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldPtr Field::prime(std::uint32_t p) { return extension(p, {0, 1}); }

FieldPtr Field::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw UsageError("field characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2) throw UsageError("field modulus must have degree >= 1");
  if (modulus.back() != 1) throw UsageError("field modulus must be monic");
  for (auto c : modulus)
    if (c >= p) throw UsageError("field modulus coefficient out of range [0, p)");
  const std::size_t k = modulus.size() - 1;
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < k; ++i) {
    q *= p;
    if (q > 65536) throw UsageError("field order exceeds 2^16");
  }
  if (k == 1) {
    modulus.clear();
  } else if (!is_irreducible(p, modulus)) {
    throw UsageError("field modulus is reducible over F_" + std::to_string(p));
  }
  return FieldPtr(new Field(p, std::move(modulus)));
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), k_(modulus.empty() ? 1 : static_cast<std::uint32_t>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  q_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
  if (q_ <= 256) {
    neg_.resize(q_);
    inv_.resize(q_);
    add_.resize(std::size_t{q_} * q_);
    mul_.resize(std::size_t{q_} * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      neg_[a] = neg_slow(static_cast<Elem>(a));
      inv_[a] = a == 0 ? 0 : inv_slow(static_cast<Elem>(a));
      for (std::uint32_t b = 0; b < q_; ++b) {
        add_[a * q_ + b] = add_slow(static_cast<Elem>(a), static_cast<Elem>(b));
        mul_[a * q_ + b] = mul_slow(static_cast<Elem>(a), static_cast<Elem>(b));
      }
    }
    small_ = true;
  }
}

Elem Field::add_slow(Elem a, Elem b) const noexcept {
  if (k_ == 1) return static_cast<Elem>((std::uint32_t{a} + b) % p_);
  std::uint32_t out = 0, scale = 1, x = a, y = b;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

Elem Field::neg_slow(Elem a) const noexcept {
  if (k_ == 1) return static_cast<Elem>((p_ - a % p_) % p_);
  std::uint32_t out = 0, scale = 1, x = a;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

Elem Field::mul_slow(Elem a, Elem b) const noexcept {
  if (k_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  const auto ca = coeffs(a), cb = coeffs(b);
  UPoly prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i)
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::int64_t{ca[i]} * cb[j]) % p_;
  UPoly m(modulus_.begin(), modulus_.end());
  const UPoly r = poly_mod(prod, m, p_);
  std::vector<std::uint32_t> out(k_, 0);
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = static_cast<std::uint32_t>(r[i]);
  return from_coeffs(out);
}

Elem Field::inv_slow(Elem a) const {
  if (a == 0) throw DivisionByZero();
  if (k_ == 1) return static_cast<Elem>(inv_mod(a, p_));
  // extended Euclid in F_p[t] against the modulus
  const auto ca = coeffs(a);
  UPoly r0(modulus_.begin(), modulus_.end()), r1(ca.begin(), ca.end());
  trim(r1);
  UPoly s0, s1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p_);
    UPoly s2 = poly_sub_mul(s0, q, s1, p_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant (gcd); normalize
  const std::int64_t c = inv_mod(r0[0], p_);
  std::vector<std::uint32_t> out(k_, 0);
  for (std::size_t i = 0; i < s0.size() && i < k_; ++i) out[i] = static_cast<std::uint32_t>(s0[i] * c % p_);
  return from_coeffs(out);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DivisionByZero();
  if (small_) return inv_[a];
  return inv_slow(a);
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = 1, base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Elem Field::frobenius(Elem a) const noexcept {
  Elem r = 1;
  for (std::uint32_t i = 0; i < p_; ++i) r = mul(r, a);
  return r;
}

Elem Field::from_int(long long v) const noexcept {
  const long long p = p_;
  return static_cast<Elem>(((v % p) + p) % p);
}

Elem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > k_) throw UsageError("scalar has more than k coefficients");
  std::uint32_t out = 0, scale = 1;
  for (auto c : coeffs) {
    if (c >= p_) throw UsageError("scalar coefficient out of range [0, p)");
    out += c * scale;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> out(k_);
  std::uint32_t x = a;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

std::string Field::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  const auto c = coeffs(a);
  std::string out;
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

namespace {
void require_same(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field() && !a.field()->same_as(*b.field()))
    throw UsageError("scalars belong to different fields");
}
}  // namespace

Scalar::Scalar(FieldPtr field, Elem code) : field_(std::move(field)), code_(code) {
  if (!field_) throw UsageError("scalar without a field");
  if (code_ >= field_->order()) throw UsageError("scalar code out of range");
}

Scalar Scalar::from_coeffs(FieldPtr field, const std::vector<std::uint32_t>& coeffs) {
  const Elem c = field->from_coeffs(coeffs);
  return Scalar(std::move(field), c);
}

Scalar Scalar::from_int(FieldPtr field, long long v) {
  const Elem c = field->from_int(v);
  return Scalar(std::move(field), c);
}

Scalar Scalar::inverse() const { return Scalar(field_, field_->inv(code_)); }
Scalar Scalar::frobenius() const { return Scalar(field_, field_->frobenius(code_)); }
Scalar Scalar::pow(std::uint64_t e) const { return Scalar(field_, field_->pow(code_, e)); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar(a.field_, a.field_->add(a.code_, b.code_));
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar(a.field_, a.field_->sub(a.code_, b.code_));
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar(a.field_, a.field_->mul(a.code_, b.code_));
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar(a.field_, a.field_->div(a.code_, b.code_));
}
Scalar operator-(const Scalar& a) { return Scalar(a.field_, a.field_->neg(a.code_)); }
bool operator==(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return a.code_ == b.code_;
}

Scalar field_add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar field_mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar field_inv(const Scalar& a) { return a.inverse(); }
Scalar frobenius(const Scalar& a) { return a.frobenius(); }

}  // namespace modinv
