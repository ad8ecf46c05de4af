#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "modinv/error.hpp"

namespace modinv {

/// Packed field element: the coefficients c_0 + c_1 t + ... + c_{k-1} t^{k-1}
/// stored as the integer sum c_i p^i. Always in [0, q).
using Elem = std::uint16_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_p or F_{p^k} = F_p[t]/(m(t)). Immutable once built; share through FieldPtr.
///
/// Small fields (q <= 256) keep full addition/multiplication tables, which is
/// what the slice linear algebra leans on. Larger fields fall back to direct
/// polynomial arithmetic.
class Field {
 public:
  /// Prime field F_p. Throws UsageError if p is not prime or p > 2^16.
  static FieldPtr prime(std::uint32_t p);

  /// Extension field. `modulus` is the ascending coefficient list of a monic
  /// degree-k polynomial (length k+1). A length-2 modulus gives F_p itself.
  /// Irreducibility is verified by trial division.
  static FieldPtr extension(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return k_ == 1; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  bool same_as(const Field& other) const noexcept {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
  }

  static constexpr Elem zero() noexcept { return 0; }
  static constexpr Elem one() noexcept { return 1; }

  Elem add(Elem a, Elem b) const noexcept {
    if (small_) return add_[a * q_ + b];
    return add_slow(a, b);
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem neg(Elem a) const noexcept {
    if (small_) return neg_[a];
    return neg_slow(a);
  }
  Elem mul(Elem a, Elem b) const noexcept {
    if (small_) return mul_[a * q_ + b];
    return mul_slow(a, b);
  }
  /// Throws DivisionByZero for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// a^p, computed by repeated multiplication.
  Elem frobenius(Elem a) const noexcept;

  /// Image of an integer in the prime subfield.
  Elem from_int(long long v) const noexcept;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  /// The generator t of the extension (t itself when k >= 2; 0 is never returned).
  Elem generator() const noexcept { return k_ >= 2 ? static_cast<Elem>(p_) : Elem{1}; }

  /// "c" for prime fields, "c0+c1*t" style for extensions (zero coefficients dropped).
  std::string format(Elem a) const;

  /// Raw tables for hot loops; only valid when has_tables().
  bool has_tables() const noexcept { return small_; }
  const Elem* add_table() const noexcept { return add_.data(); }
  const Elem* mul_table() const noexcept { return mul_.data(); }
  const Elem* neg_table() const noexcept { return neg_.data(); }

 private:
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus);

  Elem add_slow(Elem a, Elem b) const noexcept;
  Elem neg_slow(Elem a) const noexcept;
  Elem mul_slow(Elem a, Elem b) const noexcept;
  Elem inv_slow(Elem a) const;

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;  // empty when k == 1
  bool small_ = false;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

bool is_prime(std::uint32_t n) noexcept;

/// Trial-division irreducibility test for a monic polynomial over F_p
/// (ascending coefficients).
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic);

/// A field element bundled with its field. Arithmetic between scalars of
/// different fields throws UsageError.
class Scalar {
 public:
  Scalar(FieldPtr field, Elem code);
  static Scalar from_coeffs(FieldPtr field, const std::vector<std::uint32_t>& coeffs);
  static Scalar from_int(FieldPtr field, long long v);

  const FieldPtr& field() const noexcept { return field_; }
  Elem code() const noexcept { return code_; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  Scalar inverse() const;
  Scalar frobenius() const;
  Scalar pow(std::uint64_t e) const;
  std::string to_string() const { return field_->format(code_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  FieldPtr field_;
  Elem code_;
};

Scalar field_add(const Scalar& a, const Scalar& b);
Scalar field_mul(const Scalar& a, const Scalar& b);
Scalar field_inv(const Scalar& a);
Scalar frobenius(const Scalar& a);

}  // namespace modinv
