#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "modinv/gf.hpp"
#include "modinv/linalg.hpp"

namespace modinv {

inline constexpr std::size_t kMaxVars = 32;
using Exp = std::uint16_t;

/// Exponent vector. Unused trailing slots are zero, so equality and hashing
/// never need the ring.
struct Monomial {
  std::array<Exp, kMaxVars> e{};
  std::uint32_t deg = 0;

  static Monomial one() { return {}; }
  static Monomial var(std::size_t i, Exp power = 1) {
    Monomial m;
    m.e[i] = power;
    m.deg = power;
    return m;
  }

  Exp operator[](std::size_t i) const noexcept { return e[i]; }
  bool divides(const Monomial& o) const noexcept {
    if (deg > o.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  bool coprime(const Monomial& o) const noexcept {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] != 0 && o.e[i] != 0) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) noexcept {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<Exp>(a.e[i] + b.e[i]);
    m.deg = a.deg + b.deg;
    return m;
  }
  /// a / b; caller guarantees b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) noexcept {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<Exp>(a.e[i] - b.e[i]);
    m.deg = a.deg - b.deg;
    return m;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      m.e[i] = std::max(a.e[i], b.e[i]);
      m.deg += m.e[i];
    }
    return m;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.deg == b.deg && std::memcmp(a.e.data(), b.e.data(), sizeof(a.e)) == 0;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : m.e) h = (h ^ x) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

/// DegLexAsc: (weighted) degree first, ties by the exponent of x_n, then
/// x_{n-1}, ... (so x_1 < x_2 < ... < x_n).
/// LexBlockElim(b): variables [0, b) form the eliminated block, compared first
/// by DegLexAsc restricted to the block, then the rest by DegLexAsc.
class MonomialOrder {
 public:
  enum class Kind { DegLexAsc, LexBlockElim };

  static MonomialOrder deglex(std::vector<std::uint32_t> weights = {}) {
    return MonomialOrder(Kind::DegLexAsc, 0, std::move(weights));
  }
  static MonomialOrder block_elim(std::size_t block, std::vector<std::uint32_t> weights = {}) {
    return MonomialOrder(Kind::LexBlockElim, block, std::move(weights));
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t block() const noexcept { return block_; }
  const std::vector<std::uint32_t>& weights() const noexcept { return weights_; }

  /// Negative, zero or positive as a <, =, > b. `n` is the number of variables.
  int compare(const Monomial& a, const Monomial& b, std::size_t n) const noexcept;
  std::uint64_t weighted_degree(const Monomial& m, std::size_t lo, std::size_t hi) const noexcept;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) noexcept {
    return a.kind_ == b.kind_ && a.block_ == b.block_ && a.weights_ == b.weights_;
  }

 private:
  MonomialOrder(Kind kind, std::size_t block, std::vector<std::uint32_t> weights)
      : kind_(kind), block_(block), weights_(std::move(weights)) {}
  int compare_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const noexcept;

  Kind kind_;
  std::size_t block_;
  std::vector<std::uint32_t> weights_;  // empty: all 1
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// k[x_1..x_n] with a fixed monomial order. Names default to x1..xn.
class Ring {
 public:
  static RingPtr make(FieldPtr field, std::size_t nvars, MonomialOrder order = MonomialOrder::deglex(),
                      std::vector<std::string> names = {});
  RingPtr with_order(MonomialOrder order) const;

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return n_; }
  const MonomialOrder& order() const noexcept { return order_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  int compare(const Monomial& a, const Monomial& b) const noexcept { return order_.compare(a, b, n_); }
  bool less(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) < 0; }
  std::string format(const Monomial& m) const;
  bool compatible(const Ring& o) const noexcept {
    return n_ == o.n_ && order_ == o.order_ && field_->same_as(*o.field_);
  }

  /// All monomials of total degree d (unweighted), sorted descending in this order.
  std::vector<Monomial> monomials_of_degree(std::uint32_t d) const;

 private:
  Ring(FieldPtr field, std::size_t n, MonomialOrder order, std::vector<std::string> names)
      : field_(std::move(field)), n_(n), order_(std::move(order)), names_(std::move(names)) {}

  FieldPtr field_;
  std::size_t n_;
  MonomialOrder order_;
  std::vector<std::string> names_;
};

struct Term {
  Monomial m;
  Elem c;
};

/// Sparse polynomial; terms sorted strictly descending in the ring's order,
/// no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, std::vector<Term> terms);  // normalizes

  static Polynomial constant(RingPtr ring, Elem c);
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial monomial(RingPtr ring, const Monomial& m, Elem c = 1);
  /// Linear form sum_i coeffs[i] x_i.
  static Polynomial linear(RingPtr ring, const std::vector<Elem>& coeffs);

  const RingPtr& ring() const noexcept { return ring_; }
  const Field& field() const noexcept { return *ring_->field(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0); }

  /// Throws UsageError on the zero polynomial.
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().m; }
  Elem leading_coefficient() const { return leading_term().c; }
  Elem coefficient(const Monomial& m) const noexcept;

  std::uint32_t total_degree() const noexcept;  // -> 0 for zero
  bool is_homogeneous() const noexcept;
  std::uint32_t degree_in(std::size_t var) const noexcept;
  bool involves(std::size_t var) const noexcept;
  /// Bitmask of variables that occur.
  std::uint64_t support() const noexcept;

  Polynomial monic() const;
  Polynomial scaled(Elem c) const;
  Polynomial mul_term(const Monomial& m, Elem c) const;
  Polynomial pow(std::uint32_t e) const;
  /// Same terms in another ring with the same variables (re-sorted).
  Polynomial in_ring(RingPtr ring) const;
  /// Homogeneous component of total degree d.
  Polynomial component(std::uint32_t d) const;

  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept;

  /// this -= c * m * g  (the inner step of reduction); keeps sorted order.
  void sub_mul_term(Elem c, const Monomial& m, const Polynomial& g);

 private:
  void normalize();

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Leading monomial under an explicit order (f is re-sorted if needed).
Monomial leading_monomial(const Polynomial& f, const MonomialOrder& ord);

/// x_i -> sum_j M[j][i] x_j (column i holds the image of x_i). Composition
/// matches matrix products: substituting by A*B equals A applied after B.
class LinearAction {
 public:
  LinearAction(RingPtr ring, const Matrix& m);
  const Matrix& matrix() const noexcept { return m_; }
  Polynomial apply(const Polynomial& f);
  Polynomial image_of(const Monomial& mono);

 private:
  const Polynomial& var_power(std::size_t i, Exp k);

  RingPtr ring_;
  Matrix m_;
  std::vector<std::vector<Polynomial>> powers_;  // powers_[i][k] = image(x_i)^k
  std::unordered_map<Monomial, Polynomial, MonomialHash> cache_;
};

/// Throws UsageError when M is singular.
Polynomial apply_linear_substitution(const Polynomial& f, const Matrix& m);

/// Binomial coefficient mod p via Lucas' theorem.
std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) noexcept;

/// Coefficient of t^l in f(x_1, ..., x_j + t, ..., x_n); j is 0-based.
Polynomial delta(std::size_t j, std::uint32_t l, const Polynomial& f);

/// f with the listed variables (0-based) set to zero.
Polynomial evaluate_at_zero(const Polynomial& f, const std::vector<std::size_t>& vars);

/// Parses text such as "(t-1)*y^3 - t*y*x^2 + z*x^2". Variables are the ring's
/// names; "t" denotes the extension generator unless it is a variable name.
Polynomial parse_polynomial(const std::string& text, const RingPtr& ring);

}  // namespace modinv
