#include "modinv/poly.hpp"

#include <algorithm>
#include <cctype>

namespace modinv {

// ---------------------------------------------------------------------------
// MonomialOrder

std::uint64_t MonomialOrder::weighted_degree(const Monomial& m, std::size_t lo, std::size_t hi) const noexcept {
  std::uint64_t d = 0;
  if (weights_.empty()) {
    for (std::size_t i = lo; i < hi; ++i) d += m.e[i];
  } else {
    for (std::size_t i = lo; i < hi; ++i) d += std::uint64_t{m.e[i]} * (i < weights_.size() ? weights_[i] : 1U);
  }
  return d;
}

int MonomialOrder::compare_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const noexcept {
  std::uint64_t da, db;
  if (weights_.empty() && lo == 0 && hi >= kMaxVars) {
    da = a.deg;
    db = b.deg;
  } else {
    da = weighted_degree(a, lo, hi);
    db = weighted_degree(b, lo, hi);
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b, std::size_t n) const noexcept {
  if (kind_ == Kind::DegLexAsc) {
    if (weights_.empty()) {
      if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
      for (std::size_t i = n; i-- > 0;)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
      return 0;
    }
    return compare_range(a, b, 0, n);
  }
  const int c = compare_range(a, b, 0, block_);
  if (c != 0) return c;
  return compare_range(a, b, block_, n);
}

// ---------------------------------------------------------------------------
// Ring

RingPtr Ring::make(FieldPtr field, std::size_t nvars, MonomialOrder order, std::vector<std::string> names) {
  if (nvars > kMaxVars) throw UsageError("too many variables (max " + std::to_string(kMaxVars) + ")");
  if (order.kind() == MonomialOrder::Kind::LexBlockElim && order.block() > nvars)
    throw UsageError("elimination block exceeds the number of variables");
  if (names.empty()) {
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  if (names.size() != nvars) throw UsageError("variable name count does not match the ring dimension");
  return RingPtr(new Ring(std::move(field), nvars, std::move(order), std::move(names)));
}

RingPtr Ring::with_order(MonomialOrder order) const { return make(field_, n_, std::move(order), names_); }

std::string Ring::format(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names_[i];
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<Monomial> Ring::monomials_of_degree(std::uint32_t d) const {
  std::vector<Monomial> out;
  if (n_ == 0) {
    if (d == 0) out.push_back(Monomial::one());
    return out;
  }
  Monomial m;
  // enumerate compositions of d into n parts recursively
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == n_) {
      m.e[i] = static_cast<Exp>(left);
      m.deg = d;
      out.push_back(m);
      m.e[i] = 0;
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      m.e[i] = static_cast<Exp>(k);
      rec(i + 1, left - k);
    }
    m.e[i] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  normalize();
}

void Polynomial::normalize() {
  const Ring& r = *ring_;
  std::sort(terms_.begin(), terms_.end(), [&r](const Term& a, const Term& b) { return r.compare(a.m, b.m) > 0; });
  const Field& k = *r.field();
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    Term t = terms_[i];
    std::size_t j = i + 1;
    while (j < terms_.size() && terms_[j].m == t.m) t.c = k.add(t.c, terms_[j++].c);
    if (t.c != 0) terms_[out++] = t;
    i = j;
  }
  terms_.resize(out);
}

Polynomial Polynomial::constant(RingPtr ring, Elem c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial::one(), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->nvars()) throw UsageError("variable index out of range");
  Polynomial p(std::move(ring));
  p.terms_.push_back({Monomial::var(i), 1});
  return p;
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, Elem c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::linear(RingPtr ring, const std::vector<Elem>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) terms.push_back({Monomial::var(i), coeffs[i]});
  return Polynomial(std::move(ring), std::move(terms));
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw UsageError("leading term of the zero polynomial is undefined");
  return terms_.front();
}

Elem Polynomial::coefficient(const Monomial& m) const noexcept {
  // binary search on the descending order
  const Ring& r = *ring_;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [&r](const Term& t, const Monomial& x) { return r.compare(t.m, x) > 0; });
  if (it != terms_.end() && it->m == m) return it->c;
  return 0;
}

std::uint32_t Polynomial::total_degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.deg);
  return d;
}

bool Polynomial::is_homogeneous() const noexcept {
  for (const auto& t : terms_)
    if (t.m.deg != terms_.front().m.deg) return false;
  return true;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.m.e[var]);
  return d;
}

bool Polynomial::involves(std::size_t var) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.m.e[var] != 0; });
}

std::uint64_t Polynomial::support() const noexcept {
  std::uint64_t mask = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if (t.m.e[i] != 0) mask |= std::uint64_t{1} << i;
  return mask;
}

Polynomial Polynomial::scaled(Elem c) const {
  Polynomial p(ring_);
  if (c == 0) return p;
  p.terms_ = terms_;
  const Field& k = field();
  for (auto& t : p.terms_) t.c = k.mul(t.c, c);
  return p;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field().inv(terms_.front().c));
}

Polynomial Polynomial::mul_term(const Monomial& m, Elem c) const {
  Polynomial p(ring_);
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  const Field& k = field();
  for (const auto& t : terms_) p.terms_.push_back({t.m * m, k.mul(t.c, c)});
  return p;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result = constant(ring_, 1), base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::in_ring(RingPtr ring) const {
  if (ring->nvars() < ring_->nvars()) {
    for (const auto& t : terms_)
      for (std::size_t i = ring->nvars(); i < ring_->nvars(); ++i)
        if (t.m.e[i] != 0) throw UsageError("polynomial uses variables outside the target ring");
  }
  return Polynomial(std::move(ring), terms_);
}

Polynomial Polynomial::component(std::uint32_t d) const {
  Polynomial p(ring_);
  for (const auto& t : terms_)
    if (t.m.deg == d) p.terms_.push_back(t);
  return p;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const Field& k = field();
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    const bool is_one = t.m.deg == 0;
    std::string c = k.format(t.c);
    if (is_one) {
      out += c;
      continue;
    }
    if (t.c != 1) {
      if (c.find('+') != std::string::npos) c = "(" + c + ")";
      out += c + "*";
    }
    out += ring_->format(t.m);
  }
  return out;
}

namespace {
void require_compatible(const Polynomial& a, const Polynomial& b) {
  if (a.ring() != b.ring() && !a.ring()->compatible(*b.ring()))
    throw UsageError("polynomials belong to different rings");
}

// merge a + s*b where s scales b's coefficients
std::vector<Term> merge_add(const Ring& r, const std::vector<Term>& a, const std::vector<Term>& b, Elem s) {
  const Field& k = *r.field();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = r.compare(a[i].m, b[j].m);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].m, k.mul(b[j].c, s)});
      ++j;
    } else {
      const Elem v = k.add(a[i].c, k.mul(b[j].c, s));
      if (v != 0) out.push_back({a[i].m, v});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].m, k.mul(b[j].c, s)});
  return out;
}
}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  require_compatible(a, b);
  Polynomial p(a.ring_);
  p.terms_ = merge_add(*a.ring_, a.terms_, b.terms_, 1);
  return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  require_compatible(a, b);
  Polynomial p(a.ring_);
  p.terms_ = merge_add(*a.ring_, a.terms_, b.terms_, a.field().neg(1));
  return p;
}

Polynomial operator-(const Polynomial& a) { return a.scaled(a.is_zero() ? 0 : a.field().neg(1)); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_ ? a.ring_ : b.ring_);
  require_compatible(a, b);
  const Field& k = a.field();
  std::unordered_map<Monomial, Elem, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Elem& slot = acc[s.m * t.m];
      slot = k.add(slot, k.mul(s.c, t.c));
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, c});
  const Ring& r = *a.ring_;
  std::sort(terms.begin(), terms.end(), [&r](const Term& x, const Term& y) { return r.compare(x.m, y.m) > 0; });
  Polynomial p(a.ring_);
  p.terms_ = std::move(terms);
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

void Polynomial::sub_mul_term(Elem c, const Monomial& m, const Polynomial& g) {
  if (c == 0 || g.is_zero()) return;
  const Field& k = field();
  const Ring& r = *ring_;
  const Elem nc = k.neg(c);
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  const auto& a = terms_;
  const auto& b = g.terms_;
  Monomial bm;
  bool have = false;
  while (i < a.size() && j < b.size()) {
    if (!have) {
      bm = b[j].m * m;
      have = true;
    }
    const int cmp = r.compare(a[i].m, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({bm, k.mul(b[j].c, nc)});
      ++j;
      have = false;
    } else {
      const Elem v = k.add(a[i].c, k.mul(b[j].c, nc));
      if (v != 0) out.push_back({bm, v});
      ++i;
      ++j;
      have = false;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].m * m, k.mul(b[j].c, nc)});
  terms_ = std::move(out);
}

Monomial leading_monomial(const Polynomial& f, const MonomialOrder& ord) {
  if (f.is_zero()) throw UsageError("leading term of the zero polynomial is undefined");
  const std::size_t n = f.ring()->nvars();
  const Monomial* best = &f.terms().front().m;
  for (const auto& t : f.terms())
    if (ord.compare(t.m, *best, n) > 0) best = &t.m;
  return *best;
}

// ---------------------------------------------------------------------------
// Linear substitutions

LinearAction::LinearAction(RingPtr ring, const Matrix& m) : ring_(std::move(ring)), m_(m) {
  const std::size_t n = ring_->nvars();
  if (m.rows() != n || m.cols() != n) throw UsageError("substitution matrix has the wrong size");
  (void)inverse(m);  // throws on singular input
  powers_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Elem> col(n);
    for (std::size_t j = 0; j < n; ++j) col[j] = m.at(j, i);
    powers_[i].push_back(Polynomial::constant(ring_, 1));
    powers_[i].push_back(Polynomial::linear(ring_, col));
  }
}

const Polynomial& LinearAction::var_power(std::size_t i, Exp k) {
  auto& pw = powers_[i];
  while (pw.size() <= k) pw.push_back(pw.back() * pw[1]);
  return pw[k];
}

Polynomial LinearAction::image_of(const Monomial& mono) {
  auto it = cache_.find(mono);
  if (it != cache_.end()) return it->second;
  Polynomial img = Polynomial::constant(ring_, 1);
  for (std::size_t i = 0; i < ring_->nvars(); ++i)
    if (mono.e[i] != 0) img = img * var_power(i, mono.e[i]);
  if (cache_.size() < 200000) cache_.emplace(mono, img);
  return img;
}

Polynomial LinearAction::apply(const Polynomial& f) {
  Polynomial out(ring_);
  std::unordered_map<Monomial, Elem, MonomialHash> acc;
  const Field& k = *ring_->field();
  for (const auto& t : f.terms()) {
    const Polynomial img = image_of(t.m);
    for (const auto& s : img.terms()) {
      Elem& slot = acc[s.m];
      slot = k.add(slot, k.mul(s.c, t.c));
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, c});
  return Polynomial(ring_, std::move(terms));
}

Polynomial apply_linear_substitution(const Polynomial& f, const Matrix& m) {
  LinearAction act(f.ring(), m);
  return act.apply(f);
}

// ---------------------------------------------------------------------------
// Derivations

std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) noexcept {
  if (k > n) return 0;
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // small binomial C(ni, ki) mod p by the multiplicative formula with exact division
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < ki; ++i) c = c * (ni - i) / (i + 1);
    result = result * (c % p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

Polynomial delta(std::size_t j, std::uint32_t l, const Polynomial& f) {
  const Field& k = f.field();
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    const Exp e = t.m.e[j];
    if (e < l) continue;
    const std::uint32_t b = binomial_mod(e, l, k.characteristic());
    if (b == 0) continue;
    Monomial m = t.m;
    m.e[j] = static_cast<Exp>(e - l);
    m.deg -= l;
    terms.push_back({m, k.mul(t.c, static_cast<Elem>(b))});
  }
  return Polynomial(f.ring(), std::move(terms));
}

Polynomial evaluate_at_zero(const Polynomial& f, const std::vector<std::size_t>& vars) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    bool keep = true;
    for (auto v : vars)
      if (t.m.e[v] != 0) keep = false;
    if (keep) terms.push_back(t);
  }
  Polynomial p(f.ring());
  return Polynomial(f.ring(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, const RingPtr& ring) : s_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what + " in polynomial", 1, pos_ + 1); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool neg = eat('-');
    if (!neg) eat('+');
    acc = neg ? -term() : term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<std::uint32_t>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (eat('(')) {
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (eat('-')) return -atom();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const long long v = std::stoll(s_.substr(start, pos_ - start));
      return Polynomial::constant(ring_, ring_->field()->from_int(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      const auto& names = ring_->names();
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return Polynomial::variable(ring_, i);
      if (name == "t" && ring_->field()->degree() >= 2)
        return Polynomial::constant(ring_, ring_->field()->generator());
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character");
  }

  const std::string& s_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring) { return PolyParser(text, ring).parse(); }

}  // namespace modinv
