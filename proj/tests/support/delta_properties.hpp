#pragma once

#include <random>

#include "fixtures.hpp"
#include "modinv/poly.hpp"
#include "random_poly.hpp"

namespace modinv::testing {

struct DeltaFailures {
  std::size_t samples = 0;
  std::size_t iterative = 0;
  std::size_t leibniz = 0;
  std::size_t equivariance = 0;
  std::size_t extraction = 0;

  std::size_t total() const { return iterative + leibniz + equivariance + extraction; }
};

// x_j is terminal when no g(x_i), i != j, involves x_j.
inline bool is_terminal(const MatrixGroup& g, std::size_t j) {
  for (const auto& m : g.generators())
    for (std::size_t i = 0; i < g.dim(); ++i)
      if (i != j && m.at(j, i) != 0) return false;
  return true;
}

// sum over t of (-1)^|t| x^t Delta^(t)(f), t ranging over exponents of the
// variables in `block`; equals f with the block set to zero.
inline Polynomial taylor_at_minus_x(const Polynomial& f, const std::vector<std::size_t>& block, std::size_t pos = 0) {
  if (pos == block.size()) return f;
  const std::size_t j = block[pos];
  const RingPtr& r = f.ring();
  const Field& k = f.field();
  std::uint32_t top = 0;
  for (const auto& t : f.terms()) top = std::max<std::uint32_t>(top, t.m.e[j]);
  Polynomial sum(r);
  Polynomial xpow = Polynomial::constant(r, 1);
  for (std::uint32_t t = 0; t <= top; ++t) {
    const Elem sign = t % 2 ? k.neg(1) : Elem{1};
    sum = sum + (xpow * taylor_at_minus_x(delta(j, t, f), block, pos + 1)).scaled(sign);
    xpow = xpow * Polynomial::variable(r, j);
  }
  return sum;
}

// Iterativity, Leibniz, equivariance at the terminal variable x_n of a
// triangular group, and coefficient extraction, each on `count` samples.
inline DeltaFailures check_delta_identities(std::mt19937_64& rng, const FieldPtr& k, std::size_t count) {
  DeltaFailures out;
  const std::uint32_t p = k->characteristic();
  const std::size_t n = 3;
  auto r = Ring::make(k, n);
  MatrixGroup g = random_group(rng, k, n, 1);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 50 == 0) g = random_group(rng, k, n, 1 + i % 2);
    ++out.samples;
    const auto f = random_polynomial(rng, r, 6, 6), h = random_polynomial(rng, r, 4, 4);
    const std::size_t j = i % n;
    const std::uint32_t s = static_cast<std::uint32_t>(i % 4), t = static_cast<std::uint32_t>((i / 4) % 3);

    if (delta(j, s, delta(j, t, f)) != delta(j, s + t, f).scaled(static_cast<Elem>(binomial_mod(s + t, s, p))))
      ++out.iterative;

    Polynomial leibniz(r);
    for (std::uint32_t u = 0; u <= s; ++u) leibniz = leibniz + delta(j, u, f) * delta(j, s - u, h);
    if (delta(j, s, f * h) != leibniz) ++out.leibniz;

    const std::size_t last = n - 1;
    if (!is_terminal(g, last)) {
      ++out.equivariance;
    } else {
      const Matrix& m = g.elements()[i % g.order()];
      if (delta(last, s, apply_linear_substitution(f, m)) != apply_linear_substitution(delta(last, s, f), m))
        ++out.equivariance;
    }

    std::vector<std::size_t> block;
    for (std::size_t v = i % n; v < n; ++v) block.push_back(v);
    if (taylor_at_minus_x(f, block) != evaluate_at_zero(f, block)) ++out.extraction;
  }
  return out;
}

}  // namespace modinv::testing
