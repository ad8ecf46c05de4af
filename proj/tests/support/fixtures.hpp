#pragma once

#include <random>

#include "modinv/group.hpp"

namespace modinv::testing {

inline FieldPtr f9() { return Field::extension(3, {1, 0, 1}); }

// Builds an n x n unipotent matrix from (row, column, value) entries added to
// the identity; column i is the image of x_i.
inline Matrix unipotent(const FieldPtr& k, std::size_t n, std::initializer_list<std::array<long long, 3>> entries) {
  Matrix m = Matrix::identity(k, n);
  for (const auto& e : entries)
    m.at(static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1])) = k->from_int(e[2]);
  return m;
}

// tau: y -> y + a x;  sigma: y -> y + x, z -> z + x  over F_9. The listed
// cubic invariant (a-1)y^3 - a y x^2 + z x^2 needs a^2 = a + 1, so a = t + 2.
inline Elem f9_example_a() { return f9()->add(f9()->generator(), f9()->from_int(2)); }

inline MatrixGroup f9_example_group() {
  auto k = f9();
  Matrix tau = Matrix::identity(k, 3);
  tau.at(0, 1) = f9_example_a();
  Matrix sigma = unipotent(k, 3, {{0, 1, 1}, {0, 2, 1}});
  return MatrixGroup::generate(k, 3, {tau, sigma}, kDefaultGroupCap, true, {"tau", "sigma"});
}

inline std::vector<Matrix> order27_generators() {
  auto k = Field::prime(3);
  return {unipotent(k, 5, {{2, 3, 1}, {1, 3, 1}}),
          unipotent(k, 5, {{2, 4, 1}, {1, 4, -1}, {0, 4, 1}}),
          unipotent(k, 5, {{0, 3, -1}, {1, 3, -1}, {2, 3, -1}, {0, 4, -1}, {1, 4, -1}, {2, 4, -1}})};
}

inline MatrixGroup order27_group() {
  return MatrixGroup::generate(Field::prime(3), 5, order27_generators(), kDefaultGroupCap, true,
                               {"g1", "g2", "g3"});
}

// Single Jordan block: x_i -> x_i + x_{i-1}.
inline MatrixGroup jordan_group(std::uint32_t p, std::size_t n) {
  auto k = Field::prime(p);
  Matrix m = Matrix::identity(k, n);
  for (std::size_t i = 1; i < n; ++i) m.at(i - 1, i) = 1;
  return MatrixGroup::generate(k, n, {m});
}

// Random transvection x_i -> x_i + lambda_i * l with l = x_b + lower terms,
// lambda supported above b (0-based b = beta - 1).
inline Matrix random_transvection(std::mt19937_64& rng, const FieldPtr& k, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick_beta(1, n - 1);
  std::uniform_int_distribution<std::uint32_t> coef(0, k->order() - 1);
  const std::size_t b = pick_beta(rng);
  std::vector<Elem> l(n, 0), lambda(n, 0);
  l[b - 1] = 1;
  for (std::size_t j = 0; j + 1 < b; ++j) l[j] = static_cast<Elem>(coef(rng));
  bool any = false;
  while (!any) {
    for (std::size_t i = b; i < n; ++i) {
      lambda[i] = static_cast<Elem>(coef(rng));
      any = any || lambda[i] != 0;
    }
  }
  Matrix m = Matrix::identity(k, n);
  for (std::size_t i = b; i < n; ++i)
    for (std::size_t j = 0; j < b; ++j) m.at(j, i) = k->mul(lambda[i], l[j]);
  return m;
}

inline MatrixGroup random_group(std::mt19937_64& rng, const FieldPtr& k, std::size_t n, std::size_t gens,
                                std::size_t cap = kDefaultGroupCap) {
  std::vector<Matrix> g;
  for (std::size_t i = 0; i < gens; ++i) g.push_back(random_transvection(rng, k, n));
  return MatrixGroup::generate(k, n, g, cap);
}

}  // namespace modinv::testing
