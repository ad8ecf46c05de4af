#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "modinv/group.hpp"

using namespace modinv;
using namespace modinv::testing;

namespace {

bool is_power_of(std::size_t v, std::size_t p) {
  while (v % p == 0) v /= p;
  return v == 1;
}

}  // namespace

TEST_CASE("closure orders") {
  CHECK(f9_example_group().order() == 9);
  CHECK(order27_group().order() == 27);
  CHECK(MatrixGroup::generate(Field::prime(3), 3, {}).order() == 1);
  auto k = Field::prime(3);
  CHECK_THROWS_AS(MatrixGroup::generate(k, 4, {unipotent(k, 4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}})}, 2),
                  ResourceError);
  Matrix diag = Matrix::identity(k, 2);
  diag.at(0, 0) = 2;
  CHECK_THROWS_AS(MatrixGroup::generate(k, 2, {diag}), ValidationError);
}

TEST_CASE("fixed spaces") {
  auto g = f9_example_group();
  auto fs = fixed_spaces(g);
  REQUIRE(fs.dual.rows() == 1);
  CHECK(fs.dual.at(0, 0) == 1);
  CHECK(fs.dual.at(0, 1) == 0);
  CHECK(fs.dual.at(0, 2) == 0);
  REQUIRE(fs.vectors.rows() == 2);
  for (std::size_t r = 0; r < 2; ++r) CHECK(fs.vectors.at(r, 0) == 0);
  auto triv = MatrixGroup::generate(Field::prime(2), 3, {});
  CHECK(fixed_spaces(triv).dual.rows() == 3);
  CHECK(fixed_spaces(triv).vectors.rows() == 3);
}

TEST_CASE("transvections and hyperplanes") {
  auto g = f9_example_group();
  const Matrix& tau = g.generators()[0];
  const Matrix& sigma = g.generators()[1];
  CHECK(is_transvection(sigma));
  CHECK(is_transvection(tau));
  CHECK_FALSE(is_transvection(Matrix::identity(g.field(), 3)));
  CHECK(reflecting_hyperplane(tau) == std::vector<Elem>{1, 0, 0});
  CHECK_THROWS_AS(reflecting_hyperplane(Matrix::identity(g.field(), 3)), UsageError);
  auto k = Field::prime(5);
  Matrix s = unipotent(k, 4, {{0, 3, 1}});
  CHECK(reflecting_hyperplane(s) == std::vector<Elem>{1, 0, 0, 0});

  auto gs = order27_generators();
  Matrix prod = gs[0] * gs[1] * gs[2];
  CHECK_FALSE(is_transvection(prod));
  CHECK(beta(gs[0]) == 3);
  CHECK(beta(prod) == 2);
  CHECK(beta(Matrix::identity(gs[0].field(), 5)) == 0);
}

TEST_CASE("triangularize") {
  auto g = order27_group();
  CHECK(triangularize(g).is_identity());
  auto h = f9_example_group();
  const MatrixGroup tri = change_basis(h, triangularize(h));
  for (const auto& m : tri.elements()) CHECK(is_triangular(m));

  std::mt19937_64 rng(7);
  for (auto k : {Field::prime(2), Field::prime(3), f9()}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto grp = random_group(rng, k, 4, 2);
      // conjugate by a random invertible matrix
      Matrix c(k, 4, 4);
      std::uniform_int_distribution<std::uint32_t> coef(0, k->order() - 1);
      for (;;) {
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) c.at(i, j) = static_cast<Elem>(coef(rng));
        if (rank(c) == 4) break;
      }
      auto conj = change_basis(grp, c);
      Matrix b2 = triangularize(conj);
      auto tri = change_basis(conj, b2);
      REQUIRE(tri.order() == grp.order());
      for (const auto& m : tri.elements()) REQUIRE(is_triangular(m));
      // the first dim (V^G)^perp new variables span (V^G)^perp
      const std::size_t s = 4 - fixed_rank(tri);
      for (const auto& m : tri.generators())
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = s; j < 4; ++j)
            if (i != j) REQUIRE(m.at(j, i) == 0);
    }
  }
}

TEST_CASE("composition series of the fixtures") {
  auto g = f9_example_group();
  auto cs = composition_series(g);
  CHECK(cs.chain.size() == 3);
  CHECK(cs.chain[1].order() == 3);
  auto cyc = MatrixGroup::generate(g.field(), 3, {g.generators()[1]});
  CHECK(composition_series(cyc).chain.size() == 2);

  auto ni = order27_group();
  auto cs2 = composition_series(ni);
  REQUIRE(cs2.witnesses.size() == 3);
  for (const auto& w : cs2.witnesses) CHECK(beta(w) == 3);

  CHECK_THROWS_AS(composition_series(jordan_group(3, 3)), NotApplicable);
}

TEST_CASE("inertia subgroups") {
  auto g = order27_group();
  auto gs = order27_generators();
  auto inert = inertia_subgroup(g, {0, 1});
  CHECK(inert.order() == 3);
  CHECK(inert.contains(gs[0] * gs[1] * gs[2]));
  CHECK(inertia_subgroup(g, {0, 1, 2, 3, 4}).order() == 27);
  CHECK(inertia_subgroup(g, {}).order() == 1);
}

TEST_CASE("nakajima decomposition") {
  auto g = f9_example_group();
  // P_y = <tau, sigma*tau^?> moves only y; P_z is trivial: product 3 != 9
  auto nak = nakajima_decomposition(g);
  std::size_t py = 0;
  for (const auto& m : g.elements()) {
    bool only_y = true;
    for (std::size_t i : {0u, 2u})
      for (std::size_t j = 0; j < 3; ++j)
        if (m.at(j, i) != (i == j ? 1 : 0)) only_y = false;
    py += only_y;
  }
  CHECK(py == 3);
  CHECK_FALSE(nak.has_value());
  auto triv = MatrixGroup::generate(Field::prime(2), 3, {});
  REQUIRE(nakajima_decomposition(triv).has_value());
  auto k = Field::prime(3);
  auto single = MatrixGroup::generate(k, 3, {unipotent(k, 3, {{0, 2, 1}})});
  auto nk = nakajima_decomposition(single);
  REQUIRE(nk.has_value());
  CHECK((*nk)[2].order() == 3);
}

TEST_CASE("sigma normalization") {
  auto k = Field::prime(3);
  auto trivial = MatrixGroup::generate(k, 5, {});
  Matrix only_last = unipotent(k, 5, {{0, 4, 1}});
  CHECK(sigma_normalize(trivial, only_last).is_identity());

  Matrix sigma = unipotent(k, 5, {{0, 3, 1}, {0, 4, 2}});
  Matrix b = sigma_normalize(trivial, sigma);
  Matrix s2 = inverse(b) * sigma * b;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(s2.at(j, i) == (i == j ? 1 : 0));

  // beta of a G' transvection survives
  Matrix tau = unipotent(k, 5, {{0, 1, 1}});
  auto gp = MatrixGroup::generate(k, 5, {tau});
  Matrix b2 = sigma_normalize(gp, sigma);
  CHECK(beta(inverse(b2) * tau * b2) == beta(tau));
}

TEST_CASE("orbit products") {
  auto k = Field::prime(3);
  auto r = Ring::make(k, 2);
  auto g = MatrixGroup::generate(k, 2, {unipotent(k, 2, {{0, 1, 1}})});
  CHECK(orbit_product(g, Polynomial::variable(r, 1)) == parse_polynomial("x2^3 - x1^2*x2", r));
  CHECK(orbit_product(g, Polynomial::variable(r, 0)) == Polynomial::variable(r, 0));
}

TEST_CASE("random transvection groups: structural properties") {
  std::mt19937_64 rng(99);
  for (auto k : {Field::prime(2), Field::prime(3), f9()}) {
    const std::size_t p = k->characteristic();
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 3 + static_cast<std::size_t>(trial % 2);
      auto g = random_group(rng, k, n, 1 + static_cast<std::size_t>(trial % 3));
      REQUIRE(is_power_of(g.order(), p));
      REQUIRE(fixed_rank(g) >= 1);
      auto ts = transvections(g);
      // conjugation and commutation of transvections
      std::uniform_int_distribution<std::size_t> pick(0, ts.size() - 1);
      for (int s = 0; s < 10; ++s) {
        const Matrix& a = ts[pick(rng)];
        const Matrix& b = ts[pick(rng)];
        Matrix c = a * b * inverse(a);
        REQUIRE(is_transvection(c));
        REQUIRE(beta(c) == beta(b));
        if (beta(a) == beta(b)) REQUIRE(a * b == b * a);
      }
      // v_i in V^G for i > beta_G
      const std::size_t bg = beta_group(g);
      auto fs = fixed_spaces(g);
      for (std::size_t i = bg; i < n; ++i) {
        std::vector<Elem> e(n, 0);
        e[i] = 1;
        EchelonSpace sp(k, n);
        for (std::size_t r = 0; r < fs.vectors.rows(); ++r)
          sp.insert(std::vector<Elem>(fs.vectors.row(r), fs.vectors.row(r) + n));
        REQUIRE(sp.contains(e));
      }
      // composition series: normal, index p, transvection generated
      auto cs = composition_series(g);
      for (std::size_t l = 1; l < cs.chain.size(); ++l) {
        const auto& lo = cs.chain[l - 1];
        const auto& hi = cs.chain[l];
        REQUIRE(hi.order() == lo.order() * p);
        REQUIRE(lo.is_subgroup_of(hi));
        REQUIRE(is_transvection_generated(hi));
        for (const auto& x : hi.generators())
          for (const auto& y : lo.elements()) REQUIRE(lo.contains(x * y * inverse(x)));
      }
    }
  }
}
