#include "doctest.h"

#include <functional>
#include <random>

#include "fixtures.hpp"
#include "modinv/error.hpp"
#include "modinv/invariants.hpp"
#include "random_poly.hpp"

using namespace modinv;
using namespace modinv::testing;

namespace {

RingPtr xyz(FieldPtr k) { return Ring::make(std::move(k), 3, MonomialOrder::deglex(), {"x", "y", "z"}); }

Matrix rows(const FieldPtr& k, std::vector<std::vector<Elem>> r) {
  Matrix m(k, r.size(), r.empty() ? 0 : r[0].size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) m.at(i, j) = r[i][j];
  return m;
}

// Products of `gens` of degree d, by brute force over exponent vectors.
EchelonSpace product_span(const std::vector<Polynomial>& gens, std::uint32_t d, const std::vector<Monomial>& monos) {
  const RingPtr& r = gens.front().ring();
  EchelonSpace sp(r->field(), monos.size());
  std::unordered_map<Monomial, std::size_t, MonomialHash> col;
  for (std::size_t i = 0; i < monos.size(); ++i) col.emplace(monos[i], i);
  std::function<void(std::size_t, std::uint32_t, Polynomial)> rec = [&](std::size_t i, std::uint32_t left,
                                                                          Polynomial acc) {
    if (left == 0) {
      std::vector<Elem> v(monos.size(), 0);
      for (const auto& t : acc.terms()) v[col.at(t.m)] = t.c;
      sp.insert(v);
      return;
    }
    if (i == gens.size()) return;
    const std::uint32_t e = gens[i].total_degree();
    Polynomial cur = acc;
    for (std::uint32_t k = 0; k * e <= left; ++k) {
      rec(i + 1, left - k * e, cur);
      cur = cur * gens[i];
    }
  };
  rec(0, d, Polynomial::constant(r, 1));
  return sp;
}

std::vector<Elem> dense(const Polynomial& f, const std::vector<Monomial>& monos) {
  std::vector<Elem> v(monos.size(), 0);
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (monos[i] == t.m) v[i] = t.c;
  return v;
}

}  // namespace

TEST_CASE("F_9 rank-3 example: generators, Hilbert ideal and relative ideal") {
  auto g = f9_example_group();
  auto r = xyz(g.field());
  InvariantRing inv(g, {}, r);
  const auto& gs = inv.generators();
  REQUIRE(gs.certified);
  CHECK(gs.polynomial == std::optional<bool>(true));
  CHECK(gs.degrees() == std::vector<std::uint32_t>{1, 3, 3});

  const std::string a = "(t+2)";
  auto listed = normalize_generators({parse_polynomial("x", r),
                                      parse_polynomial("(t+1)*y^3 - " + a + "*y*x^2 + z*x^2", r),
                                      parse_polynomial("z^3 - x^2*z", r)});
  REQUIRE(listed.gens.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(gs.gens[i] == listed.gens[i]);
  for (const auto& f : gs.gens) CHECK(inv.is_invariant(f));

  const auto& h = inv.hilbert_ideal().gb();
  REQUIRE(h.size() == 3);
  CHECK(h[0] == parse_polynomial("x", r));
  CHECK(h[1] == parse_polynomial("y^3", r));
  CHECK(h[2] == parse_polynomial("z^3", r));
  CHECK(colength(h, 3) == 9u);

  const Matrix w = rows(g.field(), {{0, 0, 1}});
  const auto rel = inv.relative_hilbert_ideal(w);
  REQUIRE(rel.gb().size() == 2);
  CHECK(rel.gb()[0] == parse_polynomial("x", r));
  CHECK(rel.gb()[1] == parse_polynomial("y^3", r));
  CHECK(relative_hilbert_ideal_degreewise(inv, w, 9) == rel);

  // G on S' = k[x, y]: the orbit product of y has degree 9
  auto r2 = Ring::make(g.field(), 2, MonomialOrder::deglex(), {"x", "y"});
  std::vector<Matrix> sub;
  for (const auto& m : g.generators()) {
    Matrix s(g.field(), 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) s.at(i, j) = m.at(i, j);
    sub.push_back(s);
  }
  InvariantRing inv2(MatrixGroup::generate(g.field(), 2, sub), {}, r2);
  const auto& h2 = inv2.hilbert_ideal().gb();
  REQUIRE(h2.size() == 2);
  CHECK(h2[1] == parse_polynomial("y^9", r2));
  // the relative ideal meets k[x,y] in (x, y^3), strictly bigger
  CHECK_FALSE(inv2.hilbert_ideal().contains(parse_polynomial("y^3", r2)));
  CHECK(rel.contains(parse_polynomial("y^3", r)));

  const auto dec = fixed_complement_decomposition(inv, w);
  CHECK(dec.codim == 2);
  REQUIRE(dec.complement.size() == 1);
  CHECK(dec.complement[0] == gs.gens[2]);
  CHECK(gs.gens[2].leading_monomial() == parse_polynomial("z^3", r).leading_monomial());

  CHECK(presentation(gs).relations.empty());
  CHECK_THROWS_AS(perp_ideal(g, rows(g.field(), {{1, 0, 0}}), r), UsageError);
}

TEST_CASE("rank two groups have invariants x1 and the orbit product") {
  for (auto k : {Field::prime(2), Field::prime(3), Field::prime(5), f9()}) {
    auto r = Ring::make(k, 2);
    auto g = MatrixGroup::generate(k, 2, {unipotent(k, 2, {{0, 1, 1}})});
    InvariantRing inv(g, {}, r);
    const auto& gs = inv.generators();
    REQUIRE(gs.certified);
    REQUIRE(gs.gens.size() == 2);
    CHECK(gs.gens[0] == Polynomial::variable(r, 0));
    CHECK(gs.gens[1] == orbit_product(g, Polynomial::variable(r, 1)));
  }
}

TEST_CASE("trivial group") {
  auto k = Field::prime(3);
  InvariantRing inv(MatrixGroup::generate(k, 3, {}));
  const auto& gs = inv.generators();
  CHECK(gs.certified);
  CHECK(gs.degrees() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(inv.slice_dim(2) == 6);
}

TEST_CASE("slices agree with the direct kernel on random groups") {
  std::mt19937_64 rng(2024);
  for (auto k : {Field::prime(2), Field::prime(3), f9()}) {
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t n = 3 + static_cast<std::size_t>(trial % 2);
      auto g = random_group(rng, k, n, 1 + static_cast<std::size_t>(trial % 3));
      InvariantRing inv(g);
      for (std::uint32_t d = 0; d <= 5; ++d) {
        const auto oracle = invariant_space(g, d, inv.ring());
        const auto& got = inv.slice(d);
        REQUIRE(got.size() == oracle.size());
        for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == oracle[i]);
      }
    }
  }
}

TEST_CASE("generator sets are consistent with the group order") {
  std::mt19937_64 rng(31);
  for (auto k : {Field::prime(2), Field::prime(3), f9()}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 3 + static_cast<std::size_t>(trial % 2);
      auto g = random_group(rng, k, n, 1 + static_cast<std::size_t>(trial % 2));
      if (g.order() > 81) continue;
      InvariantRing inv(g);
      const auto& gs = inv.generators();
      REQUIRE(gs.certified);
      REQUIRE(gs.polynomial.has_value());
      for (std::size_t i = 0; i < gs.gens.size(); ++i) {
        REQUIRE(inv.is_invariant(gs.gens[i]));
        REQUIRE(gs.gens[i].leading_coefficient() == 1);
        if (i) REQUIRE(inv.ring()->less(gs.gens[i - 1].leading_monomial(), gs.gens[i].leading_monomial()));
      }
      const auto col = colength(inv.hilbert_ideal().gb(), n);
      REQUIRE(col.has_value());
      REQUIRE(*col >= g.order());
      if (*gs.polynomial) {
        std::uint64_t prod = 1;
        for (auto d : gs.degrees()) prod *= d;
        REQUIRE(gs.gens.size() == n);
        REQUIRE(prod == g.order());
        REQUIRE(*col == g.order());
      } else {
        REQUIRE(gs.gens.size() > n);
      }
    }
  }
}

TEST_CASE("Jordan block of size three is a hypersurface") {
  auto g = jordan_group(3, 3);
  InvariantRing inv(g);
  const auto& gs = inv.generators();
  REQUIRE(gs.certified);
  CHECK(gs.polynomial == std::optional<bool>(false));
  CHECK(gs.degrees() == std::vector<std::uint32_t>{1, 2, 3, 3});
  const auto pres = presentation(gs);
  REQUIRE(pres.relations.size() == 1);
  // graded dimensions of k[y]/(relation) match the slices
  const auto lm = pres.relations[0].leading_monomial();
  const auto w = gs.degrees();
  for (std::uint32_t d = 0; d <= 8; ++d) {
    std::size_t count = 0;
    std::function<void(std::size_t, std::uint32_t, Monomial)> rec = [&](std::size_t i, std::uint32_t left,
                                                                        Monomial m) {
      if (i == w.size()) {
        if (left == 0 && !lm.divides(m)) ++count;
        return;
      }
      for (std::uint32_t e = 0; e * w[i] <= left; ++e) {
        m.e[i] = static_cast<Exp>(e);
        m.deg = 0;
        for (std::size_t j = 0; j <= i; ++j) m.deg += m.e[j];
        rec(i + 1, left - e * w[i], m);
      }
    };
    rec(0, d, Monomial{});
    CHECK(count == inv.slice_dim(d));
  }
}

TEST_CASE("subalgebra membership agrees with degree-slice linear algebra") {
  std::mt19937_64 rng(5);
  for (auto k : {Field::prime(2), Field::prime(3), f9()}) {
    auto r = Ring::make(k, 3);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Polynomial> gens;
      for (int i = 0; i < 3; ++i) {
        auto g = random_homogeneous(rng, r, 1 + static_cast<std::uint32_t>((trial + i) % 3), 3);
        if (!g.is_zero()) gens.push_back(g);
      }
      if (gens.empty()) continue;
      for (std::uint32_t d = 1; d <= 4; ++d) {
        const auto monos = r->monomials_of_degree(d);
        auto span = product_span(gens, d, monos);
        for (int s = 0; s < 4; ++s) {
          Polynomial f = random_homogeneous(rng, r, d, 4);
          if (s % 2 == 0) {
            // a random element of the span
            auto basis = span.reduced_basis();
            f = Polynomial(r);
            for (const auto& b : basis) {
              std::vector<Term> t;
              for (std::size_t i = 0; i < monos.size(); ++i)
                if (b[i]) t.push_back({monos[i], b[i]});
              f = f + Polynomial(r, t).scaled(static_cast<Elem>(rng() % k->order()));
            }
          }
          REQUIRE(subalgebra_contains(gens, f) == span.contains(dense(f, monos)));
        }
      }
    }
  }
}

TEST_CASE("normalized generators are reduced and canonical") {
  auto k = Field::prime(3);
  auto r = Ring::make(k, 2);
  auto x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
  auto a = normalize_generators({x, y * y + x * x});
  auto b = normalize_generators({y * y - x * x + x * x.scaled(2), x.scaled(2)});
  REQUIRE(a.gens.size() == 2);
  REQUIRE(b.gens.size() == 2);
  CHECK(a.gens[0] == x);
  CHECK(a.gens[0] == b.gens[0]);
  CHECK(a.gens[1] == b.gens[1]);
  CHECK(a.gens[1] == y * y);
}

TEST_CASE("step from a cyclic subgroup of the F_9 example") {
  auto g = f9_example_group();
  auto r = xyz(g.field());
  auto tau = MatrixGroup::generate(g.field(), 3, {g.generators()[0]});
  InvariantRing big(g, {}, r), small(tau, {}, r);
  const auto st = step_analysis(small, big);
  REQUIRE(st.d0 == std::optional<std::uint32_t>(1));
  CHECK(st.quotient_rank == 1);
  REQUIRE(st.witness.has_value());
  CHECK(*st.witness == parse_polynomial("z", r));
  // A = k[x, z, N(y)] and N(y) = f/(a-1) - x^2 z/(a-1)
  CHECK(st.generated_by_r_and_witness);
  CHECK(st.a_gens.degrees() == std::vector<std::uint32_t>{1, 1, 3});
  CHECK(st.i1() == st.i0());
  REQUIRE(st.i0().has_value());
  CHECK(st.a_gens.gens[*st.i0()] == parse_polynomial("z", r));
  CHECK_THROWS_AS(step_analysis(big, small), UsageError);
}

TEST_CASE("slice cap is enforced") {
  InvariantOptions opts;
  opts.slice_cap = 10;
  InvariantRing inv(jordan_group(3, 4), opts);
  CHECK_THROWS_AS(inv.slice(5), ResourceError);
}
