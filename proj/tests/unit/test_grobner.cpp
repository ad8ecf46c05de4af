#include "doctest.h"

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "modinv/error.hpp"
#include "modinv/grobner.hpp"
#include "random_poly.hpp"
#include "slice_oracle.hpp"

using namespace modinv;
using namespace modinv::testing;

namespace {

RingPtr xyz(FieldPtr k) { return Ring::make(std::move(k), 3, MonomialOrder::deglex(), {"x", "y", "z"}); }

std::vector<Polynomial> parse_all(const std::vector<std::string>& texts, const RingPtr& r) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, r));
  return out;
}

}  // namespace

TEST_CASE("reduced basis of a small ideal") {
  auto r = xyz(Field::prime(3));
  auto gb = buchberger(parse_all({"x", "y^3", "z^3 - x^2*z"}, r));
  REQUIRE(gb.size() == 3);
  CHECK(gb[0] == parse_polynomial("x", r));
  CHECK(gb[1] == parse_polynomial("y^3", r));
  CHECK(gb[2] == parse_polynomial("z^3", r));
  CHECK(colength(gb, 3) == 9u);
  CHECK(top_degree(gb, 3) == 4u);
  CHECK(krull_dimension(gb, 3) == 0);

  auto gb2 = buchberger(parse_all({"x", "y^3"}, r));
  CHECK(krull_dimension(gb2, 3) == 1);
  CHECK(height(gb2, 3) == 2);
  CHECK_FALSE(colength(gb2, 3).has_value());

  auto unit = buchberger(parse_all({"x", "x + 1"}, r));
  CHECK(krull_dimension(unit, 3) == -1);
  CHECK(height(unit, 3) == 4);
  CHECK(colength(unit, 3) == 0u);
  CHECK(buchberger({}).empty());
}

TEST_CASE("minimal generator counts") {
  auto r = xyz(Field::prime(2));
  CHECK(minimal_generator_count(parse_all({"x", "x^2", "y"}, r)) == 2);
  CHECK(minimal_generator_count(parse_all({"x^2", "x*y", "y^2"}, r)) == 3);
  CHECK(minimal_generator_count(parse_all({"x^2 + y^2", "x^2", "y^2"}, r)) == 2);
  CHECK(minimal_generator_count(parse_all({"x*z", "y*z", "x*z + y*z", "z^3"}, r)) == 3);
  CHECK_THROWS_AS(minimal_generator_count(parse_all({"x + y^2"}, r)), UsageError);
  CHECK(minimal_generating_subset(parse_all({"x^2", "x", "y"}, r)) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("relations among monomials") {
  auto r = Ring::make(Field::prime(3), 2);
  auto y = Ring::make(Field::prime(3), 3, MonomialOrder::deglex({2, 2, 2}), {"y1", "y2", "y3"});
  auto rel = relation_ideal(parse_all({"x1^2", "x1*x2", "x2^2"}, r), y);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0] == parse_polynomial("y1*y3 - y2^2", y));
}

TEST_CASE("pair budget") {
  auto r = Ring::make(Field::prime(5), 4);
  std::mt19937_64 rng(3);
  std::vector<Polynomial> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(random_homogeneous(rng, r, 3, 6));
  GroebnerOptions tiny;
  tiny.max_pair_reductions = 1;
  CHECK_THROWS_AS(buchberger(gens, tiny), ResourceError);
}

TEST_CASE("membership agrees with degree-slice linear algebra") {
  std::mt19937_64 rng(77);
  for (auto k : {Field::prime(2), Field::prime(3), f9()}) {
    auto r = Ring::make(k, 3);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<Polynomial> gens;
      const int ng = 2 + trial % 3;
      for (int i = 0; i < ng; ++i)
        gens.push_back(random_homogeneous(rng, r, 1 + static_cast<std::uint32_t>((trial + i) % 3), 4));
      const auto gb = buchberger(gens);
      for (std::uint32_t d = 0; d <= 5; ++d) {
        Slice sl(r, gens, d);
        // Hilbert function of S/I from the staircase
        REQUIRE(standard_monomial_count(gb, 3, d) == sl.monos.size() - sl.space.rank());
        for (int s = 0; s < 6; ++s) {
          Polynomial f = random_homogeneous(rng, r, d, 5);
          // bias half the samples into the ideal
          if (s % 2 == 0 && d >= 1) {
            f = Polynomial(r);
            for (const auto& g : gens)
              if (g.total_degree() <= d) f = f + g * random_homogeneous(rng, r, d - g.total_degree(), 3);
          }
          REQUIRE(normal_form(f, gb).is_zero() == sl.space.contains(sl.vec(f)));
        }
      }
    }
  }
}

TEST_CASE("reduced basis does not depend on the generating set") {
  std::mt19937_64 rng(123);
  for (auto k : {Field::prime(3), f9()}) {
    auto r = Ring::make(k, 3);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Polynomial> gens;
      for (int i = 0; i < 3; ++i) gens.push_back(random_polynomial(rng, r, 3, 4));
      auto a = buchberger(gens);
      auto shuffled = gens;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      shuffled.push_back(gens[0] * random_polynomial(rng, r, 2, 3) + gens[1]);
      auto b = buchberger(shuffled);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
      for (const auto& g : gens) REQUIRE(normal_form(g, a).is_zero());
    }
  }
}

TEST_CASE("minimal generator count is additive over disjoint variables") {
  std::mt19937_64 rng(8);
  auto k = Field::prime(2);
  auto r = Ring::make(k, 4);
  auto r2 = Ring::make(k, 2);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Polynomial> a, b;
    for (int i = 0; i < 3; ++i) {
      a.push_back(random_homogeneous(rng, r2, 1 + static_cast<std::uint32_t>(i % 3), 3));
      b.push_back(random_homogeneous(rng, r2, 2, 3));
    }
    // embed a into x1,x2 and b into x3,x4
    auto embed = [&](const Polynomial& f, std::size_t shift) {
      std::vector<Term> t;
      for (const auto& term : f.terms()) {
        Monomial m;
        m.e[shift] = term.m.e[0];
        m.e[shift + 1] = term.m.e[1];
        m.deg = term.m.deg;
        t.push_back({m, term.c});
      }
      return Polynomial(r, std::move(t));
    };
    std::vector<Polynomial> ea, eb, both;
    for (const auto& f : a) ea.push_back(embed(f, 0));
    for (const auto& f : b) eb.push_back(embed(f, 2));
    both = ea;
    both.insert(both.end(), eb.begin(), eb.end());
    REQUIRE(minimal_generator_count(both) == minimal_generator_count(ea) + minimal_generator_count(eb));
  }
}

TEST_CASE("membership oracle over two and three variables") {
  std::mt19937_64 rng(78);
  for (auto k : {Field::prime(2), Field::prime(5), f9()}) {
    const MembershipTally t = compare_membership(rng, k, 6, 5);
    CHECK(t.disagreements == 0);
    CHECK(t.members > 0);
    CHECK(t.members < t.queries);
  }
}
