// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Usage: acceptance [criterion numbers...]; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "delta_properties.hpp"
#include "fixtures.hpp"
#include "modinv/checks.hpp"
#include "modinv/error.hpp"
#include "modinv/harness.hpp"
#include "modinv/io.hpp"
#include "slice_oracle.hpp"

using namespace modinv;
using namespace modinv::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;  // 0: no runtime limit
  std::function<void(Outcome&)> run;
};

Matrix row_vector(const FieldPtr& k, std::vector<Elem> v) {
  Matrix m(k, 1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m.at(0, i) = v[i];
  return m;
}

std::vector<MatrixGroup> survey(std::uint32_t p, std::size_t n, bool exhaustive, std::size_t samples,
                                std::size_t min_fixed_rank, std::size_t order = 0, std::size_t max_generators = 3,
                                std::uint64_t seed = 1) {
  SurveyParams sp;
  sp.p = p;
  sp.n = n;
  sp.exhaustive = exhaustive;
  sp.samples = samples;
  sp.min_fixed_rank = min_fixed_rank;
  sp.order = order;
  sp.max_generators = max_generators;
  sp.seed = seed;
  return enumerate_transvection_groups(sp).groups;
}

std::string group_tag(const MatrixGroup& g) {
  return "p=" + std::to_string(g.field()->characteristic()) + " n=" + std::to_string(g.dim()) +
         " |G|=" + std::to_string(g.order()) + " hash=" + instance_hash(g);
}

// F_9 example: generators, relative and restricted Hilbert ideals.
void f9_example(Outcome& o) {
  const MatrixGroup g = f9_example_group();
  auto r = Ring::make(g.field(), 3, MonomialOrder::deglex(), {"x", "y", "z"});
  InvariantRing inv(g, {}, r);
  const auto& gs = inv.generators();
  const auto listed = normalize_generators({parse_polynomial("x", r),
                                            parse_polynomial("(t+1)*y^3 - (t+2)*y*x^2 + z*x^2", r),
                                            parse_polynomial("z^3 - x^2*z", r)});
  o.require(gs.certified, "generators certified");
  o.require(gs.gens == listed.gens, "generators match the listed three");

  const IdealBasis rel = inv.relative_hilbert_ideal(row_vector(g.field(), {0, 0, 1}));
  o.require(rel.gb() == std::vector<Polynomial>{parse_polynomial("x", r), parse_polynomial("y^3", r)},
            "relative ideal basis {x, y^3}");

  auto r2 = Ring::make(g.field(), 2, MonomialOrder::deglex(), {"x", "y"});
  std::vector<Matrix> sub;
  for (const auto& m : g.generators()) {
    Matrix s(g.field(), 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) s.at(i, j) = m.at(i, j);
    sub.push_back(s);
  }
  InvariantRing inv2(MatrixGroup::generate(g.field(), 2, sub), {}, r2);
  const auto& h2 = inv2.hilbert_ideal();
  o.require(h2.gb() == std::vector<Polynomial>{parse_polynomial("x", r2), parse_polynomial("y^9", r2)},
            "Hilbert ideal of k[x,y] is (x, y^9)");
  // y^3 lies in the relative ideal and in k[x,y], but not in (x, y^9)
  const bool differ = rel.contains(parse_polynomial("y^3", r)) && !h2.contains(parse_polynomial("y^3", r2));
  o.require(differ, "relative ideal restricted to k[x,y] differs");
  o.detail << "degrees 1,3,3; relative {x, y^3}; restricted (x, y^9)";
}

void rank_two(Outcome& o) {
  std::mt19937_64 rng(2);
  const std::uint32_t primes[] = {2, 3, 5};
  for (int i = 0; i < 20; ++i) {
    auto k = Field::prime(primes[i % 3]);
    const MatrixGroup g = random_group(rng, k, 2, 1 + i % 2);
    auto r = Ring::make(k, 2);
    InvariantRing inv(g, {}, r);
    const auto& gs = inv.generators();
    const std::vector<Polynomial> expect{Polynomial::variable(r, 0), orbit_product(g, Polynomial::variable(r, 1))};
    o.require(gs.gens == expect, "generators {x1, N(x2)} for " + group_tag(g));
    o.require(is_polynomial_ring(inv).status == Status::Yes, "polynomial for " + group_tag(g));
  }
  o.detail << "20 instances over F_2, F_3, F_5";
}

// Complete intersections and mu additivity for rank V^G >= n - 2; also
// collects the extended-property evidence for criterion 8.
struct LargeRankTally {
  std::size_t instances = 0;
  std::size_t extended_checked = 0;
  std::size_t extended_failures = 0;
};
LargeRankTally large_rank_tally;

void large_fixed_rank(Outcome& o) {
  std::vector<MatrixGroup> groups;
  std::ostringstream counts;
  for (auto [p, n] : {std::pair{2U, 3UL}, {3U, 3UL}}) {
    auto gs = survey(p, n, true, 0, 0);
    counts << "(" << p << "," << n << ") exhaustive " << gs.size() << ", ";
    for (auto& g : gs) groups.push_back(std::move(g));
  }
  for (auto [p, n] : {std::pair{2U, 4UL}, {2U, 5UL}, {3U, 4UL}}) {
    // U_4(F_2) has exactly 100 such groups and one of them needs four generators
    auto gs = survey(p, n, false, 100, n - 2, 0, 4);
    o.require(gs.size() >= 100, "100 samples for p=" + std::to_string(p) + " n=" + std::to_string(n));
    counts << "(" << p << "," << n << ") sampled " << gs.size() << ", ";
    for (auto& g : gs) groups.push_back(std::move(g));
  }
  for (const auto& g : groups) {
    const std::string tag = group_tag(g);
    try {
      InvariantRing inv(g);
      if (!inv.generators().certified) {
        o.require(false, "certified generators for " + tag);
        continue;
      }
      const Matrix w = fixed_spaces(g).vectors;
      const IdealBasis rel = inv.relative_hilbert_ideal(w);
      o.require(is_complete_intersection(rel), "relative ideal CI for " + tag);
      o.require(is_complete_intersection(inv.hilbert_ideal()), "Hilbert ideal CI for " + tag);
      const Report rep = verify_large_fixed_rank(inv);
      const ReportItem* mu = rep.find("mu-additivity");
      o.require(mu && mu->applicable && mu->ok, "mu additivity for " + tag);
      const bool ext = extended_from_perp(rel, g, w);
      ++large_rank_tally.extended_checked;
      large_rank_tally.extended_failures += !ext;
      ++large_rank_tally.instances;
    } catch (const Error& e) {
      o.require(false, std::string(e.what()) + " for " + tag);
    }
  }
  o.detail << counts.str() << large_rank_tally.instances << " instances checked";
}

void singular_locus(Outcome& o) {
  std::vector<MatrixGroup> groups{f9_example_group(), order27_group(), jordan_group(3, 3), jordan_group(5, 3),
                                  jordan_group(7, 3), jordan_group(3, 2)};
  {
    auto k = Field::prime(2);
    groups.push_back(MatrixGroup::generate(k, 4, {unipotent(k, 4, {{0, 1, 1}, {2, 3, 1}})}));
  }
  for (auto& g : survey(2, 4, false, 14, 0, 0, 3, 5)) groups.push_back(std::move(g));
  for (auto& g : survey(3, 3, false, 8, 0, 0, 3, 5)) groups.push_back(std::move(g));
  std::size_t non_poly = 0, checked = 0;
  for (const auto& g : groups) {
    try {
      InvariantRing inv(g);
      const Report rep = verify_singloc_equivalence(inv);
      o.require(rep.applicable, "applicable for " + group_tag(g));
      o.require(!rep.counterexample(), "three conditions agree for " + group_tag(g));
      non_poly += is_polynomial_ring(inv).status == Status::No;
      ++checked;
    } catch (const Error& e) {
      o.require(false, std::string(e.what()) + " for " + group_tag(g));
    }
  }
  o.require(checked >= 25, "at least 25 instances");
  o.require(non_poly >= 3, "at least 3 non-polynomial instances");
  o.detail << checked << " instances, " << non_poly << " non-polynomial";
}

void order_p2(Outcome& o) {
  std::size_t total = 0, closed = 0;
  for (std::uint32_t p : {2U, 3U}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      for (const auto& g : survey(p, n, true, 0, 0, p * p, 2)) {
        const Report rep = verify_order_p2(g);
        o.require(rep.applicable, "applicable for " + group_tag(g));
        const ReportItem* poly = rep.find("polynomial");
        o.require(poly && poly->ok, "polynomial for " + group_tag(g));
        const ReportItem* cf = rep.find("closed-form");
        o.require(cf && cf->ok, "closed form for " + group_tag(g));
        closed += cf && cf->applicable;
        ++total;
      }
    }
  }
  o.require(closed > 0, "some two-hyperplane instance");
  o.detail << total << " groups of order p^2, " << closed << " with two hyperplanes";
}

void order27_inertia(Outcome& o) {
  const MatrixGroup g = order27_group();
  const auto gs = order27_generators();
  const MatrixGroup in = inertia_subgroup(g, {0, 1});
  const Matrix prod = gs[0] * gs[1] * gs[2];
  o.require(in.order() == 3, "inertia subgroup of order 3");
  o.require(in.contains(prod) && !prod.is_identity(), "g1 g2 g3 generates it");
  o.require(!is_transvection(prod), "g1 g2 g3 is not a transvection");
  const CompositionSeries cs = composition_series(change_basis(g, triangularize(g)));
  bool all3 = !cs.witnesses.empty();
  for (const auto& w : cs.witnesses) all3 = all3 && beta(w) == 3;
  o.require(all3, "all composition witnesses have beta 3");
  o.detail << "|I| = " << in.order() << ", " << cs.witnesses.size() << " witnesses with beta 3";
}

void delta_suite(Outcome& o) {
  std::mt19937_64 rng(1000);
  const std::pair<const char*, FieldPtr> fields[] = {
      {"F_2", Field::prime(2)}, {"F_3", Field::prime(3)}, {"F_9", Field::extension(3, {1, 0, 1})}};
  const char* sep = "";
  for (const auto& [name, k] : fields) {
    const DeltaFailures f = check_delta_identities(rng, k, 1000);
    o.require(f.total() == 0, std::string("delta identities over ") + name);
    o.detail << sep << name << ": " << f.samples << " samples, " << f.total() << " failures";
    sep = "; ";
  }
}

void extended_property(Outcome& o) {
  if (large_rank_tally.instances == 0) large_fixed_rank(o);
  o.require(large_rank_tally.extended_checked >= 50, "at least 50 instances");
  o.require(large_rank_tally.extended_failures == 0, "relative ideals extended from Sym W^perp");
  o.detail << large_rank_tally.extended_checked << " instances with W = V^G";
}

void groebner_oracle(Outcome& o) {
  std::mt19937_64 rng(9);
  std::size_t queries = 0, disagreements = 0;
  for (auto k : {Field::prime(2), Field::prime(3), Field::prime(5), Field::extension(3, {1, 0, 1})}) {
    const MembershipTally t = compare_membership(rng, k, 12, 6);
    queries += t.queries;
    disagreements += t.disagreements;
  }
  o.require(queries >= 500, "at least 500 queries");
  o.require(disagreements == 0, "membership agrees");
  o.detail << queries << " queries, " << disagreements << " disagreements";
}

void step_checks(Outcome& o) {
  // four generators reach all 109 transvection subgroups of U_4(F_2)
  std::vector<MatrixGroup> groups = survey(2, 4, true, 0, 0, 0, 4);
  const std::size_t rank4 = groups.size();
  std::set<std::vector<Matrix>> seen;
  for (const auto& g : groups) seen.insert(g.elements());
  std::size_t order8 = 0;
  for (auto [n, exhaustive] : {std::pair{3UL, true}, {4UL, true}, {5UL, false}}) {
    for (auto& g : survey(2, n, exhaustive, 60, 0, 8, 4)) {
      ++order8;
      if (seen.insert(g.elements()).second) groups.push_back(std::move(g));
    }
  }
  std::size_t steps = 0, flags = 0;
  for (const auto& g : groups) {
    const std::string tag = group_tag(g);
    try {
      InvariantRing inv(g);
      const Status ds = direct_summand_status(inv).status;
      const Status poly = is_polynomial_ring(inv).status;
      o.require(ds != Status::Yes || poly == Status::Yes, "summand implies polynomial for " + tag);
      if (g.dim() == 4) {
        const Report rep = verify_rank4_step(g);
        flags += rep.counterexample();
        o.require(!rep.counterexample(), "rank-4 step checks for " + tag);
        steps += rep.find("unique-generator-outside-invariants") != nullptr;
      }
      if (g.order() == 8) {
        const Report rep = verify_order_p3(g);
        flags += rep.counterexample();
        o.require(!rep.counterexample(), "order-8 checks for " + tag);
      }
    } catch (const Error& e) {
      o.require(false, std::string(e.what()) + " for " + tag);
    }
  }
  o.detail << rank4 << " groups over F_2 in rank 4, " << order8 << " of order 8, " << steps
           << " steps with polynomial R, " << flags << " counterexample flags";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "F_9 rank-3 example", 1, f9_example},
      {2, "rank two invariants", 5, rank_two},
      {3, "complete intersections for large fixed rank", 120, large_fixed_rank},
      {4, "singular locus agreement", 180, singular_locus},
      {5, "order p^2 groups", 0, order_p2},
      {6, "inertia of the order-27 example", 0, order27_inertia},
      {7, "delta operator identities", 30, delta_suite},
      {8, "relative ideals extended from the perpendicular space", 0, extended_property},
      {9, "Groebner membership oracle", 0, groebner_oracle},
      {10, "direct summand and step checks over F_2", 600, step_checks},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

  bool ok = true;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.number)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0) o.require(secs < c.limit_seconds, "runtime limit");
    ok = ok && o.pass;
    std::cout << "criterion " << c.number << " [" << c.title << "]: " << (o.pass ? "PASS" : "FAIL") << " ("
              << std::fixed << std::setprecision(2) << secs << " s";
    if (c.limit_seconds > 0) std::cout << ", limit " << c.limit_seconds << " s";
    std::cout << ") " << o.detail.str() << std::endl;
  }
  return ok ? 0 : 1;
}
