#include "modinv/grobner.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "modinv/error.hpp"

namespace modinv {

namespace {

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint64_t deg;
  std::uint64_t id;
};

const Polynomial* find_reducer(const Monomial& m, const std::vector<const Polynomial*>& basis) {
  for (const Polynomial* g : basis)
    if (g->leading_monomial().divides(m)) return g;
  return nullptr;
}

// Full reduction of f by the (monic) polynomials in `basis`.
Polynomial reduce_full(const Polynomial& f, const std::vector<const Polynomial*>& basis) {
  if (f.is_zero() || basis.empty()) return f;
  const Field& k = f.field();
  Polynomial work = f;
  std::vector<Term> rem;
  while (!work.is_zero()) {
    const Term lt = work.leading_term();
    if (const Polynomial* g = find_reducer(lt.m, basis)) {
      const Elem c = k.div(lt.c, g->leading_coefficient());
      work.sub_mul_term(c, lt.m / g->leading_monomial(), *g);
    } else {
      rem.push_back(lt);
      // drop the leading term: subtract it as a monomial
      work.sub_mul_term(lt.c, lt.m, Polynomial::constant(f.ring(), 1));
    }
  }
  Polynomial out(f.ring());
  if (rem.empty()) return out;
  return Polynomial(f.ring(), std::move(rem));
}

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b, const Monomial& l) {
  const Field& k = a.field();
  Polynomial s = a.mul_term(l / a.leading_monomial(), k.inv(a.leading_coefficient()));
  s.sub_mul_term(k.inv(b.leading_coefficient()), l / b.leading_monomial(), b);
  return s;
}

}  // namespace

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& gb) {
  std::vector<const Polynomial*> basis;
  for (const auto& g : gb)
    if (!g.is_zero()) basis.push_back(&g);
  return reduce_full(f, basis);
}

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const GroebnerOptions& opts,
                                   GroebnerStats* stats) {
  GroebnerStats local;
  GroebnerStats& st = stats ? *stats : local;
  std::vector<Polynomial> all;
  RingPtr ring;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!ring) ring = g.ring();
    else if (!ring->compatible(*g.ring())) throw UsageError("generators live in different rings");
    all.push_back(g.monic());
  }
  if (all.empty()) return {};
  for (const auto& g : all)
    if (g.is_constant()) return {Polynomial::constant(ring, 1)};

  // Sort inputs by leading monomial so the result does not depend on input order.
  std::sort(all.begin(), all.end(), [&](const Polynomial& a, const Polynomial& b) {
    const int c = ring->compare(a.leading_monomial(), b.leading_monomial());
    if (c != 0) return c < 0;
    return a.terms().size() < b.terms().size();
  });

  const MonomialOrder& ord = ring->order();
  const std::size_t n = ring->nvars();
  std::vector<Polynomial> polys;
  std::vector<std::size_t> active;  // indices into polys with minimal leading monomials
  std::vector<Pair> pairs;
  std::uint64_t next_id = 0;

  auto lm = [&](std::size_t i) -> const Monomial& { return polys[i].leading_monomial(); };

  // Gebauer-Moeller update with the new polynomial at index h.
  auto update = [&](std::size_t h) {
    const Monomial& mh = lm(h);
    std::vector<Pair> c;
    for (std::size_t g : active) {
      Monomial l = lcm(mh, lm(g));
      c.push_back({g, h, l, ord.weighted_degree(l, 0, n), 0});
    }
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const Pair& p = c[a];
      bool keep = mh.coprime(lm(p.i));
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < c.size() && keep; ++b)
          if (c[b].lcm.divides(p.lcm)) keep = false;
        for (const Pair& q : d)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
      else ++st.pairs_skipped;
    }
    std::vector<Pair> kept;
    for (Pair& p : pairs) {
      const bool drop = mh.divides(p.lcm) && !(lcm(lm(p.i), mh) == p.lcm) && !(lcm(mh, lm(p.j)) == p.lcm);
      if (drop) ++st.pairs_skipped;
      else kept.push_back(std::move(p));
    }
    for (Pair& p : d) {
      if (mh.coprime(lm(p.i))) {
        ++st.pairs_skipped;
        continue;
      }
      p.id = next_id++;
      kept.push_back(p);
    }
    pairs = std::move(kept);
    std::vector<std::size_t> na;
    for (std::size_t g : active)
      if (!mh.divides(lm(g))) na.push_back(g);
    na.push_back(h);
    active = std::move(na);
  };

  auto current_basis = [&]() {
    std::vector<const Polynomial*> b;
    for (std::size_t i : active) b.push_back(&polys[i]);
    return b;
  };

  for (auto& g : all) {
    Polynomial r = reduce_full(g, current_basis());
    if (r.is_zero()) continue;
    if (r.is_constant()) return {Polynomial::constant(ring, 1)};
    polys.push_back(r.monic());
    update(polys.size() - 1);
  }

  while (!pairs.empty()) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < pairs.size(); ++a) {
      if (pairs[a].deg < pairs[best].deg || (pairs[a].deg == pairs[best].deg && pairs[a].id < pairs[best].id))
        best = a;
    }
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    if (++st.pairs_reduced > opts.max_pair_reductions)
      throw ResourceError("groebner", "pair budget of " + std::to_string(opts.max_pair_reductions) + " exhausted");
    Polynomial s = s_polynomial(polys[p.i], polys[p.j], p.lcm);
    Polynomial r = reduce_full(s, current_basis());
    if (r.is_zero()) continue;
    if (r.is_constant()) return {Polynomial::constant(ring, 1)};
    polys.push_back(r.monic());
    update(polys.size() - 1);
  }

  // interreduce to the reduced basis
  std::vector<Polynomial> out;
  for (std::size_t i : active) out.push_back(polys[i]);
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->less(a.leading_monomial(), b.leading_monomial());
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<const Polynomial*> others;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i) others.push_back(&out[j]);
    // leading terms are already irreducible, reduce the tail only
    const Term lt = out[i].leading_term();
    Polynomial tail = out[i];
    tail.sub_mul_term(lt.c, lt.m, Polynomial::constant(ring, 1));
    out[i] = Polynomial::monomial(ring, lt.m, lt.c) + reduce_full(tail, others);
  }
  return out;
}

IdealBasis::IdealBasis(RingPtr ring, std::vector<Polynomial> gens, GroebnerOptions opts)
    : ring_(std::move(ring)), gens_(std::move(gens)), opts_(opts) {
  for (const auto& g : gens_)
    if (!g.is_zero() && !g.ring()->compatible(*ring_)) throw UsageError("generator outside the ideal's ring");
}

const std::vector<Polynomial>& IdealBasis::gb() const {
  if (!gb_) gb_ = buchberger(gens_, opts_, &stats_);
  return *gb_;
}

bool IdealBasis::is_unit() const {
  const auto& g = gb();
  return g.size() == 1 && g[0].is_constant();
}

bool IdealBasis::contains(const IdealBasis& other) const {
  for (const auto& g : other.gens())
    if (!contains(g)) return false;
  return true;
}

bool IdealBasis::operator==(const IdealBasis& other) const {
  const auto& a = gb();
  const auto& b = other.gb();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

IdealBasis IdealBasis::operator+(const IdealBasis& other) const {
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), other.gens_.begin(), other.gens_.end());
  return IdealBasis(ring_, std::move(g), opts_);
}

std::vector<Polynomial> elimination_ideal(const std::vector<Polynomial>& gb) {
  std::vector<Polynomial> out;
  if (gb.empty()) return out;
  const MonomialOrder& ord = gb.front().ring()->order();
  if (ord.kind() != MonomialOrder::Kind::LexBlockElim) throw UsageError("elimination needs a block order");
  const std::size_t b = ord.block();
  for (const auto& g : gb) {
    bool free = true;
    for (std::size_t i = 0; i < b && free; ++i) free = !g.involves(i);
    if (free) out.push_back(g);
  }
  return out;
}

std::vector<Polynomial> relation_ideal(const std::vector<Polynomial>& images, RingPtr target,
                                       const GroebnerOptions& opts, GroebnerStats* stats) {
  if (images.empty()) return {};
  const RingPtr src = images.front().ring();
  if (!src) throw UsageError("relation images need a ring");
  const std::size_t n = src->nvars(), m = images.size();
  if (target->nvars() != m) throw UsageError("relation ring has the wrong number of variables");
  if (n + m > kMaxVars) throw ResourceError("relations", "too many variables for elimination");
  std::vector<std::uint32_t> w(n, 1);
  const auto& tw = target->order().weights();
  for (std::size_t i = 0; i < m; ++i) w.push_back(tw.empty() ? 1U : tw.at(i));
  std::vector<std::string> names = src->names();
  for (const auto& s : target->names()) names.push_back(s);
  auto big = Ring::make(src->field(), n + m, MonomialOrder::block_elim(n, w), names);
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Term> t;
    for (const auto& term : images[i].terms()) t.push_back({term.m, src->field()->neg(term.c)});
    t.push_back({Monomial::var(n + i), 1});
    gens.emplace_back(big, std::move(t));
  }
  auto gb = buchberger(gens, opts, stats);
  std::vector<Polynomial> out;
  for (const auto& g : elimination_ideal(gb)) {
    std::vector<Term> t;
    for (const auto& term : g.terms()) {
      Monomial mm;
      for (std::size_t i = 0; i < m; ++i) mm.e[i] = term.m.e[n + i];
      mm.deg = term.m.deg;
      t.push_back({mm, term.c});
    }
    out.emplace_back(target, std::move(t));
  }
  return out;
}

namespace {

std::vector<std::uint64_t> lm_supports(const std::vector<Polynomial>& gb) {
  std::vector<std::uint64_t> s;
  for (const auto& g : gb) {
    const Monomial& m = g.leading_monomial();
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (m.e[i]) mask |= std::uint64_t{1} << i;
    s.push_back(mask);
  }
  return s;
}

bool is_unit_basis(const std::vector<Polynomial>& gb) {
  for (const auto& g : gb)
    if (g.is_constant() && !g.is_zero()) return true;
  return false;
}

// All maximal sets U of variables with no leading monomial supported inside U.
void maximal_sets(const std::vector<std::uint64_t>& sup, std::size_t nvars, std::vector<std::uint64_t>& out) {
  std::size_t steps = 0;
  auto independent = [&](std::uint64_t u) {
    for (auto s : sup)
      if ((s & ~u) == 0) return false;
    return true;
  };
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t u) {
    if (++steps > 4000000) throw ResourceError("dimension", "independent-set search too large");
    if (i == nvars) {
      for (std::size_t v = 0; v < nvars; ++v)
        if (!(u >> v & 1) && independent(u | std::uint64_t{1} << v)) return;
      out.push_back(u);
      return;
    }
    const std::uint64_t with = u | std::uint64_t{1} << i;
    if (independent(with)) rec(i + 1, with);
    rec(i + 1, u);
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

int krull_dimension(const std::vector<Polynomial>& gb, std::size_t nvars) {
  if (is_unit_basis(gb)) return -1;
  auto sizes = maximal_independent_set_sizes(gb, nvars);
  std::size_t best = 0;
  for (auto s : sizes) best = std::max(best, s);
  return static_cast<int>(best);
}

std::vector<std::size_t> maximal_independent_set_sizes(const std::vector<Polynomial>& gb, std::size_t nvars) {
  if (is_unit_basis(gb)) return {};
  std::vector<std::uint64_t> sets;
  maximal_sets(lm_supports(gb), nvars, sets);
  std::vector<std::size_t> sizes;
  for (auto u : sets) sizes.push_back(static_cast<std::size_t>(std::popcount(u)));
  return sizes;
}

std::size_t height(const std::vector<Polynomial>& gb, std::size_t nvars) {
  const int d = krull_dimension(gb, nvars);
  return d < 0 ? nvars + 1 : nvars - static_cast<std::size_t>(d);
}

namespace {

constexpr std::uint64_t kStandardMonomialCap = 20000000;

// Visits every standard monomial (requires dimension 0) and returns false if
// the ideal is not zero-dimensional.
template <class Visit>
bool walk_standard(const std::vector<Polynomial>& gb, std::size_t nvars, Visit visit) {
  if (is_unit_basis(gb)) return true;
  std::vector<Exp> bound(nvars, 0);
  for (const auto& g : gb) {
    const Monomial& m = g.leading_monomial();
    std::size_t nz = 0, var = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m.e[i]) ++nz, var = i;
    if (nz == 1 && (bound[var] == 0 || m.e[var] < bound[var])) bound[var] = m.e[var];
  }
  for (auto b : bound)
    if (b == 0) return false;
  std::vector<Monomial> lms;
  for (const auto& g : gb) lms.push_back(g.leading_monomial());
  std::uint64_t count = 0;
  Monomial cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nvars) {
      if (++count > kStandardMonomialCap) throw ResourceError("colength", "too many standard monomials");
      visit(cur);
      return;
    }
    for (Exp e = 0; e < bound[i]; ++e) {
      cur.e[i] = e;
      cur.deg += e;
      bool dead = false;
      for (const auto& l : lms)
        if (l.divides(cur)) {
          dead = true;
          break;
        }
      if (!dead) rec(i + 1);
      cur.deg -= e;
      cur.e[i] = 0;
      // a divisible prefix stays divisible for larger e
      if (dead) break;
    }
  };
  rec(0);
  return true;
}

}  // namespace

std::optional<std::uint64_t> colength(const std::vector<Polynomial>& gb, std::size_t nvars) {
  std::uint64_t c = 0;
  if (!walk_standard(gb, nvars, [&](const Monomial&) { ++c; })) return std::nullopt;
  return c;
}

std::optional<std::uint32_t> top_degree(const std::vector<Polynomial>& gb, std::size_t nvars) {
  std::uint32_t t = 0;
  bool any = false;
  if (!walk_standard(gb, nvars, [&](const Monomial& m) {
        t = std::max(t, m.deg);
        any = true;
      }))
    return std::nullopt;
  if (!any) return std::nullopt;
  return t;
}

std::uint64_t standard_monomial_count(const std::vector<Polynomial>& gb, std::size_t nvars, std::uint32_t d) {
  if (is_unit_basis(gb)) return 0;
  std::vector<Monomial> lms;
  for (const auto& g : gb) lms.push_back(g.leading_monomial());
  std::uint64_t count = 0;
  Monomial cur;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == nvars || nvars == 0) {
      if (nvars) {
        cur.e[i] = static_cast<Exp>(left);
        cur.deg += left;
      } else if (left) {
        return;
      }
      bool dead = false;
      for (const auto& l : lms)
        if (l.divides(cur)) dead = true;
      count += !dead;
      if (nvars) {
        cur.deg -= left;
        cur.e[i] = 0;
      }
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      cur.e[i] = static_cast<Exp>(k);
      cur.deg += k;
      rec(i + 1, left - k);
      cur.deg -= k;
    }
    cur.e[i] = 0;
  };
  rec(0, d);
  return count;
}

std::vector<std::size_t> minimal_generating_subset(const std::vector<Polynomial>& gens, const GroebnerOptions& opts) {
  std::map<std::uint32_t, std::vector<std::size_t>> by_degree;
  RingPtr ring;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    if (!gens[i].is_homogeneous()) throw UsageError("minimal generator count needs homogeneous generators");
    ring = gens[i].ring();
    by_degree[gens[i].total_degree()].push_back(i);
  }
  std::vector<std::size_t> chosen;
  std::vector<Polynomial> lower;
  for (const auto& [d, idx] : by_degree) {
    if (d == 0) return {idx.front()};
    const auto gb = buchberger(lower, opts);
    // coset representatives of degree-d generators modulo the lower ideal
    const auto monos = ring->monomials_of_degree(d);
    std::unordered_map<Monomial, std::size_t, MonomialHash> col;
    for (std::size_t c = 0; c < monos.size(); ++c) col.emplace(monos[c], c);
    EchelonSpace space(ring->field(), monos.size());
    for (std::size_t i : idx) {
      Polynomial r = normal_form(gens[i], gb);
      std::vector<Elem> v(monos.size(), 0);
      for (const auto& t : r.terms()) v[col.at(t.m)] = t.c;
      if (space.insert(std::move(v))) chosen.push_back(i);
    }
    for (std::size_t i : idx) lower.push_back(gens[i]);
  }
  return chosen;
}

std::size_t minimal_generator_count(const std::vector<Polynomial>& gens, const GroebnerOptions& opts) {
  return minimal_generating_subset(gens, opts).size();
}

}  // namespace modinv
