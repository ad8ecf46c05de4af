#include <algorithm>
#include <map>

#include "modinv/error.hpp"
#include "modinv/invariants.hpp"
#include "slices.hpp"

namespace modinv {

namespace {

// h(a_1, ..., a_m) for h in k[y_1..y_m].
Polynomial evaluate(const Polynomial& h, const std::vector<Polynomial>& a, const RingPtr& ring) {
  std::map<std::pair<std::size_t, Exp>, Polynomial> pw;
  auto power = [&](std::size_t i, Exp e) -> const Polynomial& {
    auto it = pw.find({i, e});
    if (it != pw.end()) return it->second;
    return pw.emplace(std::make_pair(i, e), a[i].pow(e)).first->second;
  };
  Polynomial out(ring);
  for (const auto& t : h.terms()) {
    Polynomial term = Polynomial::constant(ring, t.c);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (t.m.e[i]) term = term * power(i, t.m.e[i]);
    out = out + term;
  }
  return out;
}

std::vector<Elem> row_of(const Matrix& m, std::size_t r) { return {m.row(r), m.row(r) + m.cols()}; }

std::size_t rank_of_rows(const Matrix& w) {
  EchelonSpace sp(w.field(), w.cols());
  for (std::size_t r = 0; r < w.rows(); ++r) sp.insert(row_of(w, r));
  return sp.rank();
}

bool all_zero(const std::vector<Elem>& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

bool leading_is_xn_power(const Polynomial& f) {
  const Monomial& lm = f.leading_monomial();
  return lm.e[f.ring()->nvars() - 1] == lm.deg;
}

// Sorts by leading monomial after making leading monomials distinct: an
// element outside R is reduced by one inside R, otherwise the later by the
// earlier, so membership in R is preserved.
void distinct_leading_monomials(std::vector<Polynomial>& gens, InvariantRing& r) {
  const RingPtr& ring = gens.front().ring();
  const Field& k = *ring->field();
  auto in_r = [&](const Polynomial& f) { return r.in_slice(f.in_ring(r.ring())); };
  for (int guard = 0; guard < 10000; ++guard) {
    std::sort(gens.begin(), gens.end(), [&](const Polynomial& x, const Polynomial& y) {
      return ring->less(x.leading_monomial(), y.leading_monomial());
    });
    std::size_t i = 1;
    while (i < gens.size() && !(gens[i - 1].leading_monomial() == gens[i].leading_monomial())) ++i;
    if (i == gens.size()) return;
    std::size_t keep = i - 1, change = i;
    if (!in_r(gens[keep]) && in_r(gens[change])) std::swap(keep, change);
    const Elem c = k.div(gens[change].leading_coefficient(), gens[keep].leading_coefficient());
    Polynomial next = gens[change] - gens[keep].scaled(c);
    if (next.is_zero()) throw InternalError("generating set is not minimal");
    gens[change] = next.monic();
  }
  throw InternalError("leading monomial normalization did not terminate");
}

// Leaves at most one generator with leading monomial a power of x_n, by the
// replacements a_j - c a_{i1}^e (a_{i1} in R) or a_j - c N(a_{i1})^e (a_{i1}
// outside R, N the orbit product).
void normalize_xn_powers(std::vector<Polynomial>& gens, InvariantRing& r) {
  if (gens.empty()) return;
  const RingPtr& ring = gens.front().ring();
  const Field& k = *ring->field();
  distinct_leading_monomials(gens, r);
  for (int guard = 0; guard < 1000; ++guard) {
    std::vector<std::size_t> xn;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (leading_is_xn_power(gens[i])) xn.push_back(i);
    if (xn.size() <= 1) return;
    const Polynomial& lead = gens[xn[0]];
    Polynomial base = r.in_slice(lead.in_ring(r.ring())) ? lead
                                                          : orbit_product(r.group(), lead.in_ring(r.ring())).in_ring(ring);
    const std::uint32_t dj = gens[xn[1]].total_degree(), db = base.total_degree();
    if (dj % db != 0) return;
    const Polynomial cand = base.pow(dj / db);
    const Elem c = k.div(gens[xn[1]].leading_coefficient(), cand.leading_coefficient());
    Polynomial next = gens[xn[1]] - cand.scaled(c);
    if (next.is_zero()) throw InternalError("generating set is not minimal");
    gens[xn[1]] = next.monic();
    distinct_leading_monomials(gens, r);
  }
}

}  // namespace

std::vector<Polynomial> perp_ideal(const MatrixGroup& g, const Matrix& w, const RingPtr& ring) {
  const std::size_t n = g.dim();
  if (w.rows() > 0 && w.cols() != n) throw UsageError("subspace rows must have length n");
  const FixedSpaces fs = fixed_spaces(g);
  EchelonSpace fixed(g.field(), n);
  for (std::size_t r = 0; r < fs.vectors.rows(); ++r) fixed.insert(row_of(fs.vectors, r));
  for (std::size_t r = 0; r < w.rows(); ++r)
    if (!fixed.contains(row_of(w, r))) throw UsageError("subspace is not contained in V^G");
  std::vector<Polynomial> out;
  if (w.rows() == 0 || rank_of_rows(w) == 0) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(Polynomial::variable(ring, i));
    return out;
  }
  // x_i(v_j) = delta_ij, so c annihilates W when W c = 0
  const Matrix ker = kernel(w);
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    std::vector<Elem> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ker.at(i, c);
    out.push_back(Polynomial::linear(ring, v));
  }
  return out;
}

IdealBasis InvariantRing::relative_hilbert_ideal(const Matrix& w) {
  const auto q = buchberger(perp_ideal(group_, w, ring_), opts_.gb);
  const auto& gens = generators().gens;
  std::vector<Polynomial> out, nonzero, lifts;
  for (const auto& a : gens) {
    Polynomial img = normal_form(a, q);
    if (img.is_zero()) {
      out.push_back(a);
    } else {
      nonzero.push_back(std::move(img));
      lifts.push_back(a);
    }
  }
  if (!nonzero.empty()) {
    // R cap qS is the image of the relations among the reduced generators
    const PresentedAlgebra pres = presentation_of(nonzero, opts_.gb);
    for (const auto& h : pres.relations) out.push_back(evaluate(h, lifts, ring_));
  }
  return IdealBasis(ring_, std::move(out), opts_.gb);
}

IdealBasis relative_hilbert_ideal_degreewise(InvariantRing& r, const Matrix& w, std::uint32_t bound) {
  const RingPtr& ring = r.ring();
  const FieldPtr& field = ring->field();
  const auto q = buchberger(perp_ideal(r.group(), w, ring), r.options().gb);
  detail::MonomialIndex idx(ring, r.options().slice_cap);
  std::vector<Polynomial> gens;
  std::vector<Polynomial> gb;
  for (std::uint32_t d = 1; d <= bound; ++d) {
    const auto& basis = r.slice(d);
    if (basis.empty()) continue;
    const std::size_t dn = idx.at(d).monos.size();
    EchelonSpace stack(field, dn + basis.size());
    bool added = false;
    for (std::size_t t = 0; t < basis.size(); ++t) {
      std::vector<Elem> row = idx.dense(normal_form(basis[t], q), d);
      row.resize(dn + basis.size(), 0);
      row[dn + t] = 1;
      if (stack.reduce(row) < dn) {
        stack.insert(std::move(row));
        continue;
      }
      Polynomial f(ring);
      for (std::size_t s = 0; s <= t; ++s)
        if (row[dn + s] != 0) f = f + basis[s].scaled(row[dn + s]);
      if (!normal_form(f, gb).is_zero()) {
        gens.push_back(f);
        added = true;
      }
    }
    if (added) gb = buchberger(gens, r.options().gb);
  }
  return IdealBasis(ring, std::move(gens), r.options().gb);
}

FixedComplementDecomposition fixed_complement_decomposition(InvariantRing& r, const Matrix& w) {
  const RingPtr& ring = r.ring();
  const std::size_t n = ring->nvars();
  const auto& gs = r.generators();
  if (!gs.certified) throw NotApplicable("generators are not certified");
  const std::size_t dim_w = w.rows() ? rank_of_rows(w) : 0;
  const auto q = buchberger(perp_ideal(r.group(), w, ring), r.options().gb);

  FixedComplementDecomposition out;
  out.codim = n - dim_w;
  out.relative = r.relative_hilbert_ideal(w);

  // keep a generator when its image is not in the subalgebra of kept images
  auto idx = std::make_shared<detail::MonomialIndex>(ring, r.options().slice_cap);
  std::vector<Polynomial> kept_images;
  for (const auto& a : gs.gens) {
    const Polynomial img = normal_form(a, q);
    if (img.is_zero()) continue;
    bool inside = false;
    if (!kept_images.empty()) {
      SliceEngine eng(idx, kept_images, {});
      const std::uint32_t d = img.total_degree();
      std::vector<Elem> v = idx->dense(img, d);
      detail::clear_pivots(*ring->field(), eng.slice(d), v);
      inside = all_zero(v);
    }
    if (!inside) {
      kept_images.push_back(img);
      out.complement.push_back(a);
    }
  }
  if (out.complement.size() != dim_w)
    throw NotApplicable("the restricted invariants need " + std::to_string(out.complement.size()) +
                        " generators on a subspace of dimension " + std::to_string(dim_w));
  std::vector<Polynomial> sum = out.relative.gens();
  sum.insert(sum.end(), out.complement.begin(), out.complement.end());
  if (!(IdealBasis(ring, sum, r.options().gb) == r.hilbert_ideal()))
    throw InternalError("Hilbert ideal differs from relative ideal plus complement");
  return out;
}

StepAnalysis step_analysis(InvariantRing& a, InvariantRing& r) {
  const MatrixGroup& gp = a.group();
  const MatrixGroup& g = r.group();
  const std::size_t p = g.field()->characteristic();
  if (!gp.is_subgroup_of(g) || g.order() != p * gp.order())
    throw UsageError("step analysis needs a subgroup of index p");
  const RingPtr& ring = a.ring();
  const Field& k = *ring->field();
  const std::size_t n = ring->nvars();
  const GeneratorSet& rg = r.generators();
  const GeneratorSet& ag = a.generators();
  StepAnalysis out;
  const std::uint32_t limit = std::max<std::uint32_t>(1, ag.searched_to);
  for (std::uint32_t d = 1; d <= limit; ++d) {
    const std::size_t da = a.slice_dim(d), dr = r.slice_dim(d);
    if (da > dr) {
      out.d0 = d;
      out.quotient_rank = da - dr;
      break;
    }
  }
  auto finish = [&](GeneratorSet set) {
    out.a_gens = std::move(set);
    out.outside_r.clear();
    out.xn_powers.clear();
    for (std::size_t i = 0; i < out.a_gens.gens.size(); ++i) {
      const Polynomial& f = out.a_gens.gens[i];
      if (!r.in_slice(f.in_ring(r.ring()))) out.outside_r.push_back(i);
      const Monomial& lm = f.leading_monomial();
      if (lm.e[n - 1] == lm.deg) out.xn_powers.push_back(i);
    }
    return out;
  };
  if (!out.d0) return finish(ag);
  for (const auto& b : a.slice(*out.d0))
    if (!r.in_slice(b.in_ring(r.ring()))) {
      out.witness = b;
      break;
    }
  if (!out.witness) throw InternalError("no witness in the first degree where the rings differ");

  // Minimal generators of A from R's generators and the witness; elements of
  // R are only reduced by elements of R so they stay in R.
  auto idx = std::make_shared<detail::MonomialIndex>(ring, a.options().slice_cap);
  std::vector<Polynomial> kept_r, kept_all;
  bool generated = true;
  for (std::uint32_t d = 1; d <= limit; ++d) {
    const std::size_t dn = idx->at(d).monos.size();
    std::vector<Polynomial> lower_r = kept_r, lower_all = kept_all;
    EchelonSpace q_space(ring->field(), dn), p_space(ring->field(), dn);
    if (!lower_r.empty()) {
      SliceEngine eng(idx, lower_r, {});
      for (const auto& v : eng.slice(d).dense) q_space.insert(v);
    }
    if (!lower_all.empty()) {
      SliceEngine eng(idx, lower_all, {});
      for (const auto& v : eng.slice(d).dense) p_space.insert(v);
    }
    for (const auto& f : rg.gens) {
      if (f.total_degree() != d) continue;
      std::vector<Elem> v = idx->dense(f.in_ring(ring), d);
      if (p_space.contains(v)) continue;
      const detail::Slice qs = detail::canonical_slice(*idx, d, q_space);
      detail::clear_pivots(k, qs, v);
      q_space.insert(v);
      p_space.insert(v);
      kept_r.push_back(idx->poly(d, v).monic());
      kept_all.push_back(kept_r.back());
    }
    if (d == *out.d0) {
      std::vector<Elem> v = idx->dense(*out.witness, d);
      if (!p_space.contains(v)) {
        const detail::Slice ps = detail::canonical_slice(*idx, d, p_space);
        detail::clear_pivots(k, ps, v);
        p_space.insert(v);
        kept_all.push_back(idx->poly(d, v).monic());
      }
    }
    if (p_space.rank() != a.slice_dim(d)) generated = false;
  }
  out.generated_by_r_and_witness = generated && ag.certified;
  if (!generated) return finish(ag);
  GeneratorSet set;
  set.gens = kept_all;
  normalize_xn_powers(set.gens, r);
  set.certified = ag.certified;
  set.certificate = ag.certificate;
  set.polynomial = ag.polynomial;
  set.searched_to = ag.searched_to;
  return finish(std::move(set));
}

}  // namespace modinv
