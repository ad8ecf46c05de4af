#include "slices.hpp"

#include <algorithm>
#include <set>

#include "modinv/error.hpp"

namespace modinv {

namespace detail {

namespace {

std::uint64_t monomial_count(std::size_t n, std::uint32_t d, std::uint64_t stop) {
  // C(d + n - 1, n - 1), abandoned once it passes `stop`
  std::uint64_t c = 1;
  for (std::size_t i = 1; i < n; ++i) {
    c = c * (d + i) / i;
    if (c > stop) return stop + 1;
  }
  return c;
}

}  // namespace

const DegreeIndex& MonomialIndex::at(std::uint32_t d) {
  auto it = cache_.find(d);
  if (it != cache_.end()) return it->second;
  const std::uint64_t count = monomial_count(ring_->nvars(), d, cap_);
  if (count > cap_)
    throw ResourceError("invariant slice",
                        "degree " + std::to_string(d) + " exceeds the slice cap of " + std::to_string(cap_));
  DegreeIndex di;
  di.monos = ring_->monomials_of_degree(d);
  for (std::size_t i = 0; i < di.monos.size(); ++i) di.col.emplace(di.monos[i], i);
  return cache_.emplace(d, std::move(di)).first->second;
}

std::vector<Elem> MonomialIndex::dense(const Polynomial& f, std::uint32_t d) {
  const DegreeIndex& di = at(d);
  std::vector<Elem> v(di.monos.size(), 0);
  for (const auto& t : f.terms()) {
    auto it = di.col.find(t.m);
    if (it == di.col.end()) throw InternalError("polynomial is not homogeneous of degree " + std::to_string(d));
    v[it->second] = t.c;
  }
  return v;
}

Polynomial MonomialIndex::poly(std::uint32_t d, const std::vector<Elem>& v) {
  const DegreeIndex& di = at(d);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < di.monos.size() && i < v.size(); ++i)
    if (v[i] != 0) terms.push_back({di.monos[i], v[i]});
  return Polynomial(ring_, std::move(terms));
}

Slice canonical_slice(MonomialIndex& idx, std::uint32_t d, const EchelonSpace& space) {
  Slice s;
  s.dense = space.reduced_basis();
  s.pivots = space.pivots();
  for (const auto& v : s.dense) s.basis.push_back(idx.poly(d, v));
  return s;
}

void clear_pivots(const Field& k, const Slice& s, std::vector<Elem>& v) {
  for (std::size_t j = 0; j < s.dim(); ++j) {
    const Elem c = v[s.pivots[j]];
    if (c != 0) axpy_sub(k, v, c, s.dense[j]);
  }
}

std::vector<Polynomial> GeneratorBuilder::step(std::uint32_t d) {
  if (d != done_ + 1) throw InternalError("generator search must proceed one degree at a time");
  done_ = d;
  const Slice& r = slices_(d);
  const std::size_t dim = r.dim();
  if (dim == 0) return {};
  const Field& k = *idx_->ring()->field();
  const DegreeIndex& top = idx_->at(d);

  // Products f*b projected onto the pivot coordinates of the canonical
  // basis of R_d; since that basis is reduced, these coordinates are the
  // coefficients at the pivot monomials.
  std::vector<Monomial> piv;
  for (auto c : r.pivots) piv.push_back(top.monos[c]);
  EchelonSpace prod(idx_->ring()->field(), dim);
  for (const auto& f : gens_) {
    const std::uint32_t e = f.total_degree();
    if (e >= d) continue;
    const Slice& low = slices_(d - e);
    const DegreeIndex& li = idx_->at(d - e);
    for (const auto& b : low.dense) {
      std::vector<Elem> coords(dim, 0);
      for (std::size_t j = 0; j < dim; ++j) {
        Elem acc = 0;
        for (const auto& t : f.terms()) {
          if (!t.m.divides(piv[j])) continue;
          const Elem bc = b[li.col.at(piv[j] / t.m)];
          if (bc != 0) acc = k.add(acc, k.mul(bc, t.c));
        }
        coords[j] = acc;
      }
      prod.insert(std::move(coords));
      if (prod.rank() == dim) return {};
    }
  }
  const auto taken = prod.pivots();
  const std::set<std::size_t> used(taken.begin(), taken.end());
  std::vector<Polynomial> fresh;
  // ascending leading monomial: canonical basis is sorted by pivot ascending, i.e. LM descending
  for (std::size_t j = dim; j-- > 0;)
    if (!used.count(j)) fresh.push_back(r.basis[j]);
  gens_.insert(gens_.end(), fresh.begin(), fresh.end());
  return fresh;
}

Slice GeneratorBuilder::decomposables(std::uint32_t d) {
  if (d > done_ + 1) throw InternalError("decomposables requested past the searched degree");
  const DegreeIndex& top = idx_->at(d);
  EchelonSpace space(idx_->ring()->field(), top.monos.size());
  for (const auto& f : gens_) {
    const std::uint32_t e = f.total_degree();
    if (e >= d) continue;
    for (const auto& b : slices_(d - e).basis) space.insert(idx_->dense(f * b, d));
  }
  return canonical_slice(*idx_, d, space);
}

}  // namespace detail

SliceEngine::SliceEngine(std::shared_ptr<detail::MonomialIndex> idx, std::vector<Polynomial> base,
                         std::vector<Matrix> constraints)
    : idx_(std::move(idx)), base_(std::move(base)) {
  if (base_.size() > kMaxVars) throw UsageError("too many base polynomials for a slice engine");
  for (const auto& f : base_) {
    if (f.is_zero() || !f.is_homogeneous() || f.total_degree() == 0)
      throw UsageError("slice engine needs nonzero homogeneous polynomials of positive degree");
    weights_.push_back(f.total_degree());
  }
  for (const auto& m : constraints) {
    acts_.emplace_back(idx_->ring(), m);
    std::vector<Polynomial> imgs;
    for (const auto& f : base_) imgs.push_back(acts_.back().apply(f));
    base_imgs_.push_back(std::move(imgs));
  }
}

const SliceEngine::Power& SliceEngine::power(const Monomial& beta) {
  auto it = powers_.find(beta);
  if (it != powers_.end()) return it->second;
  Power p;
  if (beta.deg == 0) {
    p.val = Polynomial::constant(idx_->ring(), 1);
    p.imgs.assign(acts_.size(), p.val);
  } else {
    std::size_t j = base_.size();
    while (beta.e[j - 1] == 0) --j;
    --j;
    Monomial prev = beta;
    --prev.e[j];
    --prev.deg;
    const Power& q = power(prev);
    p.val = q.val * base_[j];
    for (std::size_t c = 0; c < acts_.size(); ++c) p.imgs.push_back(q.imgs[c] * base_imgs_[c][j]);
  }
  return powers_.emplace(beta, std::move(p)).first->second;
}

std::vector<Monomial> SliceEngine::exponents(std::uint32_t d) const {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i == base_.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (std::uint32_t k = 0; k * weights_[i] <= left; ++k) {
      cur.e[i] = static_cast<Exp>(k);
      cur.deg += k;
      rec(i + 1, left - k * weights_[i]);
      cur.deg -= k;
    }
    cur.e[i] = 0;
  };
  rec(0, d);
  return out;
}

const detail::Slice& SliceEngine::slice(std::uint32_t d) {
  auto it = slices_.find(d);
  if (it != slices_.end()) return it->second;
  const detail::DegreeIndex& di = idx_->at(d);
  const std::size_t dn = di.monos.size();
  const FieldPtr& field = idx_->ring()->field();
  const Field& k = *field;
  const auto betas = exponents(d);
  EchelonSpace span(field, dn);

  if (acts_.empty()) {
    for (const auto& b : betas) span.insert(idx_->dense(power(b).val, d));
    rows_ += betas.size();
    return slices_.emplace(d, detail::canonical_slice(*idx_, d, span)).first->second;
  }

  // rows [(g_1 - 1)F^b | ... | (g_c - 1)F^b | tag]; a row whose left part
  // reduces to zero gives a fixed combination in its tag part
  const std::size_t left = acts_.size() * dn;
  EchelonSpace stack(field, left + betas.size());
  for (std::size_t t = 0; t < betas.size(); ++t) {
    const Power& p = power(betas[t]);
    std::vector<Elem> row(left + betas.size(), 0);
    for (std::size_t c = 0; c < acts_.size(); ++c) {
      for (const auto& term : p.imgs[c].terms()) {
        Elem& e = row[c * dn + di.col.at(term.m)];
        e = k.add(e, term.c);
      }
      for (const auto& term : p.val.terms()) {
        Elem& e = row[c * dn + di.col.at(term.m)];
        e = k.sub(e, term.c);
      }
    }
    row[left + t] = 1;
    ++rows_;
    if (stack.reduce(row) < left) {
      stack.insert(std::move(row));
      continue;
    }
    std::vector<Elem> fixed(dn, 0);
    for (std::size_t s = 0; s <= t; ++s) {
      const Elem c = row[left + s];
      if (c == 0) continue;
      for (const auto& term : power(betas[s]).val.terms()) {
        Elem& e = fixed[di.col.at(term.m)];
        e = k.add(e, k.mul(c, term.c));
      }
    }
    span.insert(std::move(fixed));
  }
  return slices_.emplace(d, detail::canonical_slice(*idx_, d, span)).first->second;
}

}  // namespace modinv
