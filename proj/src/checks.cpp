#include "modinv/checks.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "modinv/error.hpp"

namespace modinv {

std::string to_string(Status s) {
  switch (s) {
    case Status::Yes:
      return "yes";
    case Status::No:
      return "no";
    default:
      return "unknown";
  }
}

std::string Certificate::value(const std::string& key) const {
  for (const auto& [k, v] : data)
    if (k == key) return v;
  return {};
}

ReportItem& Report::add(std::string name, bool ok, std::string detail) {
  items.push_back({std::move(name), true, ok, std::move(detail)});
  return items.back();
}

void Report::skip(std::string name, std::string why) { items.push_back({std::move(name), false, true, std::move(why)}); }

const ReportItem* Report::find(const std::string& name) const {
  for (const auto& it : items)
    if (it.name == name) return &it;
  return nullptr;
}

bool Report::counterexample() const {
  return std::any_of(items.begin(), items.end(), [](const ReportItem& i) { return i.applicable && !i.ok; });
}

namespace {

Cost cost_of(InvariantRing& r) {
  Cost c;
  c.kernel_rows = r.kernel_rows();
  return c;
}

bool is_power_of(std::uint64_t v, std::uint64_t p) {
  if (v == 0) return false;
  while (v % p == 0) v /= p;
  return v == 1;
}

std::vector<Elem> linear_coeffs(const Polynomial& f, std::size_t n) {
  std::vector<Elem> c(n, 0);
  for (std::size_t i = 0; i < n; ++i) c[i] = f.coefficient(Monomial::var(i));
  return c;
}

std::vector<Elem> column(const Matrix& m, std::size_t j) {
  std::vector<Elem> c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m.at(i, j);
  return c;
}

std::vector<Elem> mat_vec(const Matrix& m, const std::vector<Elem>& v) {
  const Field& k = *m.field();
  std::vector<Elem> out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (v[j] != 0) out[i] = k.add(out[i], k.mul(m.at(i, j), v[j]));
  return out;
}

bool all_zero(const std::vector<Elem>& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
  const std::size_t c = m.size();
  if (c == 0) return Polynomial::constant(ring, 1);
  if (c == 1) return m[0][0];
  Polynomial det(ring, {});
  for (std::size_t j = 0; j < c; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> sub;
    for (std::size_t i = 1; i < c; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t jj = 0; jj < c; ++jj)
        if (jj != j) row.push_back(m[i][jj]);
      sub.push_back(std::move(row));
    }
    const Polynomial term = m[0][j] * determinant(sub, ring);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

void combinations(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

Matrix single_row(const FieldPtr& field, std::size_t n, std::size_t hot) {
  Matrix w(field, 1, n);
  w.at(0, hot) = 1;
  return w;
}

std::string join_degrees(const std::vector<std::uint32_t>& d) {
  std::ostringstream os;
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  return os.str();
}

}  // namespace

Verdict is_polynomial_ring(InvariantRing& r) {
  Verdict v;
  const GeneratorSet& gs = r.generators();
  v.cost = cost_of(r);
  if (!gs.certified) {
    v.certificate = {"uncertified", {{"searched_to", std::to_string(gs.searched_to)}}};
    return v;
  }
  const IdealBasis& h = r.hilbert_ideal();
  const auto col = colength(h.gb(), r.ring()->nvars());
  v.cost.gb_pairs = h.stats().pairs_reduced;
  if (!col) throw InternalError("Hilbert ideal of a finite group has infinite colength");
  v.status = (*col == r.group().order()) ? Status::Yes : Status::No;
  v.certificate = {"hilbert-ideal-colength",
                   {{"colength", std::to_string(*col)},
                    {"order", std::to_string(r.group().order())},
                    {"degrees", join_degrees(gs.degrees())}}};
  return v;
}

bool is_complete_intersection(const IdealBasis& j) {
  const std::size_t n = j.ring()->nvars();
  if (j.is_zero()) return true;
  return minimal_generator_count(j.gb()) == height(j.gb(), n);
}

Verdict direct_summand_status(InvariantRing& r) {
  Verdict poly = is_polynomial_ring(r);
  Verdict v;
  v.cost = poly.cost;
  if (poly.status == Status::Yes) {
    v.status = Status::Yes;
    v.certificate = {"polynomial-ring", poly.certificate.data};
    return v;
  }
  const MatrixGroup& g = r.group();
  if (!is_transvection_generated(g)) {
    v.status = Status::No;
    v.certificate = {"not-generated-by-transvections",
                     {{"order", std::to_string(g.order())},
                      {"transvection_subgroup_order", std::to_string(transvection_subgroup(g).order())}}};
    return v;
  }
  const GeneratorSet& gs = r.generators();
  if (!gs.certified) {
    v.certificate = {"uncertified", {{"searched_to", std::to_string(gs.searched_to)}}};
    return v;
  }
  const auto keep = minimal_generating_subset(gs.gens, r.options().gb);
  if (keep.size() < gs.gens.size()) {
    std::vector<Polynomial> h;
    std::vector<bool> in(gs.gens.size(), false);
    for (auto i : keep) {
      h.push_back(gs.gens[i]);
      in[i] = true;
    }
    std::size_t miss = 0;
    while (in[miss]) ++miss;
    // a minimal algebra generator cannot lie in the subalgebra of the others
    if (subalgebra_contains(h, gs.gens[miss], r.options().gb))
      throw InternalError("algebra generators are not minimal");
    v.status = Status::No;
    v.certificate = {"ideal-generators-miss-algebra",
                     {{"ideal_generators", std::to_string(keep.size())},
                      {"algebra_generators", std::to_string(gs.gens.size())},
                      {"missing", gs.gens[miss].to_string()}}};
    return v;
  }
  v.certificate = {"no-rule-applies", {{"algebra_generators", std::to_string(gs.gens.size())}}};
  return v;
}

IdealBasis singular_ideal(const PresentedAlgebra& pres, const SingularLocusOptions& opts) {
  const RingPtr& ring = pres.ring;
  const std::size_t m = ring->nvars();
  const auto& rel = pres.relations;
  const auto sizes = maximal_independent_set_sizes(rel, m);
  if (!sizes.empty() && std::any_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s != sizes[0]; }))
    throw NotApplicable("presentation is not equidimensional");
  const std::size_t c = rel.empty() ? 0 : height(rel, m);

  std::vector<Polynomial> gens = rel;
  if (c == 0) {
    gens.push_back(Polynomial::constant(ring, 1));
    return IdealBasis(ring, std::move(gens), opts.gb);
  }
  std::vector<std::vector<Polynomial>> jac(rel.size());
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < m; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      jac[i].push_back(delta(j, 1, rel[i]));
      any = any || !jac[i].back().is_zero();
    }
    if (any) live.push_back(j);
  }
  if (live.size() >= c) {
    if (choose(rel.size(), c) * choose(live.size(), c) > opts.max_minors)
      throw ResourceError("singular locus", "too many Jacobian minors");
    combinations(rel.size(), c, [&](const std::vector<std::size_t>& rows) {
      combinations(live.size(), c, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::vector<Polynomial>> sub;
        for (auto i : rows) {
          std::vector<Polynomial> row;
          for (auto j : cols) row.push_back(jac[i][live[j]]);
          sub.push_back(std::move(row));
        }
        Polynomial d = determinant(sub, ring);
        if (!d.is_zero()) gens.push_back(std::move(d));
      });
    });
  }
  return IdealBasis(ring, std::move(gens), opts.gb);
}

int singular_locus_dimension(const PresentedAlgebra& pres, const SingularLocusOptions& opts) {
  const IdealBasis sing = singular_ideal(pres, opts);
  return krull_dimension(sing.gb(), pres.ring->nvars());
}

bool regular_at_fixed_prime(InvariantRing& r, const Matrix& w, const SingularLocusOptions& opts) {
  const PresentedAlgebra pres = presentation(r.generators(), opts.gb);
  const auto q = buchberger(perp_ideal(r.group(), w, r.ring()), opts.gb);
  std::vector<Polynomial> imgs;
  for (const auto& f : pres.images) imgs.push_back(normal_form(f, q));
  const auto prime = relation_ideal(imgs, pres.ring, opts.gb);
  const IdealBasis sing = singular_ideal(pres, opts);
  for (const auto& f : sing.gens())
    if (!normal_form(f, prime).is_zero()) return true;
  return false;
}

Report verify_singloc_equivalence(InvariantRing& r, const SingularLocusOptions& opts) {
  Report rep;
  rep.theorem = "singular-locus";
  const Verdict poly = is_polynomial_ring(r);
  if (poly.status == Status::Unknown) {
    rep.applicable = false;
    rep.note = "generators not certified";
    return rep;
  }
  const MatrixGroup& g = r.group();
  const std::size_t rank_vg = fixed_rank(g);
  const PresentedAlgebra pres = presentation(r.generators(), opts.gb);
  const int dim = singular_locus_dimension(pres, opts);
  const bool regular = regular_at_fixed_prime(r, fixed_spaces(g).vectors, opts);
  const bool c1 = poly.status == Status::Yes;
  const bool c2 = dim < static_cast<int>(rank_vg);
  std::ostringstream os;
  os << "polynomial=" << to_string(poly.status) << " singular_dim=" << dim << " rank_VG=" << rank_vg
     << " regular=" << (regular ? "yes" : "no");
  rep.add("three-conditions-agree", c1 == c2 && c2 == regular, os.str());
  rep.add("singular-locus-bound", c1 || dim >= static_cast<int>(rank_vg));
  return rep;
}

bool extended_from_perp(const IdealBasis& j, const MatrixGroup& g, const Matrix& w) {
  const RingPtr& ring = j.ring();
  const std::size_t n = ring->nvars();
  const FieldPtr& field = ring->field();
  const auto perp = perp_ideal(g, w, ring);
  // columns: W^perp first, then coordinate vectors completing a basis
  EchelonSpace space(field, n);
  std::vector<std::vector<Elem>> cols;
  for (const auto& f : perp) {
    auto c = linear_coeffs(f, n);
    if (space.insert(c)) cols.push_back(std::move(c));
  }
  const std::size_t s = cols.size();
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    std::vector<Elem> e(n, 0);
    e[i] = 1;
    if (space.insert(e)) cols.push_back(std::move(e));
  }
  Matrix b(field, n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) b.at(i, c) = cols[c][i];
  const Matrix to_new = inverse(b);
  for (const auto& f : j.gb()) {
    const Polynomial h = apply_linear_substitution(f, to_new);
    for (std::size_t i = s; i < n; ++i)
      if (h.involves(i)) return false;
  }
  return true;
}

Report verify_large_fixed_rank(InvariantRing& r) {
  Report rep;
  rep.theorem = "large-fixed-rank";
  const MatrixGroup& g = r.group();
  const std::size_t n = g.dim();
  const std::size_t rank_vg = fixed_rank(g);
  if (!r.generators().certified) {
    rep.applicable = false;
    rep.note = "generators not certified";
    return rep;
  }
  const Matrix w = fixed_spaces(g).vectors;
  const IdealBasis rel = r.relative_hilbert_ideal(w);
  const IdealBasis& hil = r.hilbert_ideal();
  const std::size_t mu_rel = minimal_generator_count(rel.gb(), r.options().gb);
  const std::size_t mu_hil = minimal_generator_count(hil.gb(), r.options().gb);
  const std::size_t ht_rel = height(rel.gb(), n), ht_hil = height(hil.gb(), n);
  if (rank_vg + 2 >= n) {
    rep.add("relative-ideal-complete-intersection", mu_rel == ht_rel,
            "mu=" + std::to_string(mu_rel) + " height=" + std::to_string(ht_rel));
    rep.add("hilbert-ideal-complete-intersection", mu_hil == ht_hil,
            "mu=" + std::to_string(mu_hil) + " height=" + std::to_string(ht_hil));
  } else {
    rep.skip("relative-ideal-complete-intersection", "rank V^G < n - 2");
    rep.skip("hilbert-ideal-complete-intersection", "rank V^G < n - 2");
  }
  rep.add("mu-additivity", mu_hil == mu_rel + rank_vg,
          std::to_string(mu_hil) + " vs " + std::to_string(mu_rel) + "+" + std::to_string(rank_vg));
  try {
    const auto bd = fixed_complement_decomposition(r, w);
    rep.add("fixed-complement-decomposition", bd.complement.size() == rank_vg,
            "complement=" + std::to_string(bd.complement.size()));
  } catch (const InternalError& e) {
    rep.add("fixed-complement-decomposition", false, e.what());
  } catch (const NotApplicable& e) {
    rep.add("fixed-complement-decomposition", false, e.what());
  }
  rep.add("extended-from-perp", extended_from_perp(rel, g, w));
  return rep;
}

std::vector<Polynomial> order_p2_closed_form(const MatrixGroup& g, const RingPtr& ring) {
  const std::size_t n = g.dim();
  const FieldPtr& field = g.field();
  const Field& k = *field;
  const Matrix id = Matrix::identity(field, n);
  const auto ts = transvections(g);

  struct Pair {
    Matrix ds, dt;
    bool hyperplanes_differ;
  };
  std::optional<Pair> best;
  for (std::size_t a = 0; a < ts.size() && !(best && best->hyperplanes_differ); ++a) {
    const MatrixGroup cyc = MatrixGroup::generate(field, n, {ts[a]}, g.order(), false);
    for (std::size_t b = a + 1; b < ts.size(); ++b) {
      if (cyc.contains(ts[b])) continue;
      Matrix ds = ts[a] - id, dt = ts[b] - id;
      Matrix ls(field, 2, n);
      for (std::size_t i = 0; i < n; ++i) {
        ls.at(0, i) = reflecting_hyperplane(ts[a])[i];
        ls.at(1, i) = reflecting_hyperplane(ts[b])[i];
      }
      if (rank(ls) < 2) continue;
      Matrix both(field, 2 * n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          both.at(i, j) = ds.at(i, j);
          both.at(n + i, j) = dt.at(i, j);
        }
      const bool differ = kernel(both).cols() + 2 == n;
      if (!best || (differ && !best->hyperplanes_differ)) best = Pair{ds, dt, differ};
      if (differ) break;
    }
  }
  if (!best) return {};
  const Matrix& ds = best->ds;
  const Matrix& dt = best->dt;
  // x1, x2 span the images of sigma - 1 and tau - 1
  std::vector<Elem> x1, x2;
  for (std::size_t j = 0; j < n && x1.empty(); ++j)
    if (!all_zero(column(ds, j))) x1 = column(ds, j);
  for (std::size_t j = 0; j < n && x2.empty(); ++j)
    if (!all_zero(column(dt, j))) x2 = column(dt, j);

  // a form u in `pool` outside ker(d), scaled so that d u equals `target`
  auto lift = [&](const Matrix& pool, const Matrix& d, const std::vector<Elem>& target) {
    for (std::size_t c = 0; c < pool.cols(); ++c) {
      auto u = column(pool, c);
      const auto du = mat_vec(d, u);
      if (all_zero(du)) continue;
      std::size_t piv = 0;
      while (target[piv] == 0) ++piv;
      scale(k, u, k.div(target[piv], du[piv]));
      return u;
    }
    throw InternalError("no lift for the closed form");
  };
  Matrix full(field, 2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      full.at(i, j) = ds.at(i, j);
      full.at(n + i, j) = dt.at(i, j);
    }
  const Matrix common = kernel(full);
  std::vector<std::vector<Elem>> norms;
  Matrix rest_pool;
  if (best->hyperplanes_differ) {
    norms.push_back(lift(kernel(dt), ds, x1));
    norms.push_back(lift(kernel(ds), dt, x2));
    rest_pool = common;
  } else {
    norms.push_back(lift(Matrix::identity(field, n), ds, x1));
    rest_pool = kernel(ds);
  }
  EchelonSpace span(field, n);
  span.insert(x1);
  span.insert(x2);
  std::vector<Polynomial> out{Polynomial::linear(ring, x1), Polynomial::linear(ring, x2)};
  for (std::size_t c = 0; c < rest_pool.cols(); ++c) {
    auto v = column(rest_pool, c);
    if (span.insert(v)) out.push_back(Polynomial::linear(ring, v));
  }
  for (const auto& u : norms) out.push_back(orbit_product(g, Polynomial::linear(ring, u)));
  if (out.size() != n) throw InternalError("closed form has the wrong number of generators");
  return out;
}

Report verify_order_p2(const MatrixGroup& g, const InvariantOptions& opts) {
  Report rep;
  rep.theorem = "order-p2";
  const std::size_t p = g.field()->characteristic();
  if (g.order() != p * p || !is_transvection_generated(g)) {
    rep.applicable = false;
    rep.note = "not a transvection group of order p^2";
    return rep;
  }
  InvariantRing r(g, opts);
  const Verdict v = is_polynomial_ring(r);
  rep.add("polynomial", v.status == Status::Yes, v.certificate.criterion + " " + v.certificate.value("colength"));
  const auto cf = order_p2_closed_form(g, r.ring());
  if (cf.empty()) {
    rep.skip("closed-form", "single reflecting hyperplane");
  } else {
    const bool same = normalize_generators(cf).gens == r.generators().gens;
    rep.add("closed-form", same);
  }
  return rep;
}

Report verify_rank4_step(const MatrixGroup& g, const InvariantOptions& opts) {
  Report rep;
  rep.theorem = "rank4-step";
  const FieldPtr& field = g.field();
  const std::size_t n = g.dim();
  if (!field->is_prime_field() || n != 4 || !is_transvection_generated(g)) {
    rep.applicable = false;
    rep.note = "needs a transvection group of rank 4 over a prime field";
    return rep;
  }
  const std::uint32_t p = field->characteristic();
  const MatrixGroup gt = change_basis(g, triangularize(g));
  const CompositionSeries cs = composition_series(gt);
  if (cs.witnesses.empty()) {
    rep.note = "trivial group";
    return rep;
  }
  const std::size_t top = cs.witnesses.size();
  const Matrix sigma0 = cs.witnesses[top - 1];
  const Matrix b = sigma_normalize(cs.chain[top - 1], sigma0);
  const MatrixGroup gs = change_basis(gt, b);
  const MatrixGroup gp = change_basis(cs.chain[top - 1], b);
  const Matrix sigma = inverse(b) * sigma0 * b;
  const RingPtr ring = Ring::make(field, n);
  InvariantRing rr(gs, opts, ring), ar(gp, opts, ring);

  const std::size_t beta_gp = beta_group(gp), beta_s = beta(sigma);
  rep.add("penultimate-beta-at-most-2", beta_gp <= 2, "beta=" + std::to_string(beta_gp));
  const Verdict rv = is_polynomial_ring(rr);
  const Verdict ds = direct_summand_status(rr);
  rep.add("summand-implies-polynomial", ds.status != Status::Yes || rv.status == Status::Yes,
          "summand=" + to_string(ds.status) + " polynomial=" + to_string(rv.status));
  if (rv.status != Status::Yes) {
    rep.note = "step checks need S^G to be a direct summand";
    return rep;
  }
  const StepAnalysis st = step_analysis(ar, rr);
  if (!st.a_gens.certified) {
    rep.note = "generators of S^G' not certified";
    return rep;
  }
  const auto& a = st.a_gens.gens;
  rep.add("least-degree-quotient-rank-one", st.d0.has_value() && st.quotient_rank == 1,
          "rank=" + std::to_string(st.quotient_rank));
  rep.add("least-degree-element-generates", st.generated_by_r_and_witness);
  rep.add("unique-generator-outside-invariants", st.i0().has_value(),
          "count=" + std::to_string(st.outside_r.size()) +
              (st.i0() ? " index=" + std::to_string(*st.i0() + 1) : std::string()) +
              " beta_sigma=" + std::to_string(beta_s) + " beta_G'=" + std::to_string(beta_gp));
  const auto i1 = st.i1();
  rep.add("unique-last-variable-power", i1.has_value() && is_power_of(a[*i1].total_degree(), p),
          "count=" + std::to_string(st.xn_powers.size()));
  bool increasing = true;
  for (std::size_t i = 1; i < a.size(); ++i)
    increasing = increasing && ring->less(a[i - 1].leading_monomial(), a[i].leading_monomial());
  rep.add("leading-monomials-increasing", increasing);

  if (beta_s > 1 && a.size() > 1)
    rep.add("second-generator-avoids-last-variable", !a[1].involves(n - 1) && rr.in_slice(a[1]));
  else
    rep.skip("second-generator-avoids-last-variable", "beta_sigma = 1");

  const Matrix w = single_row(field, n, n - 1);
  const auto i0 = st.i0();
  if (i0 && i1 && *i0 == *i1) {
    rep.add("polynomial-passes-down", is_polynomial_ring(ar).status == Status::Yes);
    std::vector<Polynomial> rest;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != *i0) rest.push_back(a[i]);
    const IdealBasis ha = ar.relative_hilbert_ideal(w), hr = rr.relative_hilbert_ideal(w);
    rep.add("relative-ideals-omit-outside-generator", ha == hr && hr == IdealBasis(ring, rest, opts.gb));
  } else {
    rep.skip("polynomial-passes-down", "outside generator is not the last-variable power");
    rep.skip("relative-ideals-omit-outside-generator", "outside generator is not the last-variable power");
  }

  if (beta_s > 1 && a.size() > 2 && rr.in_slice(a[2])) {
    const IdealBasis ha = ar.relative_hilbert_ideal(w);
    if (is_complete_intersection(ha)) {
      const IdealBasis hr = rr.relative_hilbert_ideal(w);
      rep.add("relative-ideals-first-three", ha == hr && hr == IdealBasis(ring, {a[0], a[1], a[2]}, opts.gb));
    } else {
      rep.skip("relative-ideals-first-three", "relative ideal of G' not a complete intersection");
    }
  } else {
    rep.skip("relative-ideals-first-three", "third generator outside S^G or beta_sigma = 1");
  }

  if (beta_gp <= 2 && i0 && *i0 == 2 && beta_s == 3) {
    const Polynomial& a3 = a[2];
    const std::uint32_t d = a3.total_degree();
    LinearAction act(ring, sigma);
    const Polynomial diff = act.apply(a3) - a3;
    Monomial x3d = Monomial::var(2), x4d = Monomial::var(3);
    x3d.e[2] = static_cast<Exp>(d);
    x3d.deg = d;
    x4d.e[3] = static_cast<Exp>(d);
    x4d.deg = d;
    rep.add("outside-difference-leading-x3-power", !diff.is_zero() && diff.leading_monomial() == x3d);
    bool mixed = false;
    for (const auto& t : a3.terms()) mixed = mixed || (t.m.e[2] > 0 && t.m.e[3] > 0);
    rep.add("outside-generator-no-x3x4-terms", !mixed);
    rep.add("outside-generator-leading-x4-power", a3.leading_monomial() == x4d);
  } else {
    rep.skip("outside-generator-shape", "needs beta_G' <= 2, third generator outside S^G, beta_sigma = 3");
  }
  return rep;
}

Report verify_order_p3(const MatrixGroup& g, const InvariantOptions& opts) {
  Report rep;
  rep.theorem = "order-p3";
  const std::size_t p = g.field()->characteristic();
  if (g.order() != p * p * p) {
    rep.applicable = false;
    rep.note = "order is not p^3";
    return rep;
  }
  InvariantRing r(g, opts);
  const Verdict poly = is_polynomial_ring(r);
  const Verdict ds = direct_summand_status(r);
  rep.add("summand-implies-polynomial", ds.status != Status::Yes || poly.status == Status::Yes,
          "summand=" + to_string(ds.status) + " polynomial=" + to_string(poly.status));
  if (!is_transvection_generated(g)) {
    rep.note = "not generated by transvections";
    return rep;
  }
  const CompositionSeries cs = composition_series(change_basis(g, triangularize(g)));
  bool all_summand = true, all_poly = true;
  for (std::size_t l = 1; l < cs.chain.size(); ++l) {
    InvariantRing rl(cs.chain[l], opts);
    const Verdict pl = is_polynomial_ring(rl);
    all_summand = all_summand && direct_summand_status(rl).status == Status::Yes;
    all_poly = all_poly && pl.status == Status::Yes;
    if (l < 3) rep.add("chain-" + std::to_string(l) + "-polynomial", pl.status == Status::Yes);
  }
  const Report sq = verify_order_p2(cs.chain[2], opts);
  for (const auto& it : sq.items) {
    if (it.name == "polynomial") continue;
    ReportItem copy = it;
    copy.name = "chain-2-" + it.name;
    rep.items.push_back(std::move(copy));
  }
  rep.add("all-split-shape", !all_summand || all_poly);
  return rep;
}

}  // namespace modinv
