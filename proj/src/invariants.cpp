#include "modinv/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "modinv/error.hpp"
#include "slices.hpp"

namespace modinv {

namespace {

std::uint64_t degree_product(const std::vector<Polynomial>& gens) {
  std::uint64_t p = 1;
  for (const auto& g : gens) p *= g.total_degree();
  return p;
}

std::string join_degrees(const std::vector<std::uint32_t>& d) {
  std::ostringstream os;
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  return os.str();
}

// Orbit sizes of the linear forms of a triangular basis; their norms form a
// homogeneous system of parameters.
std::vector<std::uint32_t> norm_degrees(const MatrixGroup& g) {
  const std::size_t n = g.dim();
  const Matrix b = triangularize(g);
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::vector<Elem>> orbit;
    for (const auto& m : g.elements()) {
      // g(sum c_j x_j) has coefficient vector M c
      std::vector<Elem> v(n, 0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j)
          v[r] = g.field()->add(v[r], g.field()->mul(m.at(r, j), b.at(j, i)));
      orbit.insert(std::move(v));
    }
    out.push_back(static_cast<std::uint32_t>(orbit.size()));
  }
  return out;
}

// Degree past which algebra generators are complete: S^G is generated as a
// module over an hsop of degrees e_i in degrees <= sum (e_i - 1).
std::uint32_t module_bound(const std::vector<std::uint32_t>& e) {
  std::uint32_t top = 1, sum = 0;
  for (auto x : e) {
    top = std::max(top, x);
    sum += x - 1;
  }
  return std::max(top, sum);
}

bool is_hsop(const std::vector<Polynomial>& gens, std::size_t n, const GroebnerOptions& opts) {
  if (gens.size() != n) return false;
  return colength(buchberger(gens, opts), n).has_value();
}

struct SearchLimits {
  std::uint64_t order = 1;
  std::uint32_t bound = 1;
  std::uint32_t cert = 1;
  bool stop_when_decided = false;
};

// Runs the builder degree by degree until the generators are certified
// complete, polynomiality is decided (if requested), or the bound.
GeneratorSet search(detail::GeneratorBuilder& b, std::size_t n, const SearchLimits& lim, const GroebnerOptions& gb) {
  GeneratorSet out;
  bool degree_product_tried = false;
  for (std::uint32_t d = b.done() + 1; d <= lim.bound; ++d) {
    b.step(d);
    out.searched_to = d;
    const auto& gens = b.gens();
    if (gens.size() > n && !out.polynomial) {
      out.polynomial = false;
      if (lim.stop_when_decided) break;
    }
    if (gens.size() == n && !degree_product_tried && degree_product(gens) == lim.order) {
      degree_product_tried = true;
      if (is_hsop(gens, n, gb)) {
        out.polynomial = true;
        out.certified = true;
        out.certificate = "degree product " + std::to_string(lim.order) + " = |G| with a system of parameters";
        break;
      }
    }
    if (d >= lim.cert) {
      out.certified = true;
      out.certificate = "complete through the module bound " + std::to_string(lim.cert);
      if (!out.polynomial) out.polynomial = gens.size() == n;
      break;
    }
  }
  out.gens = b.gens();
  return out;
}

// Invariants of <t> for a transvection t: x_j - (lambda_j/lambda_i) x_i for
// j != i and the orbit product of x_i, with i the last moved variable.
std::vector<Polynomial> cyclic_transvection_base(const RingPtr& ring, const Matrix& t) {
  const std::size_t n = ring->nvars();
  const Field& k = *ring->field();
  Matrix d = t - Matrix::identity(ring->field(), n);
  std::size_t istar = n;
  for (std::size_t i = n; i-- > 0;) {
    bool moved = false;
    for (std::size_t r = 0; r < n; ++r) moved = moved || d.at(r, i) != 0;
    if (moved) {
      istar = i;
      break;
    }
  }
  if (istar == n) throw InternalError("identity passed as a transvection");
  std::size_t lead = 0;
  while (d.at(lead, istar) == 0) ++lead;
  std::vector<Polynomial> base;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == istar) {
      auto cyc = MatrixGroup::generate(ring->field(), n, {t});
      base.push_back(orbit_product(cyc, Polynomial::variable(ring, j)));
      continue;
    }
    std::vector<Elem> c(n, 0);
    c[j] = 1;
    c[istar] = k.neg(k.div(d.at(lead, j), d.at(lead, istar)));
    base.push_back(Polynomial::linear(ring, c));
  }
  return base;
}

}  // namespace

std::vector<std::uint32_t> GeneratorSet::degrees() const {
  std::vector<std::uint32_t> d;
  for (const auto& g : gens) d.push_back(g.total_degree());
  return d;
}

GeneratorSet normalize_generators(const std::vector<Polynomial>& polys, std::uint32_t max_degree) {
  std::vector<Polynomial> base;
  for (const auto& f : polys)
    if (!f.is_zero()) base.push_back(f);
  GeneratorSet out;
  out.certified = true;
  out.certificate = "normalized from the given generators";
  if (base.empty()) return out;
  const RingPtr& ring = base.front().ring();
  std::uint32_t top = 0;
  for (const auto& f : base) top = std::max(top, f.total_degree());
  if (max_degree == 0) max_degree = top;
  auto idx = std::make_shared<detail::MonomialIndex>(ring, std::size_t(1) << 22);
  SliceEngine eng(idx, base, {});
  detail::GeneratorBuilder b(idx, [&](std::uint32_t d) -> const detail::Slice& { return eng.slice(d); });
  for (std::uint32_t d = 1; d <= max_degree; ++d) b.step(d);
  out.gens = b.gens();
  out.searched_to = max_degree;
  return out;
}

std::vector<Polynomial> invariant_space(const MatrixGroup& g, std::uint32_t d, const RingPtr& ring_in) {
  RingPtr ring = ring_in ? ring_in : Ring::make(g.field(), g.dim());
  const Field& k = *g.field();
  const auto monos = ring->monomials_of_degree(d);
  const std::size_t dn = monos.size();
  std::unordered_map<Monomial, std::size_t, MonomialHash> col;
  for (std::size_t i = 0; i < dn; ++i) col.emplace(monos[i], i);
  // unknown coefficient vector c over S_d; constraint sum_m c_m (g(m) - m) = 0
  Matrix a(g.field(), g.generators().size() * dn, dn);
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    LinearAction act(ring, g.generators()[gi]);
    for (std::size_t m = 0; m < dn; ++m) {
      const Polynomial img = act.image_of(monos[m]);
      for (const auto& t : img.terms()) {
        Elem& e = a.at(gi * dn + col.at(t.m), m);
        e = k.add(e, t.c);
      }
      Elem& e = a.at(gi * dn + m, m);
      e = k.sub(e, 1);
    }
  }
  Matrix ker = g.generators().empty() ? Matrix::identity(g.field(), dn) : kernel(a);
  Matrix basis = ker.transpose();
  rref(basis);
  std::vector<Polynomial> out;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    std::vector<Term> terms;
    for (std::size_t c = 0; c < dn; ++c)
      if (basis.at(r, c) != 0) terms.push_back({monos[c], basis.at(r, c)});
    if (!terms.empty()) out.emplace_back(ring, std::move(terms));
  }
  return out;
}

InvariantRing::InvariantRing(MatrixGroup g, InvariantOptions opts, RingPtr ring)
    : group_(std::move(g)), opts_(opts), ring_(std::move(ring)) {
  if (!ring_) ring_ = Ring::make(group_.field(), group_.dim());
  if (ring_->nvars() != group_.dim() || !ring_->field()->same_as(*group_.field()))
    throw UsageError("ring does not match the group");
  const std::uint64_t order = group_.order();
  bound_ = opts_.degree_bound ? opts_.degree_bound
                              : static_cast<std::uint32_t>(std::max<std::uint64_t>(1, group_.dim() * (order - 1)));
  cert_degree_ = module_bound(norm_degrees(group_));
}

InvariantRing::~InvariantRing() = default;
InvariantRing::InvariantRing(InvariantRing&&) noexcept = default;
InvariantRing& InvariantRing::operator=(InvariantRing&&) noexcept = default;

void InvariantRing::build_engine() {
  if (engine_) return;
  const std::size_t n = group_.dim();
  auto idx = std::make_shared<detail::MonomialIndex>(ring_, opts_.slice_cap);
  std::vector<Polynomial> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(Polynomial::variable(ring_, i));
  if (group_.is_trivial()) {
    engine_ = std::make_unique<SliceEngine>(idx, vars, std::vector<Matrix>{});
    return;
  }
  const MatrixGroup t = transvection_subgroup(group_);
  if (t.is_trivial()) {
    engine_ = std::make_unique<SliceEngine>(idx, vars, group_.generators());
    return;
  }
  // Walk the composition series of the transvection subgroup, keeping the
  // invariants of the largest level found to be a polynomial ring as base.
  const CompositionSeries cs = composition_series(t);
  const std::size_t top = cs.chain.size() - 1;
  std::vector<Polynomial> base = cyclic_transvection_base(ring_, cs.witnesses[0]);
  std::size_t base_level = 1;
  const bool whole = t.same_elements(group_);
  for (std::size_t l = 2; l <= top; ++l) {
    if (l == top && whole) break;
    std::vector<Matrix> cons(cs.witnesses.begin() + static_cast<std::ptrdiff_t>(base_level),
                             cs.witnesses.begin() + static_cast<std::ptrdiff_t>(l));
    SliceEngine eng(idx, base, cons);
    detail::GeneratorBuilder b(idx, [&](std::uint32_t d) -> const detail::Slice& { return eng.slice(d); });
    SearchLimits lim;
    lim.order = cs.chain[l].order();
    lim.cert = module_bound(norm_degrees(cs.chain[l]));
    lim.bound = lim.cert;
    lim.stop_when_decided = true;
    GeneratorSet level = search(b, n, lim, opts_.gb);
    if (level.polynomial.value_or(false) && level.certified) {
      base = level.gens;
      base_level = l;
    }
  }
  std::vector<Matrix> cons;
  if (whole)
    cons.assign(cs.witnesses.begin() + static_cast<std::ptrdiff_t>(base_level), cs.witnesses.end());
  else
    cons = group_.generators();
  engine_ = std::make_unique<SliceEngine>(idx, base, cons);
}

const std::vector<Polynomial>& InvariantRing::slice(std::uint32_t d) {
  build_engine();
  return engine_->slice(d).basis;
}

bool InvariantRing::is_invariant(const Polynomial& f) const {
  for (const auto& m : group_.generators())
    if (!(apply_linear_substitution(f, m) == f)) return false;
  return true;
}

bool InvariantRing::in_slice(const Polynomial& f) {
  if (f.is_zero()) return true;
  if (!f.is_homogeneous()) return false;
  const std::uint32_t d = f.total_degree();
  build_engine();
  const detail::Slice& s = engine_->slice(d);
  std::vector<Elem> v = engine_->index()->dense(f.in_ring(ring_), d);
  detail::clear_pivots(*ring_->field(), s, v);
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

const GeneratorSet& InvariantRing::generators() {
  if (gens_) return *gens_;
  build_engine();
  detail::GeneratorBuilder b(engine_->index(),
                             [this](std::uint32_t d) -> const detail::Slice& { return engine_->slice(d); });
  SearchLimits lim;
  lim.order = group_.order();
  lim.bound = bound_;
  lim.cert = cert_degree_;
  GeneratorSet out = search(b, group_.dim(), lim, opts_.gb);
  if (out.certified && out.certificate.rfind("complete", 0) == 0)
    out.certificate += " (norm degrees " + join_degrees(norm_degrees(group_)) + ")";
  gens_ = std::move(out);
  return *gens_;
}

const IdealBasis& InvariantRing::hilbert_ideal() {
  if (!hilbert_) hilbert_ = IdealBasis(ring_, generators().gens, opts_.gb);
  return *hilbert_;
}

std::uint64_t InvariantRing::kernel_rows() const noexcept { return engine_ ? engine_->rows() : 0; }

PresentedAlgebra presentation_of(const std::vector<Polynomial>& gens, const GroebnerOptions& opts) {
  if (gens.empty()) throw UsageError("presentation of an empty generator list");
  PresentedAlgebra out;
  out.images = gens;
  std::vector<std::uint32_t> w;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    w.push_back(std::max<std::uint32_t>(1, gens[i].total_degree()));
    names.push_back("y" + std::to_string(i + 1));
  }
  out.ring = Ring::make(gens.front().ring()->field(), gens.size(), MonomialOrder::deglex(w), names);
  out.relations = relation_ideal(gens, out.ring, opts);
  return out;
}

PresentedAlgebra presentation(const GeneratorSet& gens, const GroebnerOptions& opts) {
  if (!gens.certified) throw UsageError("presentation needs a certified generator set");
  return presentation_of(gens.gens, opts);
}

bool subalgebra_contains(const std::vector<Polynomial>& gens, const Polynomial& f, const GroebnerOptions& opts) {
  if (f.is_constant()) return true;
  if (gens.empty()) return false;
  const RingPtr& ring = f.ring();
  const std::size_t n = ring->nvars(), m = gens.size();
  if (n + m > kMaxVars) throw ResourceError("subalgebra", "too many variables for tag elimination");
  std::vector<std::uint32_t> w(n, 1);
  std::vector<std::string> names = ring->names();
  for (std::size_t i = 0; i < m; ++i) {
    w.push_back(std::max<std::uint32_t>(1, gens[i].total_degree()));
    names.push_back("y" + std::to_string(i + 1));
  }
  auto big = Ring::make(ring->field(), n + m, MonomialOrder::block_elim(n, w), names);
  auto lift = [&](const Polynomial& p) {
    std::vector<Term> terms(p.terms().begin(), p.terms().end());
    return Polynomial(big, std::move(terms));
  };
  std::vector<Polynomial> tags;
  for (std::size_t i = 0; i < m; ++i) tags.push_back(Polynomial::variable(big, n + i) - lift(gens[i]));
  const auto gb = buchberger(tags, opts);
  const Polynomial r = normal_form(lift(f), gb);
  for (std::size_t i = 0; i < n; ++i)
    if (r.involves(i)) return false;
  return true;
}

}  // namespace modinv
