#include "modinv/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace modinv {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Elem>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

Matrix minus_identity(const Matrix& m) { return m - Matrix::identity(m.field(), m.rows()); }

// Rows of `m` stacked below each other.
Matrix stack(const std::vector<Matrix>& parts, FieldPtr field, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) rows += p.rows();
  Matrix out(std::move(field), rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts)
    for (std::size_t i = 0; i < p.rows(); ++i, ++r)
      for (std::size_t j = 0; j < cols; ++j) out.at(r, j) = p.at(i, j);
  return out;
}

}  // namespace

MatrixGroup MatrixGroup::generate(FieldPtr field, std::size_t n, std::vector<Matrix> gens, std::size_t cap,
                                  bool require_p_group, std::vector<std::string> labels) {
  for (const auto& g : gens) {
    if (g.rows() != n || g.cols() != n) throw UsageError("generator has the wrong dimension");
    if (!g.field()->same_as(*field)) throw UsageError("generator over a different field");
    (void)inverse(g);
    if (require_p_group && !is_unipotent(g))
      throw ValidationError("generator is not unipotent, so the group is not a p-group in characteristic " +
                            std::to_string(field->characteristic()));
  }
  if (labels.empty())
    for (std::size_t i = 0; i < gens.size(); ++i) labels.push_back("g" + std::to_string(i + 1));
  if (labels.size() != gens.size()) throw UsageError("label count does not match generator count");

  MatrixGroup grp;
  grp.field_ = field;
  grp.n_ = n;
  grp.gens_ = gens;
  grp.labels_ = labels;

  std::unordered_map<std::vector<Elem>, std::size_t, VecHash> seen;
  std::vector<Matrix> found;
  std::vector<std::string> words;
  std::deque<std::size_t> queue;
  const Matrix id = Matrix::identity(field, n);
  seen.emplace(id.data(), 0);
  found.push_back(id);
  words.emplace_back();
  queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      Matrix next = gens[gi] * found[cur];
      if (seen.count(next.data())) continue;
      if (found.size() >= cap)
        throw ResourceError("group closure", "more than " + std::to_string(cap) + " elements");
      seen.emplace(next.data(), found.size());
      words.push_back(words[cur].empty() ? labels[gi] : labels[gi] + "*" + words[cur]);
      found.push_back(std::move(next));
      queue.push_back(found.size() - 1);
    }
  }
  std::vector<std::size_t> idx(found.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return found[a] < found[b]; });
  for (auto i : idx) {
    grp.elements_.push_back(found[i]);
    grp.words_.push_back(words[i]);
  }
  return grp;
}

MatrixGroup MatrixGroup::from_closed_set(FieldPtr field, std::size_t n, std::vector<Matrix> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  // pick generators greedily in sorted order
  std::vector<Matrix> gens;
  MatrixGroup current = generate(field, n, {}, kDefaultGroupCap, false);
  for (const auto& e : elements) {
    if (current.contains(e)) continue;
    gens.push_back(e);
    current = generate(field, n, gens, elements.size() + 1, false);
  }
  if (current.order() != elements.size()) throw InternalError("element set is not closed under products");
  return current;
}

std::optional<std::size_t> MatrixGroup::index_of(const Matrix& m) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), m);
  if (it != elements_.end() && *it == m) return static_cast<std::size_t>(it - elements_.begin());
  return std::nullopt;
}

bool MatrixGroup::is_subgroup_of(const MatrixGroup& o) const {
  return std::all_of(elements_.begin(), elements_.end(), [&o](const Matrix& m) { return o.contains(m); });
}

bool is_unipotent(const Matrix& m) { return matrix_power(minus_identity(m), m.rows()).is_zero(); }

bool is_transvection(const Matrix& m) {
  const Matrix d = minus_identity(m);
  return rank(d) == 1 && (d * d).is_zero();
}

FixedSpaces fixed_spaces(const MatrixGroup& g) {
  const std::size_t n = g.dim();
  std::vector<Matrix> dual_parts, vec_parts;
  for (const auto& gen : g.generators()) {
    const Matrix d = minus_identity(gen);
    dual_parts.push_back(d);
    vec_parts.push_back(d.transpose());
  }
  FixedSpaces fs;
  fs.dual = kernel(stack(dual_parts, g.field(), n)).transpose();
  fs.vectors = kernel(stack(vec_parts, g.field(), n)).transpose();
  return fs;
}

std::size_t fixed_rank(const MatrixGroup& g) { return fixed_spaces(g).vectors.rows(); }

std::vector<Elem> reflecting_hyperplane(const Matrix& g) {
  if (!is_transvection(g)) throw UsageError("reflecting hyperplane requested for a non-transvection");
  const Matrix d = minus_identity(g);
  const Field& k = *g.field();
  for (std::size_t i = 0; i < d.cols(); ++i) {
    std::vector<Elem> col(d.rows());
    bool nonzero = false;
    for (std::size_t j = 0; j < d.rows(); ++j) {
      col[j] = d.at(j, i);
      nonzero = nonzero || col[j] != 0;
    }
    if (!nonzero) continue;
    std::size_t lead = col.size();
    while (lead-- > 0)
      if (col[lead] != 0) break;
    scale(k, col, k.inv(col[lead]));
    return col;
  }
  throw InternalError("transvection with zero image");
}

bool is_triangular(const Matrix& m) {
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = i; j < m.rows(); ++j)
      if (m.at(j, i) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix triangularize(const MatrixGroup& g) {
  const std::size_t n = g.dim();
  const FieldPtr& field = g.field();
  const Field& k = *field;
  std::vector<Matrix> diffs;
  for (const auto& gen : g.generators()) diffs.push_back(minus_identity(gen));

  // layers[0] = V*, layers[j+1] = sum over generators of (g-1) layers[j];
  // span{(h-1)u : h in G} equals the generator sum because
  // gh - 1 = (g-1)(h-1) + (g-1) + (h-1) and the layers are G-stable.
  std::vector<std::vector<std::vector<Elem>>> layers;
  std::vector<std::vector<Elem>> cur;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Elem> e(n, 0);
    e[i] = 1;
    cur.push_back(e);
  }
  layers.push_back(cur);
  for (std::size_t guard = 0; guard <= n; ++guard) {
    // reversed columns so echelon pivots sit at the highest variable index
    EchelonSpace span(field, n);
    for (const auto& v : cur)
      for (const auto& d : diffs) {
        std::vector<Elem> img(n, 0);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i)
            if (d.at(j, i) != 0 && v[i] != 0) img[j] = k.add(img[j], k.mul(d.at(j, i), v[i]));
        std::reverse(img.begin(), img.end());
        span.insert(img);
      }
    if (span.rank() == 0) break;
    cur.clear();
    for (auto v : span.reduced_basis()) {
      std::reverse(v.begin(), v.end());
      cur.push_back(v);
    }
    layers.push_back(cur);
  }
  if (layers.size() > n + 1) throw InternalError("group does not act unipotently");

  // Collect a basis: deepest layer first, each extended to the next larger one.
  EchelonSpace chosen(field, n);
  std::vector<std::vector<Elem>> basis;
  auto try_add = [&](const std::vector<Elem>& v) {
    std::vector<Elem> r(v.rbegin(), v.rend());
    if (chosen.insert(r)) basis.push_back(v);
  };
  for (std::size_t li = layers.size(); li-- > 0;) {
    // sort the layer vectors by leading (highest) variable index ascending
    auto layer = layers[li];
    auto lead = [](const std::vector<Elem>& v) {
      std::size_t l = v.size();
      while (l-- > 0)
        if (v[l] != 0) return l;
      return std::size_t{0};
    };
    std::stable_sort(layer.begin(), layer.end(),
                     [&](const std::vector<Elem>& a, const std::vector<Elem>& b) { return lead(a) < lead(b); });
    for (const auto& v : layer) try_add(v);
  }
  if (basis.size() != n) throw InternalError("triangularization produced a deficient basis");
  Matrix b(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b.at(j, i) = basis[i][j];
  return b;
}

MatrixGroup change_basis(const MatrixGroup& g, const Matrix& basis) {
  const Matrix inv = inverse(basis);
  std::vector<Matrix> gens;
  for (const auto& m : g.generators()) gens.push_back(inv * m * basis);
  return MatrixGroup::generate(g.field(), g.dim(), gens, std::max(g.order(), std::size_t{1}) + 1, false, g.labels());
}

std::size_t beta(const Matrix& g) {
  const std::size_t n = g.rows();
  for (std::size_t j = n; j-- > 0;)
    for (std::size_t i = 0; i < n; ++i)
      if (g.at(j, i) != (i == j ? 1 : 0)) return j + 1;
  return 0;
}

std::vector<Matrix> transvections(const MatrixGroup& g) {
  std::vector<Matrix> out;
  for (const auto& m : g.elements())
    if (is_transvection(m)) out.push_back(m);
  return out;
}

std::size_t beta_group(const MatrixGroup& g) {
  std::size_t b = 0;
  for (const auto& t : transvections(g)) b = std::max(b, beta(t));
  return b;
}

MatrixGroup transvection_subgroup(const MatrixGroup& g) {
  return MatrixGroup::from_closed_set(g.field(), g.dim(),
                                      MatrixGroup::generate(g.field(), g.dim(), transvections(g), g.order() + 1, false)
                                          .elements());
}

bool is_transvection_generated(const MatrixGroup& g) {
  const auto ts = transvections(g);
  return MatrixGroup::generate(g.field(), g.dim(), ts, g.order() + 1, false).order() == g.order();
}

CompositionSeries composition_series(const MatrixGroup& g) {
  const std::size_t n = g.dim();
  const auto ts = transvections(g);  // sorted, since elements are
  const std::size_t cap = g.order() + 1;
  if (MatrixGroup::generate(g.field(), n, ts, cap, false).order() != g.order()) {
    std::string offending;
    MatrixGroup tg = MatrixGroup::generate(g.field(), n, ts, cap, false);
    for (std::size_t i = 0; i < g.generators().size(); ++i)
      if (!tg.contains(g.generators()[i])) offending += (offending.empty() ? "" : ", ") + g.labels()[i];
    throw NotApplicable("group is not generated by transvections (outside the transvection subgroup: " +
                        offending + ")");
  }
  CompositionSeries cs;
  std::vector<Matrix> current_gens;
  cs.chain.push_back(MatrixGroup::generate(g.field(), n, {}, cap, false));
  for (std::size_t l = 1; l <= n; ++l) {
    std::vector<Matrix> level;
    for (const auto& t : ts)
      if (beta(t) == l) level.push_back(t);
    for (const auto& t : level) {
      if (cs.chain.back().contains(t)) continue;
      current_gens.push_back(t);
      MatrixGroup next = MatrixGroup::generate(g.field(), n, current_gens, cap, false);
      if (next.order() != cs.chain.back().order() * g.field()->characteristic())
        throw InternalError("composition series step has index other than p");
      cs.witnesses.push_back(t);
      cs.chain.push_back(std::move(next));
    }
  }
  if (cs.chain.back().order() != g.order()) throw InternalError("composition series does not reach G");
  return cs;
}

MatrixGroup inertia_subgroup(const MatrixGroup& g, const std::vector<std::size_t>& vars) {
  const std::size_t n = g.dim();
  std::vector<bool> allowed(n, false);
  for (auto v : vars) {
    if (v >= n) throw UsageError("inertia variable index out of range");
    allowed[v] = true;
  }
  std::vector<Matrix> keep;
  for (const auto& m : g.elements()) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (m.at(j, i) != (i == j ? 1 : 0) && !allowed[j]) ok = false;
    if (ok) keep.push_back(m);
  }
  return MatrixGroup::from_closed_set(g.field(), n, keep);
}

std::optional<std::vector<MatrixGroup>> nakajima_decomposition(const MatrixGroup& g) {
  const std::size_t n = g.dim();
  std::vector<MatrixGroup> factors;
  std::size_t product = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Matrix> keep;
    for (const auto& m : g.elements()) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (i == k) continue;
        for (std::size_t j = 0; j < n && ok; ++j)
          if (m.at(j, i) != (i == j ? 1 : 0)) ok = false;
      }
      if (ok) keep.push_back(m);
    }
    factors.push_back(MatrixGroup::from_closed_set(g.field(), n, keep));
    product *= factors.back().order();
  }
  if (product != g.order()) return std::nullopt;
  return factors;
}

Matrix sigma_normalize(const MatrixGroup& gprime, const Matrix& sigma) {
  const std::size_t n = sigma.rows();
  const Field& k = *sigma.field();
  if (!is_transvection(sigma)) throw UsageError("sigma is not a transvection");
  if (gprime.contains(sigma)) throw UsageError("sigma lies in G'");
  if (!is_triangular(sigma)) throw UsageError("sigma is not triangular");
  for (const auto& m : gprime.generators())
    if (!is_triangular(m)) throw UsageError("G' is not in triangular coordinates");
  const std::size_t bs = beta(sigma);  // 1-based
  std::size_t isig = 0;                // 0-based index of the last moved variable
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sigma.at(j, i) != (i == j ? 1 : 0)) isig = i;
  // column of (sigma - 1) x_{i_sigma}
  std::vector<Elem> base(n);
  for (std::size_t j = 0; j < n; ++j) base[j] = j == isig ? 0 : sigma.at(j, isig);
  std::size_t piv = n;
  for (std::size_t j = 0; j < n; ++j)
    if (base[j] != 0) piv = j;
  Matrix b(sigma.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < bs) {
      b.at(i, i) = 1;
    } else if (i == isig) {
      b.at(n - 1, i) = 1;
    } else if (i == n - 1) {
      b.at(isig, i) = 1;
    } else {
      // lambda_i with (sigma-1)x_i = lambda_i (sigma-1)x_{i_sigma}
      const Elem lambda = k.div(sigma.at(piv, i), base[piv]);
      b.at(i, i) = 1;
      b.at(isig, i) = k.neg(lambda);
    }
  }
  // The recipe must keep triangularity and every transvection's beta.
  std::vector<Matrix> gens = gprime.generators();
  gens.push_back(sigma);
  const MatrixGroup whole = MatrixGroup::generate(sigma.field(), n, gens, kDefaultGroupCap, false);
  const Matrix inv = inverse(b);
  for (const auto& t : transvections(whole)) {
    const Matrix c = inv * t * b;
    if (!is_triangular(c) || beta(c) != beta(t))
      throw UsageError("coordinate change does not preserve triangular form and beta (precondition violated)");
  }
  const Matrix s2 = inv * sigma * b;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s2.at(j, i) != (i == j ? 1 : 0)) throw InternalError("sigma still moves a variable other than x_n");
  return b;
}

Polynomial orbit_product(const MatrixGroup& g, const Polynomial& f) {
  if (f.is_zero()) throw UsageError("orbit product of the zero polynomial");
  std::vector<Polynomial> orbit;
  for (const auto& m : g.elements()) {
    Polynomial img = apply_linear_substitution(f, m);
    if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) orbit.push_back(std::move(img));
  }
  Polynomial prod = Polynomial::constant(f.ring(), 1);
  for (const auto& p : orbit) prod = prod * p;
  return prod;
}

}  // namespace modinv
