#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "modinv/linalg.hpp"
#include "modinv/poly.hpp"

namespace modinv {

/// A group element acting on V^* = <x_1..x_n>: column i of `mat` holds the
/// coefficients of g(x_i). `word` records how it was reached from the
/// generators ("g1*g3"), empty for the identity.
struct GroupElement {
  Matrix mat;
  std::string word;
};

inline constexpr std::size_t kDefaultGroupCap = 4096;

class MatrixGroup {
 public:
  /// Closure of `gens` by breadth-first products. Throws ResourceError when
  /// the closure exceeds `cap`; with `require_p_group`, throws
  /// ValidationError for a non-unipotent generator.
  static MatrixGroup generate(FieldPtr field, std::size_t n, std::vector<Matrix> gens,
                              std::size_t cap = kDefaultGroupCap, bool require_p_group = true,
                              std::vector<std::string> labels = {});
  /// Subgroup given by an element set already known to be closed.
  static MatrixGroup from_closed_set(FieldPtr field, std::size_t n, std::vector<Matrix> elements);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return n_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Matrix>& generators() const noexcept { return gens_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Sorted by the matrix entries; the identity is among them.
  const std::vector<Matrix>& elements() const noexcept { return elements_; }
  const std::string& word(std::size_t element_index) const { return words_.at(element_index); }
  std::optional<std::size_t> index_of(const Matrix& m) const;
  bool contains(const Matrix& m) const { return index_of(m).has_value(); }
  bool is_trivial() const noexcept { return elements_.size() == 1; }
  bool same_elements(const MatrixGroup& o) const noexcept { return elements_ == o.elements_; }
  bool is_subgroup_of(const MatrixGroup& o) const;

 private:
  FieldPtr field_;
  std::size_t n_ = 0;
  std::vector<Matrix> gens_;
  std::vector<std::string> labels_;
  std::vector<Matrix> elements_;
  std::vector<std::string> words_;
};

bool is_unipotent(const Matrix& m);
bool is_transvection(const Matrix& m);

/// (V*)^G as rows of coefficient vectors in x_1..x_n, and V^G as rows of
/// coordinate vectors in v_1..v_n (the dual basis).
struct FixedSpaces {
  Matrix dual;
  Matrix vectors;
};
FixedSpaces fixed_spaces(const MatrixGroup& g);
std::size_t fixed_rank(const MatrixGroup& g);

/// The linear form cutting out ker(g-1) on V, scaled so that its
/// DegLex-leading coefficient is 1. Coefficient vector over x_1..x_n.
std::vector<Elem> reflecting_hyperplane(const Matrix& g);

/// Basis change B (columns = new variables written in the old ones) after
/// which every element is triangular: g(x_i) - x_i in <x_1..x_{i-1}>.
/// Built from the chain U_1 = sum (g-1)V*, U_{k+1} = sum (g-1)U_k, so the
/// first dim U_1 new variables span (V^G)^perp.
Matrix triangularize(const MatrixGroup& g);
/// B^{-1} M B for every generator; the group in the new coordinates.
MatrixGroup change_basis(const MatrixGroup& g, const Matrix& basis);
bool is_triangular(const Matrix& m);

/// Largest 1-based j with x_j occurring in some g(x_i) - x_i; 0 for the identity.
std::size_t beta(const Matrix& g);
/// Max of beta over transvections in G (0 when there are none).
std::size_t beta_group(const MatrixGroup& g);
std::vector<Matrix> transvections(const MatrixGroup& g);
/// Subgroup generated by the transvections of G.
MatrixGroup transvection_subgroup(const MatrixGroup& g);
bool is_transvection_generated(const MatrixGroup& g);

struct CompositionSeries {
  std::vector<MatrixGroup> chain;  // G_0 = 1 ... G_k = G
  std::vector<Matrix> witnesses;   // witnesses[l] is adjoined to chain[l] to get chain[l+1]
};
/// Throws NotApplicable if G is not generated by transvections.
CompositionSeries composition_series(const MatrixGroup& g);

/// {g : (g-1)x_i in the ideal (x_j : j in vars) for every i}; vars 0-based.
MatrixGroup inertia_subgroup(const MatrixGroup& g, const std::vector<std::size_t>& vars);

/// P_k = {g : g x_j = x_j for j != k}, returned (k = 0..n-1) when the product
/// of their orders equals |G|.
std::optional<std::vector<MatrixGroup>> nakajima_decomposition(const MatrixGroup& g);

/// Coordinate change after which sigma moves only x_n, beta values of all
/// transvections preserved. Requires triangular coordinates, sigma a
/// transvection outside G'. Returns B as in change_basis.
Matrix sigma_normalize(const MatrixGroup& gprime, const Matrix& sigma);

/// Product of the distinct images of f under the group.
Polynomial orbit_product(const MatrixGroup& g, const Polynomial& f);

}  // namespace modinv
