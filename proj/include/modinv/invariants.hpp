#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modinv/grobner.hpp"
#include "modinv/group.hpp"
#include "modinv/poly.hpp"

namespace modinv {

struct InvariantOptions {
  /// Largest degree examined; 0 means n(|G| - 1).
  std::uint32_t degree_bound = 0;
  /// Largest number of monomials in one degree slice before giving up.
  std::size_t slice_cap = 60000;
  GroebnerOptions gb;
};

/// Homogeneous algebra generators with strictly increasing leading monomials.
struct GeneratorSet {
  std::vector<Polynomial> gens;
  bool certified = false;
  /// How completeness was established, e.g. "degree product 9 = |G|".
  std::string certificate;
  /// Whether the ring is a polynomial ring, when decided.
  std::optional<bool> polynomial;
  std::uint32_t searched_to = 0;

  std::vector<std::uint32_t> degrees() const;
};

/// Degree-d basis of the subalgebra generated by homogeneous polynomials,
/// and the canonical generator set obtained from it degree by degree.
GeneratorSet normalize_generators(const std::vector<Polynomial>& polys, std::uint32_t max_degree = 0);

/// Canonical reduced basis of S^G_d (monic, fully reduced, leading
/// monomials descending), straight from the stacked kernel of (g - 1) over
/// the generators. Independent of InvariantRing.
std::vector<Polynomial> invariant_space(const MatrixGroup& g, std::uint32_t d, const RingPtr& ring = nullptr);

class SliceEngine;

/// S^G for one group: degree slices, generators, Hilbert ideals. Results are
/// cached per instance; the group is used in the coordinates given.
class InvariantRing {
 public:
  explicit InvariantRing(MatrixGroup g, InvariantOptions opts = {}, RingPtr ring = nullptr);
  ~InvariantRing();
  InvariantRing(InvariantRing&&) noexcept;
  InvariantRing& operator=(InvariantRing&&) noexcept;

  const MatrixGroup& group() const noexcept { return group_; }
  const RingPtr& ring() const noexcept { return ring_; }
  const InvariantOptions& options() const noexcept { return opts_; }
  std::uint32_t bound() const noexcept { return bound_; }
  /// Degree after which the generators found are provably complete
  /// (module-generator bound over the norms of a triangular basis).
  std::uint32_t certification_degree() const noexcept { return cert_degree_; }

  /// Canonical basis of S^G_d (same normalization as invariant_space).
  const std::vector<Polynomial>& slice(std::uint32_t d);
  std::size_t slice_dim(std::uint32_t d) { return slice(d).size(); }
  bool is_invariant(const Polynomial& f) const;
  /// f in S^G_d, decided against the cached slice.
  bool in_slice(const Polynomial& f);

  /// Minimal generators, searched up to certification or the bound.
  const GeneratorSet& generators();
  /// (generators) S with its reduced basis; exact when generators() is certified.
  const IdealBasis& hilbert_ideal();
  /// ((W^perp S) cap S^G) S via the contraction of W^perp S to the presented
  /// algebra; `w` has the basis vectors of W as rows. Exact when the
  /// generators are certified.
  IdealBasis relative_hilbert_ideal(const Matrix& w);

  /// Work counters for the ledger (deterministic, unlike timings).
  std::uint64_t kernel_rows() const noexcept;

 private:
  void build_engine();

  MatrixGroup group_;
  InvariantOptions opts_;
  RingPtr ring_;
  std::uint32_t bound_ = 0;
  std::uint32_t cert_degree_ = 0;
  std::unique_ptr<SliceEngine> engine_;
  std::optional<GeneratorSet> gens_;
  std::optional<IdealBasis> hilbert_;
};

/// Linear forms vanishing on W (rows of `w` are vectors of V); throws
/// UsageError unless W is contained in V^G.
std::vector<Polynomial> perp_ideal(const MatrixGroup& g, const Matrix& w, const RingPtr& ring);

/// The degree-wise relative ideal: generated by the invariants of degree
/// <= bound that lie in W^perp S.
IdealBasis relative_hilbert_ideal_degreewise(InvariantRing& r, const Matrix& w, std::uint32_t bound);

struct FixedComplementDecomposition {
  IdealBasis relative;
  std::vector<Polynomial> complement;  // f_{s+1}, ..., f_n
  std::size_t codim = 0;               // s
};
/// Hilbert ideal = relative ideal + (complement); verified by Groebner basis
/// equality, InternalError when the verification fails.
FixedComplementDecomposition fixed_complement_decomposition(InvariantRing& r, const Matrix& w);

struct PresentedAlgebra {
  RingPtr ring;                      // k[y_1..y_m], deg y_i = deg f_i
  std::vector<Polynomial> images;    // f_i
  std::vector<Polynomial> relations; // reduced basis of the relation ideal
};
/// Throws UsageError for an uncertified generator set.
PresentedAlgebra presentation(const GeneratorSet& gens, const GroebnerOptions& opts = {});
PresentedAlgebra presentation_of(const std::vector<Polynomial>& gens, const GroebnerOptions& opts = {});

/// f in k[gens], decided by eliminating tag variables y_i - g_i.
bool subalgebra_contains(const std::vector<Polynomial>& gens, const Polynomial& f, const GroebnerOptions& opts = {});

struct StepAnalysis {
  std::optional<std::uint32_t> d0;
  std::optional<Polynomial> witness;  // in A_{d0} \ R_{d0}
  std::size_t quotient_rank = 0;      // dim A_{d0} - dim R_{d0}
  /// Generators of A, elements of R first within each degree, leading
  /// monomial ties broken by subtracting multiples.
  GeneratorSet a_gens;
  std::vector<std::size_t> outside_r;  // 0-based indices into a_gens.gens
  std::vector<std::size_t> xn_powers;  // indices with In(a_i) = x_n^deg
  bool generated_by_r_and_witness = false;
  std::optional<std::size_t> i0() const {
    return outside_r.size() == 1 ? std::optional<std::size_t>(outside_r[0]) : std::nullopt;
  }
  std::optional<std::size_t> i1() const {
    return xn_powers.size() == 1 ? std::optional<std::size_t>(xn_powers[0]) : std::nullopt;
  }
};
/// A = S^{G'}, R = S^G with [G : G'] = p. UsageError otherwise.
StepAnalysis step_analysis(InvariantRing& a, InvariantRing& r);

}  // namespace modinv
