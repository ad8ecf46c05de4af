#pragma once

// Degree-slice machinery shared by the invariant-ring code. Internal.

#include <functional>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "modinv/linalg.hpp"
#include "modinv/poly.hpp"

namespace modinv {

namespace detail {

struct DegreeIndex {
  std::vector<Monomial> monos;  // descending
  std::unordered_map<Monomial, std::size_t, MonomialHash> col;
};

// Monomial bases of S_d, built on demand; refuses slices above `cap`.
class MonomialIndex {
 public:
  MonomialIndex(RingPtr ring, std::size_t cap) : ring_(std::move(ring)), cap_(cap) {}
  const RingPtr& ring() const noexcept { return ring_; }
  const DegreeIndex& at(std::uint32_t d);
  std::vector<Elem> dense(const Polynomial& f, std::uint32_t d);
  Polynomial poly(std::uint32_t d, const std::vector<Elem>& v);

 private:
  RingPtr ring_;
  std::size_t cap_;
  std::map<std::uint32_t, DegreeIndex> cache_;
};

// Canonical basis of a subspace of S_d: the reduced row echelon form over
// the descending monomial basis.
struct Slice {
  std::vector<Polynomial> basis;
  std::vector<std::vector<Elem>> dense;
  std::vector<std::size_t> pivots;  // column of each basis element's leading monomial

  std::size_t dim() const noexcept { return basis.size(); }
};

Slice canonical_slice(MonomialIndex& idx, std::uint32_t d, const EchelonSpace& space);

// Residual of v after clearing the pivot columns of a canonical slice.
void clear_pivots(const Field& k, const Slice& s, std::vector<Elem>& v);

using SliceSource = std::function<const Slice&(std::uint32_t)>;

// Minimal homogeneous generators of a graded subalgebra given by its slices,
// found degree by degree. step(d) must be called for d = 1, 2, ... in order.
class GeneratorBuilder {
 public:
  GeneratorBuilder(std::shared_ptr<MonomialIndex> idx, SliceSource slices)
      : idx_(std::move(idx)), slices_(std::move(slices)) {}
  std::vector<Polynomial> step(std::uint32_t d);
  const std::vector<Polynomial>& gens() const noexcept { return gens_; }
  std::uint32_t done() const noexcept { return done_; }
  /// Products of the generators in degree d (d <= done() + 1), as a canonical slice.
  Slice decomposables(std::uint32_t d);

 private:
  std::shared_ptr<MonomialIndex> idx_;
  SliceSource slices_;
  std::vector<Polynomial> gens_;
  std::uint32_t done_ = 0;
};

}  // namespace detail

// k[F]_d, or its part fixed by the constraint matrices, for a base F of
// algebraically independent homogeneous polynomials (dependent bases are fine
// without constraints). Candidates F^beta and their images are memoized.
class SliceEngine {
 public:
  SliceEngine(std::shared_ptr<detail::MonomialIndex> idx, std::vector<Polynomial> base,
              std::vector<Matrix> constraints);
  const detail::Slice& slice(std::uint32_t d);
  const std::shared_ptr<detail::MonomialIndex>& index() const noexcept { return idx_; }
  std::uint64_t rows() const noexcept { return rows_; }

 private:
  struct Power {
    Polynomial val;
    std::vector<Polynomial> imgs;
  };
  const Power& power(const Monomial& beta);
  std::vector<Monomial> exponents(std::uint32_t d) const;

  std::shared_ptr<detail::MonomialIndex> idx_;
  std::vector<Polynomial> base_;
  std::vector<std::uint32_t> weights_;
  std::vector<LinearAction> acts_;
  std::vector<std::vector<Polynomial>> base_imgs_;
  std::unordered_map<Monomial, Power, MonomialHash> powers_;
  std::map<std::uint32_t, detail::Slice> slices_;
  std::uint64_t rows_ = 0;
};

}  // namespace modinv
