#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modinv/poly.hpp"

namespace modinv {

struct GroebnerOptions {
  std::size_t max_pair_reductions = 200000;
};

struct GroebnerStats {
  std::size_t pairs_reduced = 0;
  std::size_t pairs_skipped = 0;
};

/// Reduced Groebner basis (monic, interreduced, sorted by leading monomial
/// ascending) in the ring's order. Zero input polynomials are ignored.
/// Throws ResourceError past the pair budget.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const GroebnerOptions& opts = {},
                                   GroebnerStats* stats = nullptr);

/// Full remainder of f modulo `gb` (any list of polynomials works; it is a
/// canonical normal form when gb is a Groebner basis).
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& gb);

/// An ideal with a lazily computed reduced Groebner basis.
class IdealBasis {
 public:
  IdealBasis() = default;
  IdealBasis(RingPtr ring, std::vector<Polynomial> gens, GroebnerOptions opts = {});

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& gens() const noexcept { return gens_; }
  const std::vector<Polynomial>& gb() const;
  bool is_unit() const;
  bool is_zero() const { return gb().empty(); }
  bool contains(const Polynomial& f) const { return normal_form(f, gb()).is_zero(); }
  bool contains(const IdealBasis& other) const;
  bool operator==(const IdealBasis& other) const;
  Polynomial reduce(const Polynomial& f) const { return normal_form(f, gb()); }
  IdealBasis operator+(const IdealBasis& other) const;
  const GroebnerStats& stats() const noexcept { return stats_; }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  GroebnerOptions opts_;
  mutable std::optional<std::vector<Polynomial>> gb_;
  mutable GroebnerStats stats_;
};

/// Groebner basis elements free of the eliminated block; `gb` must be a
/// Groebner basis under LexBlockElim(block) (checked).
std::vector<Polynomial> elimination_ideal(const std::vector<Polynomial>& gb);

/// Kernel of k[y_1..y_m] -> ring, y_i -> f_i, as a Groebner basis in
/// k[y_1..y_m] with the given weights (deg y_i = deg f_i by default).
std::vector<Polynomial> relation_ideal(const std::vector<Polynomial>& images, RingPtr target,
                                       const GroebnerOptions& opts = {}, GroebnerStats* stats = nullptr);

/// Dimension of S/I from the leading-monomial ideal (largest independent
/// variable set); -1 for the unit ideal.
int krull_dimension(const std::vector<Polynomial>& gb, std::size_t nvars);
/// Size of every maximal independent set (used to reject non-equidimensional
/// staircases).
std::vector<std::size_t> maximal_independent_set_sizes(const std::vector<Polynomial>& gb, std::size_t nvars);
/// n - dim; n + 1 for the unit ideal.
std::size_t height(const std::vector<Polynomial>& gb, std::size_t nvars);

/// Number of standard monomials when finite.
std::optional<std::uint64_t> colength(const std::vector<Polynomial>& gb, std::size_t nvars);
/// Largest degree of a standard monomial when the colength is finite.
std::optional<std::uint32_t> top_degree(const std::vector<Polynomial>& gb, std::size_t nvars);
/// Number of standard monomials of total degree d.
std::uint64_t standard_monomial_count(const std::vector<Polynomial>& gb, std::size_t nvars, std::uint32_t d);

/// mu(J) for a homogeneous ideal, computed degree by degree. Throws
/// UsageError on inhomogeneous input.
std::size_t minimal_generator_count(const std::vector<Polynomial>& gens, const GroebnerOptions& opts = {});
/// Indices of a minimal generating subset of homogeneous `gens`, chosen
/// greedily in (degree, input position) order.
std::vector<std::size_t> minimal_generating_subset(const std::vector<Polynomial>& gens,
                                                   const GroebnerOptions& opts = {});

}  // namespace modinv
