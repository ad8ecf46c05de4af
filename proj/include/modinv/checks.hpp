#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "modinv/grobner.hpp"
#include "modinv/group.hpp"
#include "modinv/invariants.hpp"

namespace modinv {

enum class Status { Yes, No, Unknown };
std::string to_string(Status s);

struct Certificate {
  std::string criterion;
  std::vector<std::pair<std::string, std::string>> data;

  std::string value(const std::string& key) const;
};

struct Cost {
  std::uint64_t kernel_rows = 0;
  std::uint64_t gb_pairs = 0;
};

/// Yes and No always name the rule that decided them.
struct Verdict {
  Status status = Status::Unknown;
  Certificate certificate;
  Cost cost;
};

/// Yes iff the certified Hilbert ideal has colength |G|.
Verdict is_polynomial_ring(InvariantRing& r);

/// mu(J) == height(J).
bool is_complete_intersection(const IdealBasis& j);

/// Yes when polynomial; No when G is not generated by transvections, or when
/// a minimal set of invariant ideal generators of the Hilbert ideal fails to
/// generate S^G; Unknown otherwise.
Verdict direct_summand_status(InvariantRing& r);

struct SingularLocusOptions {
  std::size_t max_minors = 4000;
  GroebnerOptions gb;
};

/// Relations plus the c x c minors of their Jacobian, c = height of the
/// relation ideal. NotApplicable for a staircase with maximal independent
/// sets of different sizes.
IdealBasis singular_ideal(const PresentedAlgebra& pres, const SingularLocusOptions& opts = {});

/// Krull dimension of the singular locus of k[y]/J; -1 when it is empty.
int singular_locus_dimension(const PresentedAlgebra& pres, const SingularLocusOptions& opts = {});

/// Whether R localized at p = (W^perp S) cap R is regular, decided in the
/// presentation: p is the kernel of y_i -> f_i mod W^perp S, and the
/// localization is regular iff p misses some generator of the singular ideal.
/// Rows of `w` span W, which must lie in V^G.
bool regular_at_fixed_prime(InvariantRing& r, const Matrix& w, const SingularLocusOptions& opts = {});

struct ReportItem {
  std::string name;
  bool applicable = true;
  bool ok = true;
  std::string detail;
};

struct Report {
  std::string theorem;
  bool applicable = true;
  std::string note;
  std::vector<ReportItem> items;

  ReportItem& add(std::string name, bool ok, std::string detail = {});
  void skip(std::string name, std::string why);
  const ReportItem* find(const std::string& name) const;
  bool counterexample() const;
};

/// Polynomial, small singular locus and regularity at the prime of V^G,
/// computed separately; they must agree.
Report verify_singloc_equivalence(InvariantRing& r, const SingularLocusOptions& opts = {});

/// For rank V^G >= n - 2: the relative ideal for V^G and the Hilbert ideal
/// are complete intersections, mu adds up across the fixed-complement decomposition,
/// and the relative ideal's reduced basis lies in Sym (V^G)^perp.
Report verify_large_fixed_rank(InvariantRing& r);

/// Every reduced basis element lies in the subalgebra Sym W^perp; checked in
/// coordinates whose leading variables span W^perp.
bool extended_from_perp(const IdealBasis& j, const MatrixGroup& g, const Matrix& w);

/// Transvection groups of order p^2: polynomial, and in the two-hyperplane
/// case equal to k[l_sigma, l_tau, N(x_3), N(x_4), rest].
Report verify_order_p2(const MatrixGroup& g, const InvariantOptions& opts = {});

/// The polynomials of the closed form above for an order-p^2 transvection
/// group, or empty when the hyperplane forms of all generating pairs are
/// proportional.
std::vector<Polynomial> order_p2_closed_form(const MatrixGroup& g, const RingPtr& ring);

/// Last step of the composition series over F_p in rank 4: beta of the
/// penultimate group, the step statements on generators and relative Hilbert
/// ideals, and direct summand implies polynomial.
Report verify_rank4_step(const MatrixGroup& g, const InvariantOptions& opts = {});

/// |G| = p^3: chain groups polynomial through order p^2, and direct summand
/// implies polynomial.
Report verify_order_p3(const MatrixGroup& g, const InvariantOptions& opts = {});

}  // namespace modinv
