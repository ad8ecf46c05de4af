#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modinv/checks.hpp"
#include "modinv/group.hpp"
#include "modinv/invariants.hpp"

namespace modinv {

/// Every transvection of the upper unitriangular group, as I + w l^T with the
/// support of w before the support of l and the last entry of w equal to 1.
std::vector<Matrix> unipotent_transvections(const FieldPtr& k, std::size_t n);

struct SurveyParams {
  std::uint32_t p = 2;
  std::size_t n = 3;
  /// All subsets of 1..max_generators transvections, in lexicographic order;
  /// otherwise `samples` groups from uniformly drawn transvections.
  bool exhaustive = false;
  std::size_t samples = 20;
  std::size_t max_generators = 3;
  std::uint64_t seed = 1;
  /// Generating sets examined (exhaustive) or drawn (sampled) at most; also
  /// bounds the number of transvections listed.
  std::size_t budget = 100000;
  std::size_t group_cap = kDefaultGroupCap;
  /// Keep only groups with rank V^G at least this.
  std::size_t min_fixed_rank = 0;
  /// Keep only groups of this order; 0 keeps all.
  std::size_t order = 0;
};

struct Enumeration {
  std::vector<MatrixGroup> groups;
  std::size_t candidates = 0;
  std::size_t duplicates = 0;
  std::size_t over_cap = 0;
  std::size_t filtered = 0;
  bool truncated = false;
};

/// Transvection-generated subgroups of U_n(F_p); groups with the same element
/// set appear once.
Enumeration enumerate_transvection_groups(const SurveyParams& params);

struct SuiteOptions {
  InvariantOptions invariants;
  SingularLocusOptions singular;
  /// Transvection pairs drawn per instance for the conjugation checks.
  std::size_t conjugation_pairs = 16;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct LedgerRecord {
  std::string hash;
  std::string instance;  // instance-file JSON of the generators
  std::uint32_t p = 0, k = 1;
  std::size_t n = 0, order = 0, rank_vg = 0, beta = 0;
  Status polynomial = Status::Unknown;
  std::optional<bool> complete_intersection;  // of the Hilbert ideal
  Status direct_summand = Status::Unknown;
  std::vector<std::uint32_t> degrees;
  std::vector<Report> reports;
  bool counterexample = false;
  std::string error;  // stage and message of a resource error
  Cost cost;

  const Report* report(const std::string& theorem) const;
  /// One JSON object without a trailing newline.
  std::string to_json() const;
};

/// Transvections g, h of G in triangular coordinates: g h g^-1 is a
/// transvection with the beta of h, and equal beta implies gh = hg.
Report verify_transvection_conjugation(const MatrixGroup& g, std::size_t pairs, std::uint64_t seed);

/// All verifiers applicable to one group. Resource errors end up in `error`.
LedgerRecord analyze_group(const MatrixGroup& g, const SuiteOptions& opts = {});

struct Summary {
  std::size_t instances = 0;
  std::size_t polynomial = 0, non_polynomial = 0, polynomial_unknown = 0;
  std::size_t complete_intersection = 0;
  std::size_t ds_yes = 0, ds_no = 0, ds_unknown = 0;
  std::size_t counterexamples = 0;
  std::size_t errors = 0;
  std::size_t duplicates = 0, over_cap = 0;
  bool truncated = false;

  void add(const LedgerRecord& r);
  std::string to_json() const;
  std::string to_text() const;
};

struct SuiteResult {
  std::vector<LedgerRecord> records;  // sorted by hash
  Summary summary;
};

/// Runs analyze_group on every group; with several workers each one writes
/// its own shard `<ledger>.shard<i>` when `ledger` is given.
SuiteResult run_suite(const std::vector<MatrixGroup>& groups, const SuiteOptions& opts = {},
                      const std::string& ledger = {});

/// Appends the records whose hash is not yet in the ledger, in hash order,
/// and writes the summary to `<ledger stem>.summary.json`. Returns the number
/// of lines appended.
std::size_t append_ledger(const std::string& path, const SuiteResult& result);

}  // namespace modinv
