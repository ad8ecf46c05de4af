#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modinv/group.hpp"
#include "modinv/invariants.hpp"

namespace modinv {

/// A parsed instance file:
///   {"field": {"p": 3, "k": 2, "modulus": [1, 0, 1]}, "n": 3,
///    "generators": [[[1, 1, 0], [0, 1, 0], [0, 0, 1]]], "labels": ["g1"],
///    "options": {"degree_bound": 0, "slice_cap": 60000, "max_pair_reductions": 200000, "group_cap": 4096}}
/// Matrices are row-major with column i holding g(x_i); an entry is an
/// integer or an ascending coefficient list over F_p. "k" and "modulus" may
/// be omitted for a prime field; "labels" and "options" are optional.
struct Instance {
  std::string label;
  MatrixGroup group;
  InvariantOptions options;
  std::size_t group_cap = kDefaultGroupCap;
};

/// Throws ParseError (with line and column) on malformed JSON or a bad
/// shape, ValidationError for a non-unipotent generator. A nonzero
/// `group_cap` overrides the file's.
Instance parse_instance(const std::string& text, const std::string& label = {}, std::size_t group_cap = 0);
Instance load_instance(const std::string& path, std::size_t group_cap = 0);

/// Field spec and generators in the instance-file format.
std::string instance_to_json(const MatrixGroup& g, const std::string& label = {});

/// Stable text form of the group's element set (field, n, sorted elements).
std::string canonical_serialization(const MatrixGroup& g);
std::uint64_t fnv1a64(std::string_view bytes);
/// 16 hex digits of fnv1a64(canonical_serialization(g)).
std::string instance_hash(const MatrixGroup& g);

}  // namespace modinv
