#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hassett/perm_group.hpp"
#include "hassett/subset.hpp"
#include "hassett/weights.hpp"

namespace hassett {

/// How the auxiliary indices h_1..h_r of an admissible transposition are read.
///   kStrict:   T ranges over subsets of {1..n}, |T| >= 2, and may contain i
///              or j. This is the literal range of the definition.
///   kDistinct: T ranges over subsets of {1..n} \ {i,j}, |T| >= 2.
enum class AtransReading { kStrict, kDistinct };

struct AdmissibilityResult {
  bool admissible = true;
  std::optional<Subset> witness;  // a T separating a_i and a_j when not admissible
};

/// i <-> j is admissible iff (a_i + sum_T <= 1) <=> (a_j + sum_T <= 1) for
/// every T. Decided as a subset-sum search for sum_T in (1 - max, 1 - min].
/// Indices are 0-based; both weights must be positive and i != j.
AdmissibilityResult is_admissible(const WeightData& w, std::size_t i, std::size_t j,
                                  AtransReading reading = AtransReading::kStrict);

/// Admissible transpositions among positive-weight markings plus all
/// transpositions among zero-weight markings, sorted.
std::vector<Permutation> admissible_generators(const WeightData& w,
                                               AtransReading reading = AtransReading::kStrict);

enum class SpecialLabel { kNone, kPGL2, kTorusOnly, kTrivial };
std::string special_label_name(SpecialLabel s);  // "none", "PGL2", "torus-only", "trivial"

struct AutDescription {
  int torus_rank = 0;
  PermGroup finite;
  SpecialLabel special = SpecialLabel::kNone;
  std::optional<std::string> stack_note;
  std::string provenance;
  std::string label;
};

struct NotCovered {
  std::string reason = "no theorem in scope covers this weight datum";
  std::string detail;
};

using AutResult = std::variant<AutDescription, NotCovered>;

/// Automorphism group of the coarse Hassett space, dispatched over the
/// known results. Anything not covered by one of them is NotCovered.
/// Throws DomainError on invalid weight data.
AutResult aut_group(const WeightData& w, AtransReading reading = AtransReading::kStrict);

}  // namespace hassett
