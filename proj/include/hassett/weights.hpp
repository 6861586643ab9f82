#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hassett/feasibility.hpp"
#include "hassett/rational.hpp"
#include "hassett/subset.hpp"

namespace hassett {

/// Genus plus an ordered vector of weights in [0,1]. Marking i (1-based in
/// every user-facing string) is weights[i-1].
struct WeightData {
  int genus = 0;
  std::vector<Rational> weights;

  std::size_t size() const { return weights.size(); }
  const Rational& operator[](std::size_t i) const { return weights[i]; }

  Rational total() const;
  Rational sum_over(Subset s) const;

  /// Markings with positive weight.
  Subset positive_support() const;
  /// Number of zero weights.
  std::size_t zero_count() const;
  /// The positive weights only, in order.
  WeightData positive_part() const;

  /// Weights permuted so that result[i] = weights[slots[i]].
  WeightData relabeled(const std::vector<std::size_t>& slots) const;

  friend bool operator==(const WeightData&, const WeightData&) = default;
};

/// Parses "1/3,1/3,2/3,1". Throws std::invalid_argument.
std::vector<Rational> parse_weight_list(const std::string& text);
std::string format_weights(const WeightData& w);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Total check of the weight-data invariants.
ValidationReport validate(const WeightData& w);
/// Throws DomainError carrying the first violation.
void require_valid(const WeightData& w);

/// Subsets of size >= 2 whose weight sum is exactly 1. These sit on a
/// wall between chambers and are reported, not resolved.
std::vector<Subset> wall_sets(const WeightData& w);

/// Subsets S with |S| >= 2 and sum_S a_i <= 1.
struct ChamberSignature {
  std::size_t n = 0;
  std::vector<Subset> small_sets;  // sorted by subset_less

  bool contains(Subset s) const;
  friend bool operator==(const ChamberSignature&, const ChamberSignature&) = default;
};

/// Largest n accepted by operations that enumerate subsets.
inline constexpr std::size_t kMaxEnumeratedMarkings = 30;

/// Sorted-prefix enumeration with pruning.
ChamberSignature chamber_signature(const WeightData& w);

/// Same chamber signature. Throws DomainError on n or genus mismatch.
bool fine_equivalent(const WeightData& w1, const WeightData& w2);

/// Genus 0 only: signatures agree on all subsets of size >= 3. Two-marked
/// rational tails carry no moduli, so size-2 collisions do not change the
/// coarse space.
bool coarse_equivalent_genus0(const WeightData& w1, const WeightData& w2);

/// a_i >= b_i for every i (a and b must be valid with equal n and genus).
bool reduction_exists(const WeightData& a, const WeightData& b);

enum class EquivalenceMode { kFine, kCoarse };

struct ReductionWitness {
  bool exists = false;
  std::optional<WeightData> witness;  // b' with b' ~ b and a >= b'
};

/// Is there b' equivalent to b (per mode) with a_i >= b'_i? Decided by exact
/// feasibility over the signature constraints of b plus pointwise bounds.
ReductionWitness reduction_exists_up_to_equivalence(const WeightData& a, const WeightData& b,
                                                    EquivalenceMode mode);

struct ChamberReduction {
  bool exists = false;
  std::optional<WeightData> source;  // a' ~ a
  std::optional<WeightData> target;  // b' ~ b with a' >= b'
};

/// Chamber-wise reduction: are there a' ~ a and b' ~ b (each per its own
/// mode) with a'_i >= b'_i? Unlike the fixed-source form, the answer depends
/// only on the two chambers.
ChamberReduction chamber_reduction_exists(const WeightData& a, EquivalenceMode a_mode, const WeightData& b,
                                          EquivalenceMode b_mode);

/// The linear system whose solutions are exactly the weight vectors x of
/// the same size with x ~ b (per mode), 0 <= x <= 1, matching the support of b
/// and 2g-2+sum x > 0. Constraints are reduced to the minimal big sets and
/// maximal small sets.
LinearSystem chamber_conditions(const WeightData& b, EquivalenceMode mode);

/// 2g - 2 + sum_{i in keep} a_i > 0. Throws DomainError when keep is empty.
bool forgetful_defined(const WeightData& w, Subset keep);

}  // namespace hassett
