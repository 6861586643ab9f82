#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hassett {

/// A set of marking indices packed into a bitmask. Bit i is marking i+1.
using Subset = std::uint64_t;

inline constexpr std::size_t kMaxMarkings = 62;

inline int subset_size(Subset s) { return std::popcount(s); }
inline bool contains(Subset s, std::size_t i) { return (s >> i) & 1U; }
inline Subset full_subset(std::size_t n) { return n == 0 ? 0 : (~Subset{0} >> (64 - n)); }

/// Builds a subset from 1-based marking labels.
Subset subset_of(std::initializer_list<int> labels);
Subset subset_from_labels(const std::vector<int>& labels);

/// 0-based indices, ascending.
std::vector<std::size_t> indices_of(Subset s);
/// 1-based labels, ascending.
std::vector<int> labels_of(Subset s);

/// Size first, then lexicographic on the ascending label lists.
bool subset_less(Subset a, Subset b);

/// "{1,2,3}"
std::string format_subset(Subset s);

}  // namespace hassett
