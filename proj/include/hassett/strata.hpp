#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hassett/rational.hpp"
#include "hassett/subset.hpp"
#include "hassett/weights.hpp"

namespace hassett {

/// Dual graph of a nodal marked curve. Loops and multiple edges are
/// allowed; a loop contributes 2 to the valence of its vertex.
struct StableTree {
  std::vector<int> vertex_genus;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// marking (0-based) -> vertex, or nullopt when the marking sits at a node.
  std::vector<std::optional<std::size_t>> marking_vertex;
  /// Zero-weight markings lying at a node: marking -> edge index. Excluded
  /// from every vertex degree.
  std::map<std::size_t, std::size_t> node_markings;
  /// Per vertex, the coincidence classes of its markings (a partition).
  std::vector<std::vector<Subset>> clusters;

  std::size_t vertex_count() const { return vertex_genus.size(); }
  /// sum g_v + #edges - #vertices + 1
  int arithmetic_genus() const;
  Subset markings_at(std::size_t v) const;
  std::size_t valence(std::size_t v) const;

  friend bool operator==(const StableTree&, const StableTree&) = default;
};

/// Structural problems of t relative to w (empty when well formed).
std::vector<std::string> structural_problems(const WeightData& w, const StableTree& t);

/// Annotations the engine reports without deciding, such as zero-weight
/// markings recorded at a node.
std::vector<std::string> tree_notes(const StableTree& t);

/// 2g_v - 2 + valence(v) + sum of weights of markings at v.
Rational vertex_degree(const WeightData& w, const StableTree& t, std::size_t v);

/// Every vertex degree is positive and every coincidence class has weight
/// sum <= 1. Throws DomainError when t is not well formed.
bool is_stable(const WeightData& w, const StableTree& t);

/// Single smooth vertex with all markings distinct.
StableTree smooth_curve(const WeightData& w);
/// Two vertices of genus (side_genus, g - side_genus) joined by one node,
/// `side` on vertex 0 and the rest on vertex 1.
StableTree two_component_curve(const WeightData& w, Subset side, int side_genus);

enum class DivisorKind { kNodal, kIrreducible, kCoincidence };

std::string divisor_kind_name(DivisorKind k);

struct BoundaryDivisor {
  DivisorKind kind = DivisorKind::kNodal;
  Subset side = 0;      // nodal: markings on one component
  int side_genus = 0;   // nodal
  int other_genus = 0;  // nodal
  Subset pair = 0;      // coincidence: the two colliding markings

  friend bool operator==(const BoundaryDivisor&, const BoundaryDivisor&) = default;
};

/// The generic curve of the divisor as a dual graph.
StableTree divisor_curve(const WeightData& w, const BoundaryDivisor& d);

std::string describe(const BoundaryDivisor& d, std::size_t n);

/// Nodal divisors {S, S^c} (all genus splits) with both sides of positive
/// degree, the irreducible-node divisor when g >= 1, and coincidence
/// divisors {i,j} with positive weights summing to <= 1. Deterministic
/// order: nodal by (|side|, side genus, side), then irreducible, then pairs.
std::vector<BoundaryDivisor> enumerate_boundary_divisors(const WeightData& w);

/// What happens to the nodal divisors of a under the reduction a -> b.
struct ReductionCensus {
  /// Genus-0 side of degree <= 0 under b with >= 3 markings: the component
  /// has moduli, the divisor is contracted. `side` is the collapsed side.
  std::vector<BoundaryDivisor> contracted;
  /// Collapsed side with exactly 2 markings: the component has no moduli
  /// and the divisor becomes the coincidence divisor of its pair.
  std::vector<BoundaryDivisor> to_coincidence;
  /// Nodal divisors of a that stay nodal divisors of b.
  std::vector<BoundaryDivisor> surviving;
};

/// Requires reduction_exists(a, b); throws DomainError otherwise.
ReductionCensus reduction_census(const WeightData& a, const WeightData& b);
std::vector<BoundaryDivisor> contracted_divisors(const WeightData& a, const WeightData& b);

}  // namespace hassett
