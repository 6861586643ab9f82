#include "hassett/strata.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <tuple>

#include "hassett/errors.hpp"

namespace hassett {

int StableTree::arithmetic_genus() const {
  const int sum = std::accumulate(vertex_genus.begin(), vertex_genus.end(), 0);
  return sum + static_cast<int>(edges.size()) - static_cast<int>(vertex_genus.size()) + 1;
}

Subset StableTree::markings_at(std::size_t v) const {
  Subset s = 0;
  for (std::size_t i = 0; i < marking_vertex.size(); ++i) {
    if (marking_vertex[i] == v) s |= Subset{1} << i;
  }
  return s;
}

std::size_t StableTree::valence(std::size_t v) const {
  std::size_t d = 0;
  for (const auto& [x, y] : edges) d += (x == v) + (y == v);
  return d;
}

std::vector<std::string> structural_problems(const WeightData& w, const StableTree& t) {
  std::vector<std::string> out;
  const std::size_t nv = t.vertex_count();
  if (nv == 0) {
    out.push_back("tree has no vertices");
    return out;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (t.vertex_genus[v] < 0) out.push_back("vertex " + std::to_string(v) + " has negative genus");
  }
  for (const auto& [x, y] : t.edges) {
    if (x >= nv || y >= nv) {
      out.push_back("edge refers to a missing vertex");
      return out;
    }
  }
  // Connectivity by union-find.
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [x, y] : t.edges) parent[find(x)] = find(y);
  for (std::size_t v = 1; v < nv; ++v) {
    if (find(v) != find(0)) {
      out.push_back("dual graph is not connected");
      break;
    }
  }
  if (t.arithmetic_genus() != w.genus) {
    out.push_back("arithmetic genus " + std::to_string(t.arithmetic_genus()) +
                  " differs from ambient genus " + std::to_string(w.genus));
  }
  if (t.marking_vertex.size() != w.size()) {
    out.push_back("tree places " + std::to_string(t.marking_vertex.size()) + " markings, weight data has " +
                  std::to_string(w.size()));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& at = t.marking_vertex[i];
    const bool on_node = t.node_markings.count(i) > 0;
    if (at && *at >= nv) out.push_back("marking " + std::to_string(i + 1) + " on a missing vertex");
    if (at.has_value() == on_node) {
      out.push_back("marking " + std::to_string(i + 1) + " must be on exactly one vertex or node");
    }
    if (on_node && w[i].sign() > 0) {
      out.push_back("positive-weight marking " + std::to_string(i + 1) + " lies at a node");
    }
    if (on_node && t.node_markings.at(i) >= t.edges.size()) {
      out.push_back("marking " + std::to_string(i + 1) + " on a missing edge");
    }
  }
  if (t.clusters.size() != nv) {
    out.push_back("clusters must list one partition per vertex");
    return out;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    Subset seen = 0;
    for (Subset c : t.clusters[v]) {
      if (c == 0 || (seen & c) != 0) {
        out.push_back("clusters at vertex " + std::to_string(v) + " are not a partition");
      }
      seen |= c;
    }
    if (seen != t.markings_at(v)) {
      out.push_back("clusters at vertex " + std::to_string(v) + " do not cover its markings");
    }
  }
  return out;
}

std::vector<std::string> tree_notes(const StableTree& t) {
  std::vector<std::string> out;
  for (const auto& [m, e] : t.node_markings) {
    out.push_back("zero-weight marking " + std::to_string(m + 1) + " at node " + std::to_string(e) +
                  ": stratum not decided, excluded from vertex degrees");
  }
  return out;
}

Rational vertex_degree(const WeightData& w, const StableTree& t, std::size_t v) {
  if (v >= t.vertex_count()) throw DomainError("unknown vertex " + std::to_string(v));
  Rational d(2L * t.vertex_genus[v] - 2 + static_cast<long>(t.valence(v)));
  return d + w.sum_over(t.markings_at(v));
}

bool is_stable(const WeightData& w, const StableTree& t) {
  const auto problems = structural_problems(w, t);
  if (!problems.empty()) throw DomainError("malformed stable tree: " + problems.front());
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    if (vertex_degree(w, t, v).sign() <= 0) return false;
    for (Subset c : t.clusters[v]) {
      if (w.sum_over(c) > Rational(1)) return false;
    }
  }
  return true;
}

namespace {

std::vector<Subset> singletons(Subset s) {
  std::vector<Subset> out;
  for (std::size_t i : indices_of(s)) out.push_back(Subset{1} << i);
  return out;
}

}  // namespace

StableTree smooth_curve(const WeightData& w) {
  StableTree t;
  t.vertex_genus = {w.genus};
  t.marking_vertex.assign(w.size(), std::size_t{0});
  t.clusters = {singletons(full_subset(w.size()))};
  return t;
}

StableTree two_component_curve(const WeightData& w, Subset side, int side_genus) {
  StableTree t;
  t.vertex_genus = {side_genus, w.genus - side_genus};
  t.edges = {{0, 1}};
  t.marking_vertex.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) t.marking_vertex[i] = contains(side, i) ? 0 : 1;
  t.clusters = {singletons(side), singletons(full_subset(w.size()) & ~side)};
  return t;
}

std::string divisor_kind_name(DivisorKind k) {
  switch (k) {
    case DivisorKind::kNodal: return "nodal";
    case DivisorKind::kIrreducible: return "irreducible";
    case DivisorKind::kCoincidence: return "coincidence";
  }
  return "?";
}

StableTree divisor_curve(const WeightData& w, const BoundaryDivisor& d) {
  switch (d.kind) {
    case DivisorKind::kNodal:
      return two_component_curve(w, d.side, d.side_genus);
    case DivisorKind::kIrreducible: {
      StableTree t = smooth_curve(w);
      t.vertex_genus = {w.genus - 1};
      t.edges = {{0, 0}};
      return t;
    }
    case DivisorKind::kCoincidence: {
      StableTree t = smooth_curve(w);
      auto rest = singletons(full_subset(w.size()) & ~d.pair);
      rest.push_back(d.pair);
      std::sort(rest.begin(), rest.end(), [](Subset a, Subset b) {
        return std::countr_zero(a) < std::countr_zero(b);
      });
      t.clusters = {rest};
      return t;
    }
  }
  return {};
}

std::string describe(const BoundaryDivisor& d, std::size_t n) {
  switch (d.kind) {
    case DivisorKind::kNodal:
      return "nodal " + format_subset(d.side) + "[g=" + std::to_string(d.side_genus) + "] | " +
             format_subset(full_subset(n) & ~d.side) + "[g=" + std::to_string(d.other_genus) + "]";
    case DivisorKind::kIrreducible:
      return "irreducible node";
    case DivisorKind::kCoincidence:
      return "coincidence " + format_subset(d.pair);
  }
  return "?";
}

namespace {

Rational side_degree(const WeightData& w, Subset side, int genus) {
  return Rational(2L * genus - 1) + w.sum_over(side);
}

// (|S|, genus, S) order used to pick one orientation of {S, S^c}.
bool side_before(Subset a, int ga, Subset b, int gb) {
  if (subset_size(a) != subset_size(b)) return subset_size(a) < subset_size(b);
  if (ga != gb) return ga < gb;
  return subset_less(a, b);
}

}  // namespace

std::vector<BoundaryDivisor> enumerate_boundary_divisors(const WeightData& w) {
  require_valid(w);
  const std::size_t n = w.size();
  if (n > 24) throw DomainError("divisor enumeration limited to 24 markings");
  const Subset all = full_subset(n);

  std::vector<BoundaryDivisor> nodal;
  for (Subset s = 0;; ++s) {
    for (int g1 = 0; g1 <= w.genus; ++g1) {
      const Subset c = all & ~s;
      const int g2 = w.genus - g1;
      if (side_before(c, g2, s, g1)) continue;  // the other orientation is canonical
      if (side_degree(w, s, g1).sign() <= 0 || side_degree(w, c, g2).sign() <= 0) continue;
      nodal.push_back({DivisorKind::kNodal, s, g1, g2, 0});
    }
    if (s == all) break;
  }
  std::sort(nodal.begin(), nodal.end(), [](const BoundaryDivisor& a, const BoundaryDivisor& b) {
    return side_before(a.side, a.side_genus, b.side, b.side_genus);
  });

  std::vector<BoundaryDivisor> out = std::move(nodal);
  if (w.genus >= 1) out.push_back({DivisorKind::kIrreducible, 0, 0, 0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w[i].sign() > 0 && w[j].sign() > 0 && w[i] + w[j] <= Rational(1)) {
        out.push_back({DivisorKind::kCoincidence, 0, 0, 0, (Subset{1} << i) | (Subset{1} << j)});
      }
    }
  }
  return out;
}

ReductionCensus reduction_census(const WeightData& a, const WeightData& b) {
  if (!reduction_exists(a, b)) {
    throw DomainError("no reduction morphism " + format_weights(a) + " -> " + format_weights(b) +
                      ": weights must decrease pointwise");
  }
  const Subset all = full_subset(a.size());
  ReductionCensus census;
  for (const auto& d : enumerate_boundary_divisors(a)) {
    if (d.kind != DivisorKind::kNodal) continue;
    std::optional<BoundaryDivisor> collapsed;
    for (const auto& [side, g_side, g_other] :
         {std::tuple{d.side, d.side_genus, d.other_genus}, std::tuple{all & ~d.side, d.other_genus, d.side_genus}}) {
      if (g_side == 0 && side_degree(b, side, 0).sign() <= 0) {
        collapsed = BoundaryDivisor{DivisorKind::kNodal, side, g_side, g_other, 0};
        break;
      }
    }
    if (!collapsed) {
      census.surviving.push_back(d);
    } else if (subset_size(collapsed->side) >= 3) {
      census.contracted.push_back(*collapsed);
    } else {
      census.to_coincidence.push_back(*collapsed);
    }
  }
  return census;
}

std::vector<BoundaryDivisor> contracted_divisors(const WeightData& a, const WeightData& b) {
  return reduction_census(a, b).contracted;
}

}  // namespace hassett
