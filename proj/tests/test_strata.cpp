#include <doctest.h>

#include <set>
#include <tuple>

#include "hassett/errors.hpp"
#include "hassett/strata.hpp"
#include "oracles.hpp"

using namespace hassett;

namespace {

WeightData W(int g, const std::string& text) { return {g, parse_weight_list(text)}; }

std::size_t count_kind(const std::vector<BoundaryDivisor>& ds, DivisorKind k) {
  return static_cast<std::size_t>(std::count_if(ds.begin(), ds.end(), [&](const auto& d) { return d.kind == k; }));
}

std::vector<Subset> sides(const std::vector<BoundaryDivisor>& ds) {
  std::vector<Subset> out;
  for (const auto& d : ds) out.push_back(d.side);
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

// Nodal divisors of any genus straight from the definition: unordered
// pairs {(S, g1), (S^c, g - g1)} with both sides of positive degree.
std::size_t nodal_oracle(const WeightData& w) {
  const Subset all = full_subset(w.size());
  std::set<std::pair<Subset, int>> seen;
  std::size_t count = 0;
  for (Subset s = 0; s <= all; ++s) {
    for (int g1 = 0; g1 <= w.genus; ++g1) {
      const Rational d1 = Rational(2 * g1 - 2 + 1) + oracle::sum_of(w.weights, s);
      const Rational d2 = Rational(2 * (w.genus - g1) - 2 + 1) + oracle::sum_of(w.weights, all & ~s);
      if (d1 <= Rational(0) || d2 <= Rational(0)) continue;
      const auto key = std::min(std::pair{s, g1}, std::pair{all & ~s, w.genus - g1});
      if (seen.insert(key).second) ++count;
    }
    if (s == all) break;
  }
  return count;
}

std::size_t coincidence_oracle(const WeightData& w) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[i] > Rational(0) && w[j] > Rational(0) && w[i] + w[j] <= Rational(1)) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("vertex degrees and stability") {
  const WeightData a21 = W(0, "1/2,1/2,1/2,1,1");
  const WeightData a12 = W(0, "1/3,1/3,1/3,2/3,1");
  CHECK(vertex_degree(W(0, "1,1,1,1"), smooth_curve(W(0, "1,1,1,1")), 0) == Rational(2));

  const StableTree t = two_component_curve(a12, subset_of({1, 2, 3}), 0);
  CHECK(structural_problems(a12, t).empty());
  CHECK(vertex_degree(a12, t, 0) == Rational(0));
  CHECK_FALSE(is_stable(a12, t));

  const StableTree u = two_component_curve(a21, subset_of({4, 5}), 0);
  CHECK(vertex_degree(a21, u, 0) == Rational(1));
  CHECK(vertex_degree(a21, u, 1) == Rational(1, 2));
  CHECK(is_stable(a21, u));
  CHECK(is_stable(W(0, "1,1,1,1,1"), smooth_curve(W(0, "1,1,1,1,1"))));
}

TEST_CASE("malformed trees") {
  const WeightData w = W(1, "1,1,1");
  StableTree t = smooth_curve(w);
  CHECK(structural_problems(w, t).empty());
  t.vertex_genus = {0};
  CHECK_FALSE(structural_problems(w, t).empty());
  CHECK_THROWS_AS(is_stable(w, t), DomainError);

  StableTree split = two_component_curve(w, subset_of({1}), 0);
  split.edges.clear();
  CHECK_FALSE(structural_problems(w, split).empty());

  // Positive weight on a node is not allowed; zero weight is recorded.
  const WeightData z = W(1, "1/2,0");
  StableTree n = smooth_curve(z);
  n.vertex_genus = {0};
  n.edges = {{0, 0}};
  n.marking_vertex[1] = std::nullopt;
  n.clusters = {{subset_of({1})}};
  n.node_markings = {{1, 0}};
  CHECK(structural_problems(z, n).empty());
  CHECK_FALSE(tree_notes(n).empty());
  n.marking_vertex[0] = std::nullopt;
  n.clusters = {{}};
  n.node_markings = {{0, 0}, {1, 0}};
  CHECK_FALSE(structural_problems(z, n).empty());
}

TEST_CASE("coincidence classes") {
  const WeightData w = W(0, "1/3,1/3,1/3,2/3,1");
  StableTree t = smooth_curve(w);
  t.clusters = {{subset_of({1, 2, 3}), subset_of({4}), subset_of({5})}};
  CHECK(is_stable(w, t));
  t.clusters = {{subset_of({1, 2, 3, 4}), subset_of({5})}};
  CHECK_FALSE(is_stable(w, t));
}

TEST_CASE("divisor lists of the five-point example") {
  const auto classical = enumerate_boundary_divisors(W(0, "1,1,1,1,1"));
  CHECK(count_kind(classical, DivisorKind::kNodal) == 10);
  CHECK(count_kind(classical, DivisorKind::kCoincidence) == 0);

  const auto a12 = enumerate_boundary_divisors(W(0, "1/3,1/3,1/3,2/3,1"));
  CHECK(count_kind(a12, DivisorKind::kNodal) == 3);
  CHECK(count_kind(a12, DivisorKind::kCoincidence) == 6);
  for (const auto& d : a12) {
    if (d.kind == DivisorKind::kNodal) {
      const Subset small = subset_size(d.side) == 2 ? d.side : full_subset(5) & ~d.side;
      CHECK(contains(small, 4));
    }
  }

  const auto a21 = enumerate_boundary_divisors(W(0, "1/2,1/2,1/2,1,1"));
  CHECK(count_kind(a21, DivisorKind::kNodal) == 7);
  CHECK(count_kind(a21, DivisorKind::kCoincidence) == 3);
  CHECK(count_kind(enumerate_boundary_divisors(W(0, "1/3,1/3,1/3,1/3,1")), DivisorKind::kNodal) == 0);
}

TEST_CASE("classical nodal counts against partition enumeration") {
  for (std::size_t n = 4; n <= 12; ++n) {
    const WeightData w{0, std::vector<Rational>(n, Rational(1))};
    const std::size_t expected = (std::size_t{1} << (n - 1)) - n - 1;
    CHECK(oracle::two_block_partitions(n).size() == expected);
    CHECK(count_kind(enumerate_boundary_divisors(w), DivisorKind::kNodal) == expected);
  }
}

TEST_CASE("random divisor counts against the oracles") {
  oracle::Gen gen(301);
  for (int trial = 0; trial < 300; ++trial) {
    const int g = gen.uniform(0, 2);
    const std::size_t n = static_cast<std::size_t>(gen.uniform(g == 0 ? 3 : 1, 9));
    const WeightData w = gen.weights(g, n, 6, g > 0);
    CAPTURE(format_weights(w));
    const auto ds = enumerate_boundary_divisors(w);
    CHECK(count_kind(ds, DivisorKind::kNodal) == nodal_oracle(w));
    if (g == 0) CHECK(count_kind(ds, DivisorKind::kNodal) == oracle::genus0_nodal_count(w));
    CHECK(count_kind(ds, DivisorKind::kIrreducible) == (g >= 1 ? 1U : 0U));
    CHECK(count_kind(ds, DivisorKind::kCoincidence) == coincidence_oracle(w));
    for (const auto& d : ds) {
      const StableTree t = divisor_curve(w, d);
      CHECK(structural_problems(w, t).empty());
      CHECK(is_stable(w, t));
    }
  }
}

TEST_CASE("degrees add up to 2g-2 plus the total weight") {
  oracle::Gen gen(302);
  for (int trial = 0; trial < 200; ++trial) {
    const int g = gen.uniform(0, 3);
    const std::size_t n = static_cast<std::size_t>(gen.uniform(g == 0 ? 3 : 1, 8));
    const WeightData w = gen.weights(g, n, 5, g > 0);
    for (const auto& d : enumerate_boundary_divisors(w)) {
      const StableTree t = divisor_curve(w, d);
      Rational total;
      for (std::size_t v = 0; v < t.vertex_count(); ++v) total += vertex_degree(w, t, v);
      CHECK(total == Rational(2 * g - 2) + w.total());
    }
  }
}

TEST_CASE("divisor counts do not depend on the labelling") {
  oracle::Gen gen(303);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightData w = gen.weights(gen.uniform(0, 1), static_cast<std::size_t>(gen.uniform(4, 8)), 6);
    const WeightData p = w.relabeled(gen.shuffled(w.size()));
    const auto a = enumerate_boundary_divisors(w), b = enumerate_boundary_divisors(p);
    for (auto k : {DivisorKind::kNodal, DivisorKind::kIrreducible, DivisorKind::kCoincidence}) {
      CHECK(count_kind(a, k) == count_kind(b, k));
    }
  }
}

TEST_CASE("contraction census of the five-point chain") {
  const WeightData m05 = W(0, "1,1,1,1,1");
  const WeightData a21 = W(0, "1/2,1/2,1/2,1,1");
  const WeightData a12 = W(0, "1/3,1/3,1/3,2/3,1");
  const WeightData a11 = W(0, "1/3,1/3,1/3,1/3,1");

  const auto rho1 = reduction_census(a21, a12);
  CHECK(sides(rho1.contracted) == std::vector<Subset>{subset_of({1, 2, 3})});
  CHECK(sides(rho1.to_coincidence) == std::vector<Subset>{subset_of({1, 4}), subset_of({2, 4}), subset_of({3, 4})});
  CHECK(rho1.surviving.size() == 3);

  const auto rho2 = contracted_divisors(a12, a11);
  CHECK(sides(rho2) == std::vector<Subset>{subset_of({1, 2, 4}), subset_of({1, 3, 4}), subset_of({2, 3, 4})});

  CHECK(contracted_divisors(m05, a21).empty());
  CHECK(reduction_census(m05, a21).to_coincidence.size() == 3);
  CHECK_THROWS_AS(reduction_census(a12, a21), DomainError);
}

TEST_CASE("census partitions the nodal divisors") {
  oracle::Gen gen(304);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(4, 8));
    const WeightData a = gen.weights(0, n, 4);
    WeightData b = a;
    for (auto& x : b.weights) x = x * Rational(gen.uniform(2, 4), 4);
    if (!validate(b).ok) continue;
    const auto census = reduction_census(a, b);
    CHECK(census.contracted.size() + census.to_coincidence.size() + census.surviving.size() ==
          count_kind(enumerate_boundary_divisors(a), DivisorKind::kNodal));
    for (const auto& d : census.contracted) {
      CHECK(subset_size(d.side) >= 3);
      CHECK(oracle::sum_of(b.weights, d.side) <= Rational(1));
      CHECK(oracle::sum_of(a.weights, d.side) > Rational(1));
    }
    for (const auto& d : census.to_coincidence) {
      CHECK(subset_size(d.side) == 2);
      CHECK(oracle::sum_of(b.weights, d.side) <= Rational(1));
    }
  }
}
