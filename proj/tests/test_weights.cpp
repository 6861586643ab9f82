#include <doctest.h>

#include "hassett/errors.hpp"
#include "hassett/weights.hpp"
#include "oracles.hpp"

using namespace hassett;

namespace {

WeightData W(int g, const std::string& text) { return {g, parse_weight_list(text)}; }

std::vector<Subset> sets(std::initializer_list<std::initializer_list<int>> lists) {
  std::vector<Subset> out;
  for (auto l : lists) out.push_back(subset_of(l));
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

Subset permute_subset(Subset s, const std::vector<std::size_t>& slots) {
  // w.relabeled(slots)[t] = w[slots[t]], so set S of w corresponds to {t : slots[t] in S}.
  Subset out = 0;
  for (std::size_t t = 0; t < slots.size(); ++t) {
    if (contains(s, slots[t])) out |= Subset{1} << t;
  }
  return out;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(W(0, "1,1,1,1,1")).ok);
  const auto r = validate(W(0, "1/3,1/3,1/3"));
  REQUIRE_FALSE(r.ok);
  CHECK(r.violations.front().find("2g-2+sum = -1 not > 0") != std::string::npos);
  CHECK(validate(W(1, "1/3,0")).ok);
  CHECK_FALSE(validate(W(0, "1/5,1/5,1/5,1/5,1/5")).ok);
  CHECK_FALSE(validate(W(0, "3/2,1,1")).ok);
  CHECK_FALSE(validate(W(0, "-1/2,1,1,1")).ok);
  CHECK_FALSE(validate({-1, {Rational(1)}}).ok);
  CHECK(validate({2, {}}).ok);
  CHECK_FALSE(validate({1, {}}).ok);
  CHECK_THROWS_AS(require_valid(W(0, "1/3,1/3,1/3")), DomainError);
}

TEST_CASE("chamber signature examples") {
  CHECK(chamber_signature(W(0, "1,1,1,1,1")).small_sets.empty());
  CHECK(chamber_signature(W(0, "1/3,1/3,1/3,2/3,1")).small_sets ==
        sets({{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}, {1, 2, 3}}));
  CHECK(chamber_signature(W(0, "1/2,1/2,1/2,1,1")).small_sets == sets({{1, 2}, {1, 3}, {2, 3}}));
  CHECK(wall_sets(W(0, "1/3,1/3,1/3,2/3,1")) == sets({{1, 4}, {2, 4}, {3, 4}, {1, 2, 3}}));
}

TEST_CASE("equivalences and reductions") {
  const WeightData a21 = W(0, "1/2,1/2,1/2,1,1");
  const WeightData a12 = W(0, "1/3,1/3,1/3,2/3,1");
  const WeightData classical = W(0, "1,1,1,1,1");
  CHECK(fine_equivalent(a12, a12));
  // (1,1,1-e,e,..) and (1-e,1-e,1-e,e,..) never share a chamber: {1,4} sums
  // to 1+e in the first and exactly 1 in the second.
  for (int d = 3; d <= 9; ++d) {
    const Rational e(1, d);
    const Rational f = Rational(1) - e;
    const WeightData x{0, {1, 1, f, e, e, e}};
    const WeightData y{0, {f, f, f, e, e, e}};
    CHECK_FALSE(fine_equivalent(x, y));
    CHECK(oracle::sum_of(x.weights, subset_of({1, 4})) > Rational(1));
    CHECK(oracle::sum_of(y.weights, subset_of({1, 4})) == Rational(1));
  }
  CHECK_FALSE(fine_equivalent(a21, a12));
  CHECK_THROWS_AS(fine_equivalent(a21, W(0, "1,1,1,1")), DomainError);
  CHECK_THROWS_AS(fine_equivalent(a21, W(1, "1/2,1/2,1/2,1,1")), DomainError);

  CHECK(coarse_equivalent_genus0(classical, a21));
  CHECK_FALSE(coarse_equivalent_genus0(a21, a12));
  CHECK_THROWS_AS(coarse_equivalent_genus0(W(1, "1,1"), W(1, "1,1")), DomainError);

  CHECK(reduction_exists(a21, a12));
  CHECK(reduction_exists(a12, a12));
  CHECK_FALSE(reduction_exists(a12, a21));

  const auto same = reduction_exists_up_to_equivalence(a12, a12, EquivalenceMode::kFine);
  CHECK(same.exists);
  CHECK(fine_equivalent(*same.witness, a12));
  CHECK_FALSE(reduction_exists_up_to_equivalence(a12, classical, EquivalenceMode::kFine).exists);

  // Y_{n-4}[6] onto A_{2,1}[6] with the weight-one slots moved onto the heavy markings.
  const auto step = reduction_exists_up_to_equivalence(W(0, "1,1,3/4,1/4,1/4,1/4"), W(0, "1,1,1/3,1/3,1/3,1/3"),
                                                     EquivalenceMode::kFine);
  REQUIRE(step.exists);
  CHECK(reduction_exists(W(0, "1,1,3/4,1/4,1/4,1/4"), *step.witness));
  CHECK(fine_equivalent(*step.witness, W(0, "1,1,1/3,1/3,1/3,1/3")));
}

TEST_CASE("forgetful morphisms") {
  CHECK_FALSE(forgetful_defined(W(1, "1/3,0"), subset_of({2})));
  CHECK(forgetful_defined(W(1, "1/3,0"), subset_of({1})));
  CHECK(forgetful_defined(W(2, "0,0,1/7"), subset_of({1})));
  CHECK(forgetful_defined(W(0, "1,1,1,1,1"), subset_of({1, 2, 3})));
  CHECK_FALSE(forgetful_defined(W(0, "1,1,1,1,1"), subset_of({1, 2})));
  CHECK_THROWS_AS(forgetful_defined(W(0, "1,1,1,1,1"), 0), DomainError);
}

TEST_CASE("signature equals full enumeration, n <= 12") {
  oracle::Gen gen(101);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(3, 12));
    const WeightData w = gen.weights(gen.uniform(0, 2), n, gen.uniform(2, 9), gen.coin());
    CAPTURE(format_weights(w));
    CHECK(chamber_signature(w).small_sets == oracle::small_sets(w));
  }
}

TEST_CASE("signature monotone under pointwise decrease") {
  oracle::Gen gen(102);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(3, 10));
    const WeightData a = gen.weights(0, n, 8);
    WeightData b = a;
    for (auto& x : b.weights) x = x * Rational(gen.uniform(1, 6), 6);
    if (!validate(b).ok) continue;
    REQUIRE(reduction_exists(a, b));
    const auto big = chamber_signature(b);
    for (Subset s : chamber_signature(a).small_sets) CHECK(big.contains(s));
  }
}

TEST_CASE("signature is permutation equivariant") {
  oracle::Gen gen(103);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(3, 10));
    const WeightData w = gen.weights(0, n, 7);
    const auto slots = gen.shuffled(n);
    std::vector<Subset> moved;
    for (Subset s : chamber_signature(w).small_sets) moved.push_back(permute_subset(s, slots));
    std::sort(moved.begin(), moved.end(), subset_less);
    CHECK(chamber_signature(w.relabeled(slots)).small_sets == moved);
  }
}

TEST_CASE("reduction is a preorder") {
  oracle::Gen gen(104);
  int chains = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(3, 8));
    const WeightData a = gen.weights(0, n, 6);
    CHECK(reduction_exists(a, a));
    WeightData b = a, c = a;
    for (std::size_t i = 0; i < n; ++i) {
      b.weights[i] = a[i] * Rational(gen.uniform(3, 4), 4);
      c.weights[i] = b.weights[i] * Rational(gen.uniform(3, 4), 4);
    }
    if (!validate(b).ok || !validate(c).ok) continue;
    ++chains;
    CHECK(reduction_exists(a, b));
    CHECK(reduction_exists(b, c));
    CHECK(reduction_exists(a, c));
    CHECK(reduction_exists(c, a) == (a == c));
  }
  CHECK(chains > 100);
}

TEST_CASE("chamber conditions describe the chamber") {
  oracle::Gen gen(105);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(4, 8));
    const WeightData b = gen.weights(0, n, 6);
    for (auto mode : {EquivalenceMode::kFine, EquivalenceMode::kCoarse}) {
      const LinearSystem sys = chamber_conditions(b, mode);
      CHECK(oracle::holds_all(sys, b.weights));
      const auto r = solve_feasibility(sys);
      REQUIRE(r.feasible);
      REQUIRE(oracle::holds_all(sys, r.witness));
      const WeightData x{0, r.witness};
      CHECK(validate(x).ok);
      if (mode == EquivalenceMode::kFine) {
        CHECK(fine_equivalent(x, b));
      } else {
        CHECK(coarse_equivalent_genus0(x, b));
      }
    }
  }
}

TEST_CASE("reduction up to equivalence agrees with its witness") {
  oracle::Gen gen(106);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(4, 7));
    const WeightData a = gen.weights(0, n, 5);
    const WeightData b = gen.weights(0, n, 5);
    const auto r = reduction_exists_up_to_equivalence(a, b, EquivalenceMode::kFine);
    if (reduction_exists(a, b)) CHECK(r.exists);
    if (!r.exists) continue;
    ++found;
    CHECK(reduction_exists(a, *r.witness));
    CHECK(fine_equivalent(*r.witness, b));
  }
  CHECK(found > 10);
}
