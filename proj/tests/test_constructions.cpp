#include <doctest.h>

#include "hassett/constructions.hpp"
#include "hassett/errors.hpp"
#include "oracles.hpp"

#include <set>

using namespace hassett;

namespace {

WeightData W(int g, const std::string& text) { return {g, parse_weight_list(text)}; }

std::vector<std::size_t> step_sizes(const BlowupSchedule& s) {
  std::vector<std::size_t> out;
  for (const auto& step : s.steps) out.push_back(step.centers.size());
  return out;
}

// Slot order that moves the weight-one marking of A_{1,1} to `heavy`.
std::vector<std::size_t> gen_slots(std::size_t heavy, std::size_t n) {
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < n; ++i) slots.push_back(i == heavy ? n - 1 : (i < heavy ? i : i - 1));
  return slots;
}

}  // namespace

TEST_CASE("family notation") {
  for (int n = 5; n <= 9; ++n) {
    for (const auto& p : all_families(n)) {
      CHECK_FALSE(parameter_problem(p).has_value());
      CHECK(parse_family(format_family(p)) == p);
    }
  }
  CHECK(format_family(FamilyParams::kapranov(1, 2, 5)) == "kapranov:r=1,s=2,n=5");
  CHECK(parameter_problem(FamilyParams::kapranov(0, 1, 6)).has_value());
  CHECK(parameter_problem(FamilyParams::sym(4, 6)).has_value());
  CHECK(parameter_problem(FamilyParams::keel(4, 6)).has_value());
  CHECK_THROWS_AS(require_parameters(FamilyParams::keel(-1, 6)), DomainError);
  CHECK_THROWS_AS(parse_family("kapranov:r=1,n=5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("blowup:k=1,n=5"), std::invalid_argument);
}

TEST_CASE("Kapranov weights") {
  CHECK(kapranov_weights(1, 2, 5) == W(0, "1/3,1/3,1/3,2/3,1"));
  CHECK(kapranov_weights(2, 1, 5) == W(0, "1/2,1/2,1/2,1,1"));
  CHECK(kapranov_weights(1, 2, 6) == W(0, "1/4,1/4,1/4,1/4,1/2,1"));
}

TEST_CASE("condition systems of the fixed examples") {
  const LinearSystem x1 = family_conditions(FamilyParams::sym(1, 6));
  CHECK(oracle::holds_all(x1, W(0, "1/3,1/3,1/3,1/3,1/3,1").weights));
  CHECK_FALSE(oracle::holds_all(x1, W(0, "1/2,1/2,1/2,1/2,1/2,1").weights));  // a 2-set of the first five at 1
  CHECK_FALSE(oracle::holds_all(x1, W(0, "1/5,1/5,1/5,1/5,1/5,1").weights));  // 4-sets must exceed 1

  const LinearSystem y0 = family_conditions(FamilyParams::keel(0, 6));
  CHECK(oracle::holds_all(y0, W(0, "3/4,3/4,3/4,1/16,1/16,1/16").weights));
  CHECK_FALSE(oracle::holds_all(y0, W(0, "3/4,3/4,3/4,1/8,1/8,1/8").weights));  // 3/4 + 3/8 > 1
  CHECK_FALSE(oracle::holds_all(y0, W(0, "1/2,1/2,3/4,1/16,1/16,1/16").weights));  // heavy pair at 1

  const LinearSystem y2 = family_conditions(FamilyParams::keel(2, 6));
  CHECK(oracle::holds_all(y2, W(0, "3/4,3/4,3/4,1/4,1/4,1/4").weights));
  // epsilon = 1/3 sits on the walls a_i + a_j = 1 and still meets every inequality as written.
  CHECK(oracle::holds_all(y2, W(0, "2/3,2/3,2/3,1/3,1/3,1/3").weights));
}

TEST_CASE("representatives satisfy their own conditions and classify back") {
  for (int n = 5; n <= 8; ++n) {
    for (const auto& p : all_families(n)) {
      CAPTURE(format_family(p));
      const WeightData rep = representative_weights(p);
      CHECK(validate(rep).ok);
      CHECK(oracle::holds_all(family_conditions(p), rep.weights));
      CHECK(representative_weights(p) == rep);

      const auto mine = classify_as(rep, p);
      REQUIRE(mine.has_value());
      CHECK(oracle::holds_all(family_conditions(p), rep.relabeled(mine->slots).weights));

      const auto first = classify(rep);
      REQUIRE(first.has_value());
      CHECK(oracle::holds_all(family_conditions(first->family), rep.relabeled(first->slots).weights));
      const auto all = classify_all(rep);
      CHECK(std::any_of(all.begin(), all.end(), [&](const Classification& c) { return c.family == p; }));
    }
  }
}

TEST_CASE("classification examples") {
  const auto a = classify(W(0, "1/3,1/3,1/3,2/3,1"));
  REQUIRE(a.has_value());
  CHECK(a->family == FamilyParams::kapranov(1, 2, 5));
  const auto b = classify(W(0, "1/4,1/4,1/4,1/4,2/4,1"));
  REQUIRE(b.has_value());
  CHECK(b->family == FamilyParams::kapranov(1, 2, 6));
  CHECK_FALSE(classify(W(0, "1,1,1,1,1")).has_value());
  const auto coarse = classify(W(0, "1,1,1,1,1"), EquivalenceMode::kCoarse);
  REQUIRE(coarse.has_value());
  CHECK(coarse->family == FamilyParams::kapranov(2, 1, 5));

  // Relabelled input comes back with the slot permutation.
  const auto c = classify(W(0, "1,1/3,2/3,1/3,1/3"));
  REQUIRE(c.has_value());
  CHECK(c->family == FamilyParams::kapranov(1, 2, 5));
  CHECK(W(0, "1,1/3,2/3,1/3,1/3").relabeled(c->slots) == W(0, "1/3,1/3,1/3,2/3,1"));
  CHECK_THROWS_AS(classify(W(1, "1,1")), DomainError);
}

TEST_CASE("Kapranov chain reduces step by step") {
  for (int n = 5; n <= 7; ++n) {
    std::vector<WeightData> chain;
    for (const auto& p : all_families(n)) {
      if (p.kind == FamilyKind::kKapranov) chain.push_back(kapranov_weights(p.r, p.s, n));
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      CAPTURE(format_weights(chain[k + 1]));
      CHECK(reduction_exists_up_to_equivalence(chain[k + 1], chain[k], EquivalenceMode::kFine).exists);
      CHECK(reduction_exists_up_to_equivalence(chain[k + 1], chain.front(), EquivalenceMode::kFine).exists);
    }
  }
}

TEST_CASE("factoring through Kapranov") {
  const auto a = factors_kapranov(W(0, "1/3,1/3,1/3,2/3,1"));
  CHECK(a.factors);
  REQUIRE(a.witness.has_value());
  REQUIRE(a.source.has_value());
  CHECK(coarse_equivalent_genus0(*a.source, W(0, "1/3,1/3,1/3,2/3,1")));
  CHECK(reduction_exists(*a.source, *a.witness));
  CHECK(coarse_equivalent_genus0(*a.witness, W(0, "1/3,1/3,1/3,1/3,1").relabeled(gen_slots(*a.heavy_slot, 5))));

  CHECK_FALSE(factors_kapranov(representative_weights(FamilyParams::keel(0, 5))).factors);
  for (int n = 5; n <= 7; ++n) {
    for (int h = n - 4; h <= 2 * n - 9; ++h) {
      CAPTURE(n);
      CAPTURE(h);
      CHECK(factors_kapranov(representative_weights(FamilyParams::keel(h, n))).factors);
    }
  }
  CHECK_THROWS_AS(factors_kapranov(W(1, "1,1,1,1,1")), DomainError);
  CHECK_THROWS_AS(factors_kapranov(W(0, "1,1,1,1")), DomainError);
}

TEST_CASE("factoring is a chamber invariant") {
  oracle::Gen gen(601);
  for (int trial = 0; trial < 40; ++trial) {
    const WeightData w = gen.weights(0, static_cast<std::size_t>(gen.uniform(5, 6)), 5);
    const auto other = solve_feasibility(chamber_conditions(w, EquivalenceMode::kFine));
    REQUIRE(other.feasible);
    const WeightData twin{0, other.witness};
    REQUIRE(fine_equivalent(w, twin));
    CHECK(factors_kapranov(w).factors == factors_kapranov(twin).factors);
  }
}

TEST_CASE("blow-up schedules") {
  const auto k5 = blowup_schedule(Construction::kKapranov, 5);
  CHECK(k5.ambient == "P^2");
  CHECK(step_sizes(k5) == std::vector<std::size_t>{3, 1});
  CHECK(k5.steps[1].centers[0].points == std::vector<int>{4});

  CHECK(step_sizes(blowup_schedule(Construction::kKapranov, 6)) == std::vector<std::size_t>{10, 4, 1});
  CHECK(step_sizes(blowup_schedule(Construction::kKapranovSym, 6)) == std::vector<std::size_t>{5, 10});

  const auto c5 = blowup_schedule(Construction::kKeel, 5);
  CHECK(c5.ambient == "(P^1)^2");
  CHECK(step_sizes(c5) == std::vector<std::size_t>{3});
  for (const auto& ctr : c5.steps[0].centers) CHECK(ctr.dimension == 0);

  // Kapranov's construction blows up the span of every subset of
  // p1..p_{n-1} with 1 to n-4 points, each exactly once.
  for (int n = 5; n <= 9; ++n) {
    std::set<std::vector<int>> seen;
    std::size_t total = 0;
    for (const auto& step : blowup_schedule(Construction::kKapranov, n).steps) {
      for (const auto& c : step.centers) {
        ++total;
        seen.insert(c.points);
        CHECK(c.points.size() >= 1);
        CHECK(c.points.size() <= static_cast<std::size_t>(n - 4));
        CHECK(c.points.back() <= n - 1);
      }
    }
    const auto m = static_cast<std::size_t>(n - 1);
    CHECK(total == (std::size_t{1} << m) - 2 - m - m * (m - 1) / 2);
    CHECK(seen.size() == total);
  }
  CHECK_THROWS_AS(blowup_schedule(Construction::kKeel, 4), DomainError);
  CHECK(parse_construction("con2") == Construction::kKeel);
  CHECK_THROWS_AS(parse_construction("nope"), std::invalid_argument);
}

TEST_CASE("Keel steps reduce to A_{2,1}") {
  const auto r5 = verify_keel_chain(5);
  CHECK(r5.passed);
  CHECK(r5.second_phase_empty);
  CHECK(r5.reductions.size() == 1);
  for (int n = 6; n <= 7; ++n) {
    const auto r = verify_keel_chain(n);
    CAPTURE(n);
    CHECK(r.passed);
    CHECK(r.reductions.size() == static_cast<std::size_t>(n - 4));
    REQUIRE(r.y_first_second_phase_is_a22.has_value());
    CHECK(*r.y_first_second_phase_is_a22);
    REQUIRE(r.a22_witness.has_value());
    CHECK(oracle::holds_all(family_conditions(FamilyParams::keel(n - 3, n)), r.a22_witness->weights));
    for (const auto& c : r.reductions) {
      REQUIRE(c.witness.has_value());
      REQUIRE(c.target.has_value());
      CHECK(reduction_exists(c.source, *c.witness));
      if (c.mode == EquivalenceMode::kFine) {
        CHECK(oracle::small_sets(*c.witness) == oracle::small_sets(*c.target));
      } else {
        CHECK(coarse_equivalent_genus0(*c.witness, *c.target));
      }
    }
  }
}
