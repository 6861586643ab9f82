#include <doctest.h>

#include "hassett/errors.hpp"
#include "hassett/perm_group.hpp"
#include "oracles.hpp"

using namespace hassett;

namespace {

Permutation random_perm(oracle::Gen& gen, std::size_t n) {
  const auto p = gen.shuffled(n);
  return Permutation(p.begin(), p.end());
}

Permutation cycle(std::size_t n, std::initializer_list<std::size_t> points) {
  Permutation p = identity_permutation(n);
  std::vector<std::size_t> v(points);
  for (std::size_t k = 0; k < v.size(); ++k) p[v[k]] = static_cast<std::uint32_t>(v[(k + 1) % v.size()]);
  return p;
}

}  // namespace

TEST_CASE("basic permutation algebra") {
  const Permutation a = transposition(4, 0, 1), b = cycle(4, {1, 2, 3});
  CHECK(cycle_string(a) == "(1 2)");
  CHECK(cycle_string(b) == "(2 3 4)");
  CHECK(cycle_string(identity_permutation(3)) == "()");
  CHECK(compose(a, b)[1] == 2);  // b sends 1 to 2, a fixes 2
  CHECK(is_identity(compose(b, inverse(b))));
  CHECK(is_permutation(b, 4));
  CHECK_FALSE(is_permutation({0, 0, 1}, 3));
  CHECK_FALSE(is_permutation({0, 1}, 3));
}

TEST_CASE("small orders") {
  CHECK(generate_group({transposition(5, 0, 1)}, 5).order == 2);
  std::vector<Permutation> adjacent;
  for (std::size_t k = 0; k + 1 < 5; ++k) adjacent.push_back(transposition(5, k, k + 1));
  const PermGroup s5 = generate_group(adjacent, 5);
  CHECK(s5.order == 120);
  CHECK(s5.label() == "S5");
  CHECK(generate_group({}, 4).order == 1);
  CHECK(generate_group({}, 4).label() == "trivial");
  CHECK(generate_group({identity_permutation(3)}, 3).generators.empty());

  const PermGroup g = generate_group(
      {transposition(6, 0, 1), transposition(6, 4, 5), transposition(6, 3, 4), transposition(6, 3, 5)}, 6);
  CHECK(g.order == 12);
  CHECK(g.label() == "S3 x S2");
  CHECK(g.orbits == std::vector<std::vector<std::size_t>>{{0, 1}, {2}, {3, 4, 5}});

  const PermGroup c5 = generate_group({cycle(5, {0, 1, 2, 3, 4})}, 5);
  CHECK(c5.order == 5);
  CHECK_FALSE(c5.is_orbit_symmetric_product());
  CHECK(c5.label() == "order 5");

  CHECK(factorial(10) == 3628800);
  CHECK_THROWS_AS(generate_group({{0, 0, 1}}, 3), DomainError);
  CHECK_THROWS_AS(generate_group({{0, 1}}, 3), DomainError);
}

TEST_CASE("large degree symmetric and alternating groups") {
  const std::size_t n = 20;
  const PermGroup sn = generate_group({transposition(n, 0, 1), cycle(n, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13,
                                                                          14, 15, 16, 17, 18, 19})},
                                      n);
  CHECK(sn.order == factorial(n));
  std::vector<Permutation> three_cycles;
  for (std::size_t k = 2; k < 12; ++k) three_cycles.push_back(cycle(12, {0, 1, k}));
  CHECK(generate_group(three_cycles, 12).order == factorial(12) / 2);
}

TEST_CASE("Schreier-Sims order equals BFS closure") {
  oracle::Gen gen(401);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 7));
    std::vector<Permutation> gens;
    const int count = gen.uniform(0, 3);
    for (int k = 0; k < count; ++k) {
      if (gen.coin() && n >= 2) {
        const auto p = gen.shuffled(n);
        gens.push_back(transposition(n, p[0], p[1]));
      } else {
        gens.push_back(random_perm(gen, n));
      }
    }
    const PermGroup g = generate_group(gens, n);
    const auto elements = enumerate_elements(gens, n);
    CHECK(g.order == elements.size());
    CHECK(factorial(n) % g.order == 0);
    // Closed under composition with every generator.
    for (const auto& x : gens) {
      for (std::size_t e = 0; e < elements.size(); e += 7) {
        CHECK(std::binary_search(elements.begin(), elements.end(), compose(x, elements[e])));
      }
    }
  }
}

TEST_CASE("orbit product label matches the order") {
  oracle::Gen gen(402);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(2, 8));
    std::vector<Permutation> gens;
    for (int k = gen.uniform(0, 4); k > 0; --k) {
      const auto p = gen.shuffled(n);
      gens.push_back(transposition(n, p[0], p[1]));
    }
    const PermGroup g = generate_group(gens, n);
    // Transpositions always generate the full symmetric group on each orbit.
    CHECK(g.is_orbit_symmetric_product());
    mpz_class product = 1;
    for (const auto& orbit : g.orbits) product *= factorial(orbit.size());
    CHECK(product == g.order);
  }
}
