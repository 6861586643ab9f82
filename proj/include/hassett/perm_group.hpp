#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hassett {

/// One-line image notation on {0,..,n-1}: p[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

Permutation identity_permutation(std::size_t n);
/// Swaps a and b (0-based).
Permutation transposition(std::size_t n, std::size_t a, std::size_t b);
/// (p * q)[i] = p[q[i]]: apply q first.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);
bool is_permutation(const Permutation& p, std::size_t n);
/// Cycle notation with 1-based points, e.g. "(1 2)(4 5 6)".
std::string cycle_string(const Permutation& p);

/// A permutation group given by generators, with its exact order and
/// orbit partition.
struct PermGroup {
  std::size_t degree = 0;
  std::vector<Permutation> generators;       // sorted, no identities, no repeats
  mpz_class order = 1;
  std::vector<std::vector<std::size_t>> orbits;  // each ascending, ordered by first point

  /// True when the group is the full product of symmetric groups on its
  /// orbits, i.e. order = prod |orbit|!.
  bool is_orbit_symmetric_product() const;
  /// "S3 x S2", "trivial", or "order N" when not a product of symmetric groups.
  std::string label() const;
};

/// Order via Schreier-Sims (base and strong generating set). Throws
/// DomainError on a malformed generator.
PermGroup generate_group(const std::vector<Permutation>& generators, std::size_t n);

/// Every element, by breadth-first closure; sorted. Throws DomainError when
/// the group has more than `limit` elements.
std::vector<Permutation> enumerate_elements(const std::vector<Permutation>& generators, std::size_t n,
                                            std::size_t limit = 10'000'000);

mpz_class factorial(std::size_t n);

}  // namespace hassett
