#pragma once

// Integer view of a weight vector: every weight times the common
// denominator. Subset-sum hot loops run on int64 when that is safe.

#include <cstdint>
#include <vector>

#include "hassett/rational.hpp"

namespace hassett::detail {

struct ScaledWeights {
  bool fits = false;             // false: fall back to Rational arithmetic
  std::vector<std::int64_t> num; // a_i * D
  std::int64_t one = 1;          // D
};

inline ScaledWeights scale_weights(const std::vector<Rational>& w) {
  ScaledWeights out;
  mpz_class d = 1;
  for (const auto& x : w) d = lcm(d, x.denominator());
  // n * D and every partial sum must stay far from overflow.
  const mpz_class limit = mpz_class(1) << 40;
  if (d > limit) return out;
  out.one = d.get_si();
  for (const auto& x : w) {
    mpz_class v = x.numerator() * (d / x.denominator());
    if (abs(v) > limit) return ScaledWeights{};
    out.num.push_back(v.get_si());
  }
  out.fits = w.size() < (std::size_t{1} << 20);
  return out;
}

}  // namespace hassett::detail
