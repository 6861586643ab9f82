#include "hassett/weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hassett/errors.hpp"
#include "scaled.hpp"

namespace hassett {

Rational WeightData::total() const {
  Rational s;
  for (const auto& a : weights) s += a;
  return s;
}

Rational WeightData::sum_over(Subset s) const {
  Rational out;
  for (std::size_t i : indices_of(s)) out += weights.at(i);
  return out;
}

Subset WeightData::positive_support() const {
  Subset s = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].sign() > 0) s |= Subset{1} << i;
  }
  return s;
}

std::size_t WeightData::zero_count() const {
  return static_cast<std::size_t>(
      std::count_if(weights.begin(), weights.end(), [](const Rational& a) { return a.is_zero(); }));
}

WeightData WeightData::positive_part() const {
  WeightData out{genus, {}};
  for (const auto& a : weights) {
    if (a.sign() > 0) out.weights.push_back(a);
  }
  return out;
}

WeightData WeightData::relabeled(const std::vector<std::size_t>& slots) const {
  WeightData out{genus, {}};
  out.weights.reserve(slots.size());
  for (std::size_t s : slots) out.weights.push_back(weights.at(s));
  return out;
}

std::vector<Rational> parse_weight_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (!text.empty() && text.back() == ',') {
    throw std::invalid_argument("trailing comma in weight list");
  }
  return out;
}

std::string format_weights(const WeightData& w) {
  std::string out = "(g=" + std::to_string(w.genus) + "; ";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += w[i].str();
  }
  return out + ")";
}

ValidationReport validate(const WeightData& w) {
  ValidationReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.violations.push_back(std::move(msg));
  };
  if (w.genus < 0) fail("genus " + std::to_string(w.genus) + " is negative");
  if (w.size() > kMaxMarkings) fail("at most " + std::to_string(kMaxMarkings) + " markings supported");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].sign() < 0 || w[i] > Rational(1)) {
      fail("weight a_" + std::to_string(i + 1) + " = " + w[i].str() + " outside [0,1]");
    }
  }
  const Rational degree = Rational(2L * w.genus - 2) + w.total();
  if (degree.sign() <= 0) {
    fail("2g-2+sum = " + degree.str() + " not > 0");
  }
  return r;
}

void require_valid(const WeightData& w) {
  const auto r = validate(w);
  if (!r.ok) throw DomainError("invalid weight data " + format_weights(w) + ": " + r.violations.front());
}

namespace {

void require_enumerable(std::size_t n) {
  if (n > kMaxEnumeratedMarkings) {
    throw DomainError("subset enumeration limited to " + std::to_string(kMaxEnumeratedMarkings) +
                      " markings");
  }
}

// Depth-first walk over subsets of the ascending order; a prefix whose sum
// already exceeds one cannot be extended.
template <class Num>
void collect_small(const std::vector<Num>& sorted, const std::vector<std::size_t>& label,
                   const Num& one, std::size_t from, Subset current, int size, const Num& sum,
                   std::vector<Subset>& out) {
  for (std::size_t k = from; k < sorted.size(); ++k) {
    Num next = sum + sorted[k];
    if (next > one) break;
    const Subset s = current | (Subset{1} << label[k]);
    if (size + 1 >= 2) out.push_back(s);
    collect_small(sorted, label, one, k + 1, s, size + 1, next, out);
  }
}

template <class Num>
std::vector<Subset> small_sets_of(const std::vector<Num>& w, const Num& one) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  std::vector<Num> sorted;
  sorted.reserve(w.size());
  for (std::size_t i : order) sorted.push_back(w[i]);
  std::vector<Subset> out;
  collect_small(sorted, order, one, 0, 0, 0, Num{0}, out);
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

}  // namespace

bool ChamberSignature::contains(Subset s) const {
  return std::binary_search(small_sets.begin(), small_sets.end(), s, subset_less);
}

ChamberSignature chamber_signature(const WeightData& w) {
  require_enumerable(w.size());
  ChamberSignature sig{w.size(), {}};
  const auto scaled = detail::scale_weights(w.weights);
  if (scaled.fits) {
    sig.small_sets = small_sets_of<std::int64_t>(scaled.num, scaled.one);
  } else {
    sig.small_sets = small_sets_of<Rational>(w.weights, Rational(1));
  }
  return sig;
}

std::vector<Subset> wall_sets(const WeightData& w) {
  const auto sig = chamber_signature(w);
  std::vector<Subset> out;
  for (Subset s : sig.small_sets) {
    if (w.sum_over(s) == Rational(1)) out.push_back(s);
  }
  return out;
}

namespace {

void require_same_shape(const WeightData& a, const WeightData& b) {
  if (a.size() != b.size()) {
    throw DomainError("weight data have different numbers of markings (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
  if (a.genus != b.genus) {
    throw DomainError("weight data have different genus (" + std::to_string(a.genus) + " vs " +
                      std::to_string(b.genus) + ")");
  }
}

ChamberSignature without_pairs(ChamberSignature sig) {
  std::erase_if(sig.small_sets, [](Subset s) { return subset_size(s) < 3; });
  return sig;
}

}  // namespace

bool fine_equivalent(const WeightData& w1, const WeightData& w2) {
  require_same_shape(w1, w2);
  return chamber_signature(w1) == chamber_signature(w2);
}

bool coarse_equivalent_genus0(const WeightData& w1, const WeightData& w2) {
  require_same_shape(w1, w2);
  if (w1.genus != 0) throw DomainError("coarse equivalence is only defined here for genus 0");
  return without_pairs(chamber_signature(w1)) == without_pairs(chamber_signature(w2));
}

bool reduction_exists(const WeightData& a, const WeightData& b) {
  require_same_shape(a, b);
  require_valid(a);
  require_valid(b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

LinearSystem chamber_conditions(const WeightData& b, EquivalenceMode mode) {
  const std::size_t n = b.size();
  if (n > 20) throw DomainError("chamber conditions limited to 20 markings");
  if (mode == EquivalenceMode::kCoarse && b.genus != 0) {
    throw DomainError("coarse equivalence is only defined here for genus 0");
  }
  const int min_size = mode == EquivalenceMode::kFine ? 2 : 3;

  const std::size_t count = std::size_t{1} << n;
  std::vector<char> small(count, 0);
  {
    std::vector<Rational> sum(count);
    for (std::size_t s = 1; s < count; ++s) {
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(s));
      sum[s] = sum[s & (s - 1)] + b[low];
      small[s] = sum[s] <= Rational(1);
    }
  }

  LinearSystem sys(n);
  auto row = [&](Subset s) {
    std::vector<Rational> a(n, Rational(0));
    for (std::size_t i : indices_of(s)) a[i] = Rational(1);
    return a;
  };
  for (std::size_t s = 1; s < count; ++s) {
    if (subset_size(s) < min_size) continue;
    if (small[s]) {
      bool maximal = true;
      for (std::size_t j = 0; j < n && maximal; ++j) {
        if (!contains(s, j) && small[s | (std::size_t{1} << j)]) maximal = false;
      }
      if (maximal) sys.add(row(s), Relation::kLessEqual, Rational(1));
    } else {
      bool minimal = true;
      if (subset_size(s) > min_size) {
        for (std::size_t j = 0; j < n && minimal; ++j) {
          if (contains(s, j) && !small[s & ~(std::size_t{1} << j)]) minimal = false;
        }
      }
      if (minimal) sys.add_greater(row(s), Rational(1));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, Rational(0));
    e[i] = Rational(1);
    if (b[i].sign() > 0) {
      sys.add_greater(e, Rational(0));
      sys.add(e, Relation::kLessEqual, Rational(1));
    } else {
      sys.add(e, Relation::kEqual, Rational(0));
    }
  }
  sys.add_greater(std::vector<Rational>(n, Rational(1)), Rational(2L - 2L * b.genus));
  return sys;
}

ReductionWitness reduction_exists_up_to_equivalence(const WeightData& a, const WeightData& b,
                                                    EquivalenceMode mode) {
  require_same_shape(a, b);
  LinearSystem sys = chamber_conditions(b, mode);
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, Rational(0));
    e[i] = Rational(1);
    sys.add(e, Relation::kLessEqual, a[i]);
  }
  const auto result = solve_feasibility(sys);
  if (!result.feasible) return {};
  return {true, WeightData{b.genus, result.witness}};
}

ChamberReduction chamber_reduction_exists(const WeightData& a, EquivalenceMode a_mode, const WeightData& b,
                                          EquivalenceMode b_mode) {
  require_same_shape(a, b);
  const std::size_t n = a.size();
  // Variables: a' in slots 0..n-1, b' in slots n..2n-1.
  LinearSystem sys(2 * n);
  auto embed = [&](const LinearSystem& part, std::size_t offset) {
    for (const auto& c : part.constraints()) {
      std::vector<Rational> row(2 * n);
      for (std::size_t i = 0; i < n; ++i) row[offset + i] = c.coefficients[i];
      sys.add(std::move(row), c.relation, c.bound);
    }
  };
  embed(chamber_conditions(a, a_mode), 0);
  embed(chamber_conditions(b, b_mode), n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(2 * n);
    row[n + i] = Rational(1);
    row[i] = Rational(-1);
    sys.add(std::move(row), Relation::kLessEqual, Rational(0));
  }
  const auto result = solve_feasibility(sys);
  if (!result.feasible) return {};
  const auto mid = result.witness.begin() + static_cast<std::ptrdiff_t>(n);
  return {true, WeightData{a.genus, {result.witness.begin(), mid}}, WeightData{b.genus, {mid, result.witness.end()}}};
}

bool forgetful_defined(const WeightData& w, Subset keep) {
  if (keep == 0) throw DomainError("forgetful morphism needs a nonempty set of kept markings");
  if (keep & ~full_subset(w.size())) throw DomainError("kept marking index out of range");
  return (Rational(2L * w.genus - 2) + w.sum_over(keep)).sign() > 0;
}

}  // namespace hassett
