#include "hassett/autgroup.hpp"

#include <algorithm>
#include <numeric>

#include "hassett/constructions.hpp"
#include "hassett/errors.hpp"
#include "scaled.hpp"

namespace hassett {

namespace {

// Finds T with |T_pos| + padding >= 2 and lo < sum_T <= hi, scanning sizes
// in ascending order and, within a size, combinations of the ascending
// weight order. `zeros` may pad T up to two elements.
template <class Num>
class IntervalSubsetSum {
public:
  IntervalSubsetSum(std::vector<Num> values, std::vector<std::size_t> labels, std::size_t zeros, Num lo, Num hi)
      : values_(std::move(values)), labels_(std::move(labels)), zeros_(zeros), lo_(lo), hi_(hi) {}

  std::optional<std::vector<std::size_t>> find() {
    const std::size_t m = values_.size();
    for (std::size_t k = 1; k <= m; ++k) {
      if (k + zeros_ < 2) continue;
      // largest_[d] = sum of the d largest values
      largest_.assign(k + 1, Num{0});
      for (std::size_t d = 1; d <= k; ++d) largest_[d] = largest_[d - 1] + values_[m - d];
      if (!(largest_[k] > lo_)) continue;
      chosen_.clear();
      if (search(0, k, Num{0})) return chosen_;
    }
    return std::nullopt;
  }

private:
  bool search(std::size_t from, std::size_t left, const Num& sum) {
    if (left == 0) return sum > lo_ && sum <= hi_;
    const std::size_t m = values_.size();
    for (std::size_t p = from; p + left <= m; ++p) {
      const Num next = sum + values_[p];
      if (next > hi_) return false;  // ascending: later picks are no smaller
      // Best case from here: take the left-1 largest of what follows.
      const Num best = next + largest_[left - 1];
      if (!(best > lo_)) continue;
      chosen_.push_back(labels_[p]);
      if (search(p + 1, left - 1, next)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::vector<Num> values_;
  std::vector<std::size_t> labels_;
  std::size_t zeros_;
  Num lo_, hi_;
  std::vector<Num> largest_;
  std::vector<std::size_t> chosen_;
};

template <class Num>
std::optional<Subset> separating_set(const std::vector<Num>& a, const Num& one, std::size_t i, std::size_t j,
                                     bool allow_ij) {
  const Num& small = std::min(a[i], a[j]);
  const Num& large = std::max(a[i], a[j]);
  if (small == large) return std::nullopt;
  std::vector<std::size_t> order;
  std::vector<std::size_t> zero_labels;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!allow_ij && (t == i || t == j)) continue;
    if (a[t] == Num{0}) {
      zero_labels.push_back(t);
    } else {
      order.push_back(t);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x] < a[y]; });
  std::vector<Num> values;
  for (std::size_t t : order) values.push_back(a[t]);
  IntervalSubsetSum<Num> search(values, order, zero_labels.size(), one - large, one - small);
  auto found = search.find();
  if (!found) return std::nullopt;
  Subset t = 0;
  for (std::size_t x : *found) t |= Subset{1} << x;
  for (std::size_t z = 0; subset_size(t) < 2; ++z) t |= Subset{1} << zero_labels[z];
  return t;
}

// Sets avoiding i and j are tried first so witnesses stay inside the other markings.
template <class Num>
std::optional<Subset> separating_set(const std::vector<Num>& a, const Num& one, std::size_t i, std::size_t j,
                                     AtransReading reading) {
  auto t = separating_set(a, one, i, j, false);
  if (!t && reading == AtransReading::kStrict) t = separating_set(a, one, i, j, true);
  return t;
}

}  // namespace

AdmissibilityResult is_admissible(const WeightData& w, std::size_t i, std::size_t j, AtransReading reading) {
  if (i >= w.size() || j >= w.size()) throw DomainError("marking index out of range");
  if (i == j) throw DomainError("a transposition needs two distinct markings");
  if (w[i].sign() <= 0 || w[j].sign() <= 0) {
    throw DomainError("admissibility is defined for positive-weight markings only");
  }
  const auto scaled = detail::scale_weights(w.weights);
  std::optional<Subset> t;
  if (scaled.fits) {
    t = separating_set<std::int64_t>(scaled.num, scaled.one, i, j, reading);
  } else {
    t = separating_set<Rational>(w.weights, Rational(1), i, j, reading);
  }
  if (!t) return {};
  return {false, t};
}

std::vector<Permutation> admissible_generators(const WeightData& w, AtransReading reading) {
  require_valid(w);
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const bool zi = w[i].is_zero(), zj = w[j].is_zero();
      if (zi != zj) continue;
      if (zi || is_admissible(w, i, j, reading).admissible) out.push_back(transposition(w.size(), i, j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string special_label_name(SpecialLabel s) {
  switch (s) {
    case SpecialLabel::kNone: return "none";
    case SpecialLabel::kPGL2: return "PGL2";
    case SpecialLabel::kTorusOnly: return "torus-only";
    case SpecialLabel::kTrivial: return "trivial";
  }
  return "?";
}

namespace {

std::string combined_label(int torus_rank, const PermGroup& g) {
  std::string out;
  if (torus_rank > 0) out = "torus^" + std::to_string(torus_rank);
  if (g.order > 1) {
    if (!out.empty()) out += " x ";
    out += g.label();
  }
  return out.empty() ? "trivial" : out;
}

AutDescription finite_only(std::size_t n, const std::vector<Permutation>& gens, std::string provenance,
                           int torus_rank = 0) {
  AutDescription d;
  d.torus_rank = torus_rank;
  d.finite = generate_group(gens, n);
  d.provenance = std::move(provenance);
  d.label = combined_label(torus_rank, d.finite);
  if (torus_rank == 0 && d.finite.order == 1) d.special = SpecialLabel::kTrivial;
  return d;
}

// Adjacent transpositions of the given markings: the full symmetric group on them.
std::vector<Permutation> symmetric_on(std::size_t n, const std::vector<std::size_t>& points) {
  std::vector<Permutation> gens;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) gens.push_back(transposition(n, points[k], points[k + 1]));
  return gens;
}

std::vector<std::size_t> all_points(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

AutDescription pgl2(std::string provenance) {
  AutDescription d;
  d.special = SpecialLabel::kPGL2;
  d.provenance = std::move(provenance);
  d.label = "PGL2";
  return d;
}

AutResult genus_zero(const WeightData& w) {
  const std::size_t n = w.size();
  if (w.zero_count() > 0) {
    return NotCovered{.detail = "genus 0 with zero weights"};
  }
  const WeightData classical{0, std::vector<Rational>(n, Rational(1))};
  if (coarse_equivalent_genus0(w, classical)) {
    if (n == 4) {
      AutDescription d = pgl2("genus 0, four markings: PGL2");
      d.finite = generate_group({}, n);
      return d;
    }
    if (n >= 5) return finite_only(n, symmetric_on(n, all_points(n)), "genus 0, classical: S_n");
    return NotCovered{.detail = "genus 0 with fewer than four markings"};
  }
  if (n < 5) return NotCovered{.detail = "genus 0 weighted variant with n = " + std::to_string(n)};

  const auto found = classify(w, EquivalenceMode::kFine);
  if (!found) return NotCovered{.detail = "genus 0 weights outside the Kapranov, symmetric Kapranov and Keel families"};
  const FamilyParams& p = found->family;
  const auto& slots = found->slots;
  const int ni = static_cast<int>(n);
  const std::string fam = format_family(p);

  switch (p.kind) {
    case FamilyKind::kKapranov: {
      if (p.r >= 2) return finite_only(n, symmetric_on(n, all_points(n)), "Kapranov step r>=2 (" + fam + "): S_n");
      if (p.s == 1) return NotCovered{.detail = "Kapranov step r=1,s=1 (projective space) is not in the table"};
      const std::vector<std::size_t> lights(slots.begin(), slots.begin() + (ni - 2));
      auto gens = symmetric_on(n, lights);
      if (p.s == ni - 3) {
        gens.push_back(transposition(n, slots[n - 2], slots[n - 1]));
        return finite_only(n, gens, "Kapranov step r=1,s=n-3, Losev-Manin (" + fam + ")", ni - 3);
      }
      return finite_only(n, gens, "Kapranov step r=1,1<s<n-3 (" + fam + ")", ni - 3);
    }
    case FamilyKind::kKapranovSym:
      return finite_only(n, symmetric_on(n, all_points(n)), "symmetric Kapranov step (" + fam + "): S_n");
    case FamilyKind::kKeel:
      if (p.h >= ni - 4) return finite_only(n, symmetric_on(n, all_points(n)), "Keel step h>=n-4 (" + fam + "): S_n");
      return NotCovered{.detail = "Keel step h < n-4 (" + fam + ") is not covered"};
  }
  return NotCovered{};
}

}  // namespace

AutResult aut_group(const WeightData& w, AtransReading reading) {
  require_valid(w);
  const std::size_t n = w.size();
  const std::size_t positive = n - w.zero_count();

  if (w.genus >= 2 && n == 0) {
    AutDescription d = finite_only(0, {}, "unmarked curves, g>=2: trivial");
    d.special = SpecialLabel::kTrivial;
    return d;
  }
  if (w.genus >= 2 || (w.genus == 1 && n >= 3 && positive >= 2)) {
    return finite_only(n, admissible_generators(w, reading),
                       "g>=1: admissible transpositions x permutations of zero weights");
  }
  if (w.genus == 1 && n == 1) {
    AutDescription d = pgl2("genus 1, one marking: PGL2");
    d.finite = generate_group({}, n);
    d.stack_note = "stack: C*";
    return d;
  }
  if (w.genus == 1 && n == 2 && positive == 2) {
    AutDescription d = finite_only(n, {}, "genus 1, two markings: torus of rank 2", 2);
    d.special = SpecialLabel::kTorusOnly;
    d.stack_note = "stack: trivial";
    return d;
  }
  if (w.genus == 0) return genus_zero(w);
  return NotCovered{.detail = "genus 1 needs at least two positive weights and n >= 3"};
}

}  // namespace hassett
