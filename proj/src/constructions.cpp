#include "hassett/constructions.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <stdexcept>

#include "hassett/errors.hpp"

namespace hassett {

namespace {

constexpr int kMaxFamilyMarkings = 16;

std::vector<Rational> unit(std::size_t n, std::size_t i) {
  std::vector<Rational> e(n, Rational(0));
  e[i] = Rational(1);
  return e;
}

std::vector<Rational> indicator(std::size_t n, Subset s) {
  std::vector<Rational> a(n, Rational(0));
  for (std::size_t i : indices_of(s)) a[i] = Rational(1);
  return a;
}

void add_bounds(LinearSystem& sys) {
  const std::size_t n = sys.variables();
  for (std::size_t i = 0; i < n; ++i) {
    sys.add_greater(unit(n, i), Rational(0));
    sys.add(unit(n, i), Relation::kLessEqual, Rational(1));
  }
  sys.add_greater(std::vector<Rational>(n, Rational(1)), Rational(2));
}

// Nonempty subsets of `ground`, ascending as integers.
template <class F>
void for_each_subset(Subset ground, F&& f) {
  for (Subset s = ground; s != 0; s = (s - 1) & ground) f(s);
}

Subset range_subset(int lo, int hi) {  // 0-based, inclusive
  Subset s = 0;
  for (int i = lo; i <= hi; ++i) s |= Subset{1} << i;
  return s;
}

}  // namespace

std::optional<std::string> parameter_problem(const FamilyParams& p) {
  const int n = p.n;
  if (n > kMaxFamilyMarkings) return "families are supported up to n = " + std::to_string(kMaxFamilyMarkings);
  switch (p.kind) {
    case FamilyKind::kKapranov:
      if (n < 4) return "Kapranov family needs n >= 4";
      if (p.r < 1 || p.r > n - 3) return "Kapranov family needs 1 <= r <= n-3";
      if (p.s < 1 || p.s > n - p.r - 2) return "Kapranov family needs 1 <= s <= n-r-2";
      return std::nullopt;
    case FamilyKind::kKapranovSym:
      if (p.k < 1 || p.k > n - 4) return "symmetric Kapranov family needs 1 <= k <= n-4";
      return std::nullopt;
    case FamilyKind::kKeel:
      if (n < 5) return "Keel family needs n >= 5";
      if (p.h < 0 || p.h > 2 * n - 9) return "Keel family needs 0 <= h <= 2n-9";
      return std::nullopt;
  }
  return "unknown family";
}

void require_parameters(const FamilyParams& p) {
  if (auto why = parameter_problem(p)) throw DomainError(*why + " (" + format_family(p) + ")");
}

std::string format_family(const FamilyParams& p) {
  const std::string n = ",n=" + std::to_string(p.n);
  switch (p.kind) {
    case FamilyKind::kKapranov:
      return "kapranov:r=" + std::to_string(p.r) + ",s=" + std::to_string(p.s) + n;
    case FamilyKind::kKapranovSym:
      return "sym:k=" + std::to_string(p.k) + n;
    case FamilyKind::kKeel:
      return "keel:h=" + std::to_string(p.h) + n;
  }
  return "?";
}

FamilyParams parse_family(const std::string& text) {
  static const std::regex kap(R"(kapranov:r=(\d+),s=(\d+),n=(\d+))");
  static const std::regex sym(R"(sym:k=(\d+),n=(\d+))");
  static const std::regex keel(R"(keel:h=(\d+),n=(\d+))");
  std::smatch m;
  auto num = [&](std::size_t i) { return std::stoi(m[i].str()); };
  if (std::regex_match(text, m, kap)) return FamilyParams::kapranov(num(1), num(2), num(3));
  if (std::regex_match(text, m, sym)) return FamilyParams::sym(num(1), num(2));
  if (std::regex_match(text, m, keel)) return FamilyParams::keel(num(1), num(2));
  throw std::invalid_argument("unrecognized family notation '" + text +
                              "' (expected kapranov:r=R,s=S,n=N, sym:k=K,n=N or keel:h=H,n=N)");
}

std::vector<std::size_t> slot_blocks(const FamilyParams& p) {
  const auto n = static_cast<std::size_t>(p.n);
  switch (p.kind) {
    case FamilyKind::kKapranov:
      return {n - static_cast<std::size_t>(p.r) - 1, 1, static_cast<std::size_t>(p.r)};
    case FamilyKind::kKapranovSym:
      return {n - 1, 1};
    case FamilyKind::kKeel:
      return {3, n - 3};
  }
  return {};
}

WeightData kapranov_weights(int r, int s, int n) {
  require_parameters(FamilyParams::kapranov(r, s, n));
  const long d = n - r - 1;
  WeightData w{0, {}};
  for (long i = 0; i < d; ++i) w.weights.emplace_back(1L, d);
  w.weights.emplace_back(static_cast<long>(s), d);
  for (int i = 0; i < r; ++i) w.weights.emplace_back(1L);
  return w;
}

LinearSystem family_conditions(const FamilyParams& p) {
  require_parameters(p);
  const auto n = static_cast<std::size_t>(p.n);
  switch (p.kind) {
    case FamilyKind::kKapranov: {
      return chamber_conditions(kapranov_weights(p.r, p.s, p.n), EquivalenceMode::kFine);
    }
    case FamilyKind::kKapranovSym: {
      LinearSystem sys(n);
      const std::size_t last = n - 1;
      for (std::size_t i = 0; i < last; ++i) {
        auto a = unit(n, i);
        a[last] = Rational(1);
        sys.add_greater(a, Rational(1));
      }
      const auto cut = static_cast<std::size_t>(p.n - p.k - 2);
      for_each_subset(range_subset(0, p.n - 2), [&](Subset s) {
        const std::size_t size = subset_size(s);
        if (size < 2) return;
        if (size <= cut) {
          sys.add(indicator(n, s), Relation::kLessEqual, Rational(1));
        } else {
          sys.add_greater(indicator(n, s), Rational(1));
        }
      });
      add_bounds(sys);
      return sys;
    }
    case FamilyKind::kKeel: {
      LinearSystem sys(n);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
          sys.add_greater(indicator(n, (Subset{1} << i) | (Subset{1} << j)), Rational(1));
        }
      }
      const Subset lights = range_subset(3, p.n - 1);
      const int h = p.h;
      if (h <= p.n - 4) {
        // Phase one: a heavy marking together with a set of lights.
        for (std::size_t i = 0; i < 3; ++i) {
          for_each_subset(lights, [&](Subset j) {
            const auto size = static_cast<int>(subset_size(j));
            const Subset s = j | (Subset{1} << i);
            if (h == 0) {
              if (size >= 2) sys.add(indicator(n, s), Relation::kLessEqual, Rational(1));
            } else if (size <= p.n - h - 3) {
              sys.add(indicator(n, s), Relation::kLessEqual, Rational(1));
            } else {
              sys.add_greater(indicator(n, s), Rational(1));
            }
          });
        }
      } else {
        // Phase two: sets of lights only.
        for_each_subset(lights, [&](Subset j) {
          const auto size = static_cast<int>(subset_size(j));
          if (size <= 2 * p.n - h - 7) {
            sys.add(indicator(n, j), Relation::kLessEqual, Rational(1));
          } else {
            sys.add_greater(indicator(n, j), Rational(1));
          }
        });
      }
      add_bounds(sys);
      return sys;
    }
  }
  return LinearSystem(n);
}

WeightData representative_weights(const FamilyParams& p) {
  if (p.kind == FamilyKind::kKapranov) return kapranov_weights(p.r, p.s, p.n);
  const LinearSystem sys = family_conditions(p);
  // Prefer a point off every wall, so the representative lies inside its
  // chamber rather than on a boundary shared with a neighbouring one.
  LinearSystem open(sys.variables());
  for (auto c : sys.constraints()) {
    if (c.relation == Relation::kLessEqual) c.relation = Relation::kLess;
    open.add(std::move(c));
  }
  auto result = solve_feasibility(prune_dominated(open));
  if (!result.feasible) result = solve_feasibility(prune_dominated(sys));
  if (!result.feasible) throw DomainError("condition system of " + format_family(p) + " is infeasible");
  WeightData w{0, result.witness};
  if (!sys.satisfied_by(w.weights)) {
    throw std::logic_error("representative of " + format_family(p) + " fails its own conditions");
  }
  return w;
}

FamilySpec family_spec(const FamilyParams& p) {
  return {p, family_conditions(p), representative_weights(p)};
}

std::vector<FamilyParams> all_families(int n) {
  std::vector<FamilyParams> out;
  if (n > kMaxFamilyMarkings) return out;
  for (int r = 1; r <= n - 3; ++r) {
    for (int s = 1; s <= n - r - 2; ++s) out.push_back(FamilyParams::kapranov(r, s, n));
  }
  for (int k = 1; k <= n - 4; ++k) out.push_back(FamilyParams::sym(k, n));
  if (n >= 5) {
    for (int h = 0; h <= 2 * n - 9; ++h) out.push_back(FamilyParams::keel(h, n));
  }
  return out;
}

namespace {

// Number of small sets of size >= min_size containing each marking.
std::vector<std::size_t> small_degrees(const WeightData& w, std::size_t min_size) {
  std::vector<std::size_t> deg(w.size(), 0);
  for (Subset s : chamber_signature(w).small_sets) {
    if (static_cast<std::size_t>(subset_size(s)) < min_size) continue;
    for (std::size_t i : indices_of(s)) ++deg[i];
  }
  return deg;
}

// Calls visit(slots) for every assignment of markings to the blocks, where
// marking i may fill block b only if allowed(i, b). Stops when visit
// returns true.
bool for_each_assignment(std::size_t n, const std::vector<std::size_t>& blocks,
                         const std::function<bool(std::size_t, std::size_t)>& allowed,
                         const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> slots;
  slots.reserve(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t b, std::size_t taken,
                                                                        std::size_t from) -> bool {
    if (b == blocks.size()) return visit(slots);
    if (taken == blocks[b]) return rec(b + 1, 0, 0);
    for (std::size_t i = from; i < n; ++i) {
      if (used[i] || !allowed(i, b)) continue;
      used[i] = true;
      slots.push_back(i);
      if (rec(b, taken + 1, i + 1)) return true;
      slots.pop_back();
      used[i] = false;
    }
    return false;
  };
  return rec(0, 0, 0);
}

}  // namespace

std::optional<Classification> classify_as(const WeightData& w, const FamilyParams& p, EquivalenceMode mode) {
  if (w.genus != 0) throw DomainError("family classification is defined for genus 0 only");
  if (parameter_problem(p) || w.size() != static_cast<std::size_t>(p.n)) return std::nullopt;
  if (!validate(w).ok) return std::nullopt;

  const LinearSystem conditions = prune_dominated(family_conditions(p));
  const std::vector<std::size_t> blocks = slot_blocks(p);
  const bool pinned = p.kind != FamilyKind::kKeel;
  const std::size_t min_size = mode == EquivalenceMode::kFine ? 2 : 3;

  std::optional<WeightData> rep;
  std::vector<std::size_t> w_deg, block_deg;
  if (pinned) {
    // The family is a single chamber, so the per-marking count of small sets
    // must match slot by slot.
    rep = representative_weights(p);
    w_deg = small_degrees(w, min_size);
    const auto rep_deg = small_degrees(*rep, min_size);
    std::size_t first = 0;
    for (std::size_t len : blocks) {
      block_deg.push_back(rep_deg[first]);
      first += len;
    }
  }
  auto allowed = [&](std::size_t i, std::size_t b) { return !pinned || w_deg[i] == block_deg[b]; };

  std::optional<Classification> found;
  for_each_assignment(w.size(), blocks, allowed, [&](const std::vector<std::size_t>& slots) {
    const WeightData x = w.relabeled(slots);
    bool hit = false;
    if (mode == EquivalenceMode::kFine) {
      hit = conditions.satisfied_by(x.weights);
    } else if (pinned) {
      hit = coarse_equivalent_genus0(x, *rep);
    } else {
      LinearSystem sys = conditions;
      for (const auto& c : chamber_conditions(x, EquivalenceMode::kCoarse).constraints()) sys.add(c);
      hit = solve_feasibility(sys).feasible;
    }
    if (hit) found = Classification{p, slots};
    return hit;
  });
  return found;
}

std::optional<Classification> classify(const WeightData& w, EquivalenceMode mode) {
  if (w.genus != 0) throw DomainError("family classification is defined for genus 0 only");
  for (const auto& p : all_families(static_cast<int>(w.size()))) {
    if (auto c = classify_as(w, p, mode)) return c;
  }
  return std::nullopt;
}

std::vector<Classification> classify_all(const WeightData& w, EquivalenceMode mode) {
  if (w.genus != 0) throw DomainError("family classification is defined for genus 0 only");
  std::vector<Classification> out;
  for (const auto& p : all_families(static_cast<int>(w.size()))) {
    if (auto c = classify_as(w, p, mode)) out.push_back(*c);
  }
  return out;
}

FactorsKapranovResult factors_kapranov(const WeightData& w) {
  if (w.genus != 0) throw DomainError("factors-Kapranov is defined for genus 0 only");
  if (w.size() < 5) throw DomainError("factors-Kapranov needs n >= 5");
  require_valid(w);
  const std::size_t n = w.size();
  const WeightData ones{0, std::vector<Rational>(n, Rational(1))};
  FactorsKapranovResult out;
  if (!reduction_exists(ones, w)) return out;
  for (std::size_t i = 0; i < n; ++i) {
    WeightData target{0, std::vector<Rational>(n, Rational(1L, static_cast<long>(n) - 2))};
    target.weights[i] = Rational(1);
    auto r = chamber_reduction_exists(w, EquivalenceMode::kCoarse, target, EquivalenceMode::kCoarse);
    if (r.exists) {
      out.factors = true;
      out.heavy_slot = i;
      out.witness = r.target;
      out.source = r.source;
      return out;
    }
  }
  return out;
}

std::string construction_name(Construction c) {
  switch (c) {
    case Construction::kKapranov: return "kblu";
    case Construction::kKapranovSym: return "kblusym";
    case Construction::kKeel: return "con2";
  }
  return "?";
}

Construction parse_construction(const std::string& text) {
  if (text == "kblu" || text == "kapranov") return Construction::kKapranov;
  if (text == "kblusym" || text == "sym") return Construction::kKapranovSym;
  if (text == "con2" || text == "keel") return Construction::kKeel;
  throw std::invalid_argument("unknown construction '" + text + "' (expected kblu, kblusym or con2)");
}

namespace {

std::vector<int> labels_vec(Subset s) {
  std::vector<int> out;
  for (std::size_t l : labels_of(s)) out.push_back(static_cast<int>(l));
  return out;
}

std::string span_locus(Subset s) {
  const auto pts = labels_of(s);
  if (pts.size() == 1) return "p" + std::to_string(pts[0]);
  std::string out = "span(";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ",";
    out += "p" + std::to_string(pts[i]);
  }
  return out + ")";
}

BlowupCenter span_center(Subset s) {
  return {labels_vec(s), static_cast<int>(subset_size(s)) - 1, span_locus(s)};
}

// Subsets of `ground` ordered by size, then lexicographically; sizes in [lo, hi].
std::vector<Subset> subsets_by_size(Subset ground, std::size_t lo, std::size_t hi) {
  std::vector<Subset> out;
  for_each_subset(ground, [&](Subset s) {
    const std::size_t k = subset_size(s);
    if (k >= lo && k <= hi) out.push_back(s);
  });
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

}  // namespace

BlowupSchedule blowup_schedule(Construction c, int n) {
  if (n < 5) throw DomainError("blow-up schedules need n >= 5");
  if (n > kMaxFamilyMarkings) throw DomainError("blow-up schedules are supported up to n = 16");
  BlowupSchedule sched;
  sched.construction = c;
  sched.n = n;
  const auto un = static_cast<std::size_t>(n);
  switch (c) {
    case Construction::kKapranov: {
      sched.ambient = "P^" + std::to_string(n - 3);
      for (int r = 1; r <= n - 3; ++r) {
        BlowupStep step{r, {}, {}};
        if (r == 1) {
          step.description = "spans of at most n-4 of p1..p" + std::to_string(n - 2);
          for (Subset s : subsets_by_size(range_subset(0, n - 3), 1, un - 4)) step.centers.push_back(span_center(s));
        } else {
          const Subset fixed = range_subset(n - r, n - 2);   // labels n-r+1 .. n-1
          const Subset excluded = Subset{1} << (n - r - 1);  // label n-r
          step.description = "spans containing " + format_subset(fixed) + " but not p" + std::to_string(n - r);
          const Subset ground = range_subset(0, n - 2) & ~excluded;
          for (Subset s : subsets_by_size(ground, static_cast<std::size_t>(r - 1), un - 4)) {
            if ((s & fixed) == fixed) step.centers.push_back(span_center(s));
          }
        }
        sched.steps.push_back(std::move(step));
      }
      break;
    }
    case Construction::kKapranovSym: {
      sched.ambient = "P^" + std::to_string(n - 3);
      for (int k = 1; k <= n - 4; ++k) {
        BlowupStep step{k, "spans of " + std::to_string(k) + " of p1..p" + std::to_string(n - 1), {}};
        for (Subset s : subsets_by_size(range_subset(0, n - 2), static_cast<std::size_t>(k), static_cast<std::size_t>(k))) {
          step.centers.push_back(span_center(s));
        }
        sched.steps.push_back(std::move(step));
      }
      break;
    }
    case Construction::kKeel: {
      sched.ambient = "(P^1)^" + std::to_string(n - 3);
      static const char* frames[] = {"F_0", "F_1", "F_∞"};
      const Subset lights = range_subset(3, n - 1);
      for (int h = 1; h <= n - 4; ++h) {
        const std::string delta = "Δ_" + std::to_string(h);
        BlowupStep step{h, delta + " ∩ (F_0∪F_1∪F_∞)", {}};
        const auto size = static_cast<std::size_t>(n - h - 2);
        for (std::size_t c3 = 0; c3 < 3; ++c3) {
          for (Subset j : subsets_by_size(lights, size, size)) {
            step.centers.push_back({labels_vec(j | (Subset{1} << c3)), h - 1, delta + " ∩ " + frames[c3]});
          }
        }
        sched.steps.push_back(std::move(step));
      }
      for (int h = n - 3; h <= 2 * n - 9; ++h) {
        const int d = h - n + 4;
        const std::string delta = "Δ_" + std::to_string(d);
        BlowupStep step{h, delta, {}};
        const auto size = static_cast<std::size_t>(2 * n - h - 6);
        for (Subset j : subsets_by_size(lights, size, size)) step.centers.push_back({labels_vec(j), d, delta});
        sched.steps.push_back(std::move(step));
      }
      break;
    }
  }
  return sched;
}

KeelChainReport verify_keel_chain(int n) {
  if (n < 5) throw DomainError("verify-l1 needs n >= 5");
  if (n > 10) throw DomainError("verify-l1 is supported up to n = 10");
  KeelChainReport report;
  report.n = n;
  const auto un = static_cast<std::size_t>(n);

  for (int h = n - 4; h <= 2 * n - 9; ++h) {
    KeelChainStep check;
    check.h = h;
    check.source = representative_weights(FamilyParams::keel(h, n));
    const std::pair<std::size_t, std::size_t> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto mode : {EquivalenceMode::kFine, EquivalenceMode::kCoarse}) {
      for (const auto& [a, b] : pairs) {
        WeightData target{0, std::vector<Rational>(un, Rational(1L, n - 3L))};
        target.weights[a] = Rational(1);
        target.weights[b] = Rational(1);
        const auto r = reduction_exists_up_to_equivalence(check.source, target, mode);
        if (!r.exists) continue;
        // Independent re-check of the witness.
        const WeightData& x = *r.witness;
        bool ok = validate(x).ok && reduction_exists(check.source, x);
        ok = ok && (mode == EquivalenceMode::kFine ? fine_equivalent(x, target) : coarse_equivalent_genus0(x, target));
        if (!ok) {
          report.notes.push_back("h=" + std::to_string(h) + ": witness failed re-validation");
          continue;
        }
        check.passed = true;
        check.mode = mode;
        check.target = target;
        check.witness = x;
        check.heavy_slots = {a, b};
        break;
      }
      if (check.passed) break;
    }
    report.reductions.push_back(std::move(check));
  }

  report.second_phase_empty = n - 3 > 2 * n - 9;
  if (report.second_phase_empty) {
    report.notes.push_back("empty second phase");
  } else {
    // A_{2,2}[n] with its two weight-one markings moved to slots 1, 2.
    const WeightData a22 = kapranov_weights(2, 2, n);
    std::vector<std::size_t> slots = {un - 2, un - 1};
    for (std::size_t i = 0; i + 2 < un; ++i) slots.push_back(i);
    const WeightData x = a22.relabeled(slots);
    report.y_first_second_phase_is_a22 = family_conditions(FamilyParams::keel(n - 3, n)).satisfied_by(x.weights);
    report.a22_witness = x;
  }

  report.passed = std::all_of(report.reductions.begin(), report.reductions.end(),
                              [](const KeelChainStep& c) { return c.passed; }) &&
                  report.y_first_second_phase_is_a22.value_or(true);
  return report;
}

}  // namespace hassett
