#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hassett/feasibility.hpp"
#include "hassett/weights.hpp"

namespace hassett {

/// The three blow-up families of genus-0 weight data:
///   Kapranov(r,s)   A_{r,s}[n], the intermediate steps of the Kapranov blow-up of P^{n-3}
///   KapranovSym(k)  X_k[n], blow-ups of all spans of <= k of n-1 points
///   Keel(h)         Y_h[n], blow-ups of (P^1)^{n-3} along diagonals
enum class FamilyKind { kKapranov, kKapranovSym, kKeel };

struct FamilyParams {
  FamilyKind kind = FamilyKind::kKapranov;
  int n = 0;
  int r = 0, s = 0;  // Kapranov
  int k = 0;         // KapranovSym
  int h = 0;         // Keel

  static FamilyParams kapranov(int r, int s, int n) { return {FamilyKind::kKapranov, n, r, s, 0, 0}; }
  static FamilyParams sym(int k, int n) { return {FamilyKind::kKapranovSym, n, 0, 0, k, 0}; }
  static FamilyParams keel(int h, int n) { return {FamilyKind::kKeel, n, 0, 0, 0, h}; }

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// Empty when the parameters are in range, else the reason.
std::optional<std::string> parameter_problem(const FamilyParams& p);
/// Throws DomainError when parameter_problem is set.
void require_parameters(const FamilyParams& p);

/// "kapranov:r=1,s=2,n=5", "sym:k=1,n=6", "keel:h=2,n=6".
std::string format_family(const FamilyParams& p);
/// Inverse of format_family; throws std::invalid_argument on bad syntax.
FamilyParams parse_family(const std::string& text);

/// Block sizes of the slot convention. Slots are filled block by block:
///   Kapranov: n-r-1 light slots, the s-slot, r weight-one slots
///   KapranovSym: n-1 slots, then the distinguished last slot
///   Keel: the three heavy slots, then n-3 light slots
std::vector<std::size_t> slot_blocks(const FamilyParams& p);

/// (1/(n-r-1) x (n-r-1), s/(n-r-1), 1 x r), genus 0.
WeightData kapranov_weights(int r, int s, int n);

/// The defining inequalities over n weight variables, plus 0 < a_i <= 1 and
/// sum > 2. Kapranov uses the chamber conditions of A_{r,s}[n]; the other
/// two families use the construction's inequalities with index ranges
/// read literally.
LinearSystem family_conditions(const FamilyParams& p);

struct FamilySpec {
  FamilyParams params;
  LinearSystem conditions;
  std::optional<WeightData> representative;
};

/// Throws DomainError when the condition system is infeasible.
WeightData representative_weights(const FamilyParams& p);
FamilySpec family_spec(const FamilyParams& p);

/// Every parameter choice for n, in the order Kapranov (r, then s),
/// KapranovSym (k), Keel (h).
std::vector<FamilyParams> all_families(int n);

struct Classification {
  FamilyParams family;
  /// slots[t] is the marking (0-based) that plays slot t, so that
  /// w.relabeled(slots) lies in the family.
  std::vector<std::size_t> slots;
};

/// Membership of a relabeling of w in a family. Fine mode tests the
/// relabeled weights against family_conditions directly (for Kapranov this
/// is signature equality with A_{r,s}). Coarse mode asks for a point of the
/// family that is coarse-equivalent to the relabeled weights.
std::optional<Classification> classify_as(const WeightData& w, const FamilyParams& p,
                                          EquivalenceMode mode = EquivalenceMode::kFine);
/// First family in all_families order that contains w; genus 0 only.
std::optional<Classification> classify(const WeightData& w, EquivalenceMode mode = EquivalenceMode::kFine);
std::vector<Classification> classify_all(const WeightData& w, EquivalenceMode mode = EquivalenceMode::kFine);

struct FactorsKapranovResult {
  bool factors = false;
  std::optional<std::size_t> heavy_slot;  // 0-based marking carrying weight 1 in A_{1,1}
  std::optional<WeightData> witness;      // the A_{1,1} representative reached
  std::optional<WeightData> source;       // the point coarse-equivalent to w it is reached from
};

/// Some relabeling of A_{1,1}[n] (weight one at slot i) is reachable by a
/// reduction from a point coarse-equivalent to w, to a point coarse-equivalent
/// to the target; the reduction from (1,..,1) to w always exists. Depends
/// only on the coarse space of w. Genus 0, n >= 5.
FactorsKapranovResult factors_kapranov(const WeightData& w);

enum class Construction { kKapranov, kKapranovSym, kKeel };
std::string construction_name(Construction c);  // "kblu", "kblusym", "con2"
Construction parse_construction(const std::string& text);

struct BlowupCenter {
  std::vector<int> points;  // 1-based labels spanning the center
  int dimension = 0;
  std::string locus;
};

struct BlowupStep {
  int index = 0;
  std::string description;
  std::vector<BlowupCenter> centers;
};

struct BlowupSchedule {
  Construction construction = Construction::kKapranov;
  int n = 0;
  std::string ambient;
  std::vector<BlowupStep> steps;
};

/// Ordered centers of the construction; n >= 5.
BlowupSchedule blowup_schedule(Construction c, int n);

struct KeelChainStep {
  int h = 0;
  bool passed = false;
  EquivalenceMode mode = EquivalenceMode::kFine;
  WeightData source;                  // Y_h representative
  std::optional<WeightData> target;   // relabeled A_{2,1}
  std::optional<WeightData> witness;  // target-equivalent weights below source
  std::vector<std::size_t> heavy_slots;
};

struct KeelChainReport {
  int n = 0;
  std::vector<KeelChainStep> reductions;
  bool second_phase_empty = false;
  /// Relabeled A_{2,2}[n] satisfies the Y_{n-3} conditions (unset when the
  /// second phase is empty).
  std::optional<bool> y_first_second_phase_is_a22;
  std::optional<WeightData> a22_witness;
  std::vector<std::string> notes;
  bool passed = false;
};

/// Every Y_h[n], n-4 <= h <= 2n-9, reduces chamber-wise to a relabeling of
/// A_{2,1}[n], and Y_{n-3}[n] is realized by A_{2,2}[n]. All witnesses are
/// re-validated by substitution.
KeelChainReport verify_keel_chain(int n);

}  // namespace hassett
