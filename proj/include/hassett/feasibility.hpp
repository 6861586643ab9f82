#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hassett/rational.hpp"

namespace hassett {

enum class Relation { kLessEqual, kLess, kEqual };

std::string relation_symbol(Relation r);

/// coefficients . x  (<=, <, =)  bound
struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kLessEqual;
  Rational bound;
};

/// A conjunction of linear constraints over `variables` unknowns.
class LinearSystem {
public:
  explicit LinearSystem(std::size_t variables = 0) : variables_(variables) {}

  std::size_t variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  /// Throws std::invalid_argument when the coefficient count differs from
  /// variables().
  void add(Constraint c);
  void add(std::vector<Rational> coefficients, Relation rel, Rational bound);

  // Conveniences for the reversed relations; stored negated.
  void add_greater_equal(std::vector<Rational> coefficients, Rational bound);
  void add_greater(std::vector<Rational> coefficients, Rational bound);

  /// Exact evaluation; true iff every constraint holds at `point`.
  bool satisfied_by(const std::vector<Rational>& point) const;
  /// Index of the first violated constraint, if any.
  std::optional<std::size_t> first_violation(const std::vector<Rational>& point) const;

private:
  std::size_t variables_;
  std::vector<Constraint> constraints_;
};

bool satisfies(const Constraint& c, const std::vector<Rational>& point);

/// Drops constraints implied by another one through coordinatewise
/// dominance. Only applied when every variable carries an explicit lower
/// bound x_i >= c >= 0 in the system, since the implication needs x >= 0.
/// The result has the same solution set.
LinearSystem prune_dominated(const LinearSystem& sys);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> witness;  // empty when infeasible
};

enum class FeasibilityMethod {
  kAuto,            // elimination under a row budget, simplex past it
  kFourierMotzkin,  // elimination only, no budget
  kSimplex,         // two-phase exact simplex only
};

/// Exact decision procedure. Strict rows a.x < b are rewritten as
/// a.x + t <= b with one shared slack t <= 1, and the system is feasible iff
/// some point has t > 0. A feasible answer always comes with a witness that
/// has been re-checked against every input constraint.
///
/// Elimination returns a back-substituted midpoint; the simplex returns the
/// vertex maximizing t. Both are deterministic.
FeasibilityResult solve_feasibility(const LinearSystem& sys, FeasibilityMethod method = FeasibilityMethod::kAuto);

}  // namespace hassett
