#include "hassett/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

namespace hassett {

std::string relation_symbol(Relation r) {
  switch (r) {
    case Relation::kLessEqual: return "<=";
    case Relation::kLess: return "<";
    case Relation::kEqual: return "=";
  }
  return "?";
}

void LinearSystem::add(Constraint c) {
  if (c.coefficients.size() != variables_) {
    throw std::invalid_argument("constraint has " + std::to_string(c.coefficients.size()) +
                                " coefficients, system has " + std::to_string(variables_) +
                                " variables");
  }
  constraints_.push_back(std::move(c));
}

void LinearSystem::add(std::vector<Rational> coefficients, Relation rel, Rational bound) {
  add(Constraint{std::move(coefficients), rel, std::move(bound)});
}

void LinearSystem::add_greater_equal(std::vector<Rational> coefficients, Rational bound) {
  for (auto& c : coefficients) c = -c;
  add(std::move(coefficients), Relation::kLessEqual, -bound);
}

void LinearSystem::add_greater(std::vector<Rational> coefficients, Rational bound) {
  for (auto& c : coefficients) c = -c;
  add(std::move(coefficients), Relation::kLess, -bound);
}

bool satisfies(const Constraint& c, const std::vector<Rational>& point) {
  Rational lhs;
  for (std::size_t i = 0; i < c.coefficients.size(); ++i) {
    if (!c.coefficients[i].is_zero()) lhs += c.coefficients[i] * point[i];
  }
  switch (c.relation) {
    case Relation::kLessEqual: return lhs <= c.bound;
    case Relation::kLess: return lhs < c.bound;
    case Relation::kEqual: return lhs == c.bound;
  }
  return false;
}

std::optional<std::size_t> LinearSystem::first_violation(const std::vector<Rational>& point) const {
  if (point.size() != variables_) {
    throw std::invalid_argument("point dimension does not match the system");
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (!satisfies(constraints_[i], point)) return i;
  }
  return std::nullopt;
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& point) const {
  return !first_violation(point).has_value();
}

LinearSystem prune_dominated(const LinearSystem& sys) {
  const std::size_t m = sys.variables();
  const auto& cs = sys.constraints();

  // x_i >= c with c >= 0, written as -x_i (<=|<) -c.
  std::vector<bool> nonneg(m, false);
  for (const auto& c : cs) {
    if (c.relation == Relation::kEqual) continue;
    std::size_t nz = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!c.coefficients[i].is_zero()) { ++nz; at = i; }
    }
    if (nz == 1 && c.coefficients[at].sign() < 0 && c.bound.sign() <= 0) nonneg[at] = true;
  }
  if (!std::all_of(nonneg.begin(), nonneg.end(), [](bool b) { return b; })) return sys;

  // c1 implies c2 when row2 <= row1 coordinatewise and the bound of c1 is
  // at least as tight.
  auto implies = [&](const Constraint& c1, const Constraint& c2) {
    if (c1.relation == Relation::kEqual || c2.relation == Relation::kEqual) return false;
    for (std::size_t i = 0; i < m; ++i) {
      if (c2.coefficients[i] > c1.coefficients[i]) return false;
    }
    if (c1.bound < c2.bound) return true;
    if (c1.bound > c2.bound) return false;
    return c1.relation == Relation::kLess || c2.relation == Relation::kLessEqual;
  };
  auto is_bound_row = [&](const Constraint& c) {
    std::size_t nz = 0;
    for (const auto& a : c.coefficients) nz += a.is_zero() ? 0 : 1;
    return nz <= 1;
  };

  std::vector<bool> dropped(cs.size(), false);
  for (std::size_t j = 0; j < cs.size(); ++j) {
    // Single-variable rows carry the nonnegativity the argument relies on.
    if (is_bound_row(cs[j])) continue;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i == j || dropped[i]) continue;
      if (implies(cs[i], cs[j])) {
        dropped[j] = true;
        break;
      }
    }
  }
  LinearSystem out(m);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!dropped[i]) out.add(cs[i]);
  }
  return out;
}

namespace {

class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

private:
  std::vector<std::uint64_t> words_;
};

// a . x <= b. Strict input rows carry the slack variable instead of a flag.
struct Row {
  std::vector<Rational> a;
  Rational b;
  Bits history;     // input rows this one was combined from
  Bits eliminated;  // variables cancelled along the derivation, explicitly or not
};

bool is_ground(const Row& r) {
  return std::all_of(r.a.begin(), r.a.end(), [](const Rational& x) { return x.is_zero(); });
}

void normalize(Row& r) {
  for (const auto& x : r.a) {
    if (!x.is_zero()) {
      const Rational scale = abs(x);
      for (auto& y : r.a) y /= scale;
      r.b /= scale;
      return;
    }
  }
}

// Two pruning regimes. kFast keeps one row per direction and applies
// Imbert's implicit-elimination count: quick on the weight systems but able
// to over-prune. kExact keeps a row unless another one in the same
// direction has a tighter bound and a smaller history, and uses Chernikov's
// count of explicit eliminations, which preserves the projection.
enum class Pruning { kFast, kExact };

class RowSet {
public:
  explicit RowSet(Pruning mode) : mode_(mode) {}

  // Returns false when r is a contradictory ground row.
  bool absorb(Row r) {
    if (is_ground(r)) return r.b.sign() >= 0;
    normalize(r);
    auto& same = index_[r.a];
    for (std::size_t k : same) {
      if (!alive_[k] || rows_[k].b > r.b) continue;
      if (mode_ == Pruning::kFast || rows_[k].history.subset_of(r.history)) return true;
    }
    for (std::size_t k : same) {
      if (!alive_[k] || r.b > rows_[k].b) continue;
      if (mode_ == Pruning::kFast || r.history.subset_of(rows_[k].history)) alive_[k] = false;
    }
    same.push_back(rows_.size());
    rows_.push_back(std::move(r));
    alive_.push_back(true);
    return true;
  }

  std::vector<Row> take() {
    std::vector<Row> out;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (alive_[k]) out.push_back(std::move(rows_[k]));
    }
    return out;
  }

private:
  Pruning mode_;
  std::vector<Row> rows_;
  std::vector<bool> alive_;
  std::map<std::vector<Rational>, std::vector<std::size_t>> index_;
};

struct Stage {
  std::size_t variable;
  std::vector<Row> rows;  // rows mentioning `variable` at the time it was eliminated
};

// Thrown when pruning lost part of the projection.
struct OverPruned {};
// Thrown when a stage grows past the row budget.
struct OverBudget {};

Rational pick_value(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo && hi) {
    if (*lo > *hi) throw OverPruned{};
    return (*lo + *hi) / Rational(2);
  }
  if (lo) return *lo;
  if (hi) return *hi;
  return Rational(0);
}

// Strict rows a.x < b become a.x + t <= b with a slack t in (0, 1]; the x
// variables are eliminated from the non-strict system, and it is feasible
// iff the bounds left on t admit some t > 0.
std::vector<Row> slack_rows(const LinearSystem& sys) {
  const std::size_t m = sys.variables();
  std::vector<Row> input;
  auto row = [&](const std::vector<Rational>& a, const Rational& b, bool slack) {
    Row r;
    r.a.assign(a.begin(), a.end());
    r.a.push_back(slack ? Rational(1) : Rational(0));
    r.b = b;
    return r;
  };
  for (const auto& c : sys.constraints()) {
    switch (c.relation) {
      case Relation::kLessEqual: input.push_back(row(c.coefficients, c.bound, false)); break;
      case Relation::kLess: input.push_back(row(c.coefficients, c.bound, true)); break;
      case Relation::kEqual: {
        input.push_back(row(c.coefficients, c.bound, false));
        std::vector<Rational> neg = c.coefficients;
        for (auto& x : neg) x = -x;
        input.push_back(row(neg, -c.bound, false));
        break;
      }
    }
  }
  input.push_back(row(std::vector<Rational>(m), Rational(1), true));  // t <= 1
  for (std::size_t i = 0; i < input.size(); ++i) {
    input[i].history = Bits(input.size());
    input[i].history.set(i);
    input[i].eliminated = Bits(m + 1);
  }
  return input;
}

// nullopt: infeasible, certified by a contradictory nonnegative combination.
std::optional<std::vector<Rational>> eliminate(const LinearSystem& sys, Pruning mode,
                                               std::optional<std::size_t> budget) {
  const std::size_t m = sys.variables();
  const std::size_t t = m;
  const std::size_t width = m + 1;

  std::vector<Row> rows;
  {
    RowSet set(mode);
    for (auto& r : slack_rows(sys)) {
      if (!set.absorb(std::move(r))) return std::nullopt;
    }
    rows = set.take();
  }

  std::vector<Stage> stages;
  std::vector<bool> done(m, false);
  for (;;) {
    // Pick the variable whose elimination creates the fewest new rows.
    std::optional<std::size_t> pick;
    long best = 0;
    for (std::size_t v = 0; v < m; ++v) {
      if (done[v]) continue;
      long pos = 0;
      long neg = 0;
      for (const auto& r : rows) {
        const int s = r.a[v].sign();
        pos += s > 0;
        neg += s < 0;
      }
      if (pos + neg == 0) continue;
      const long cost = pos * neg - pos - neg;
      if (!pick || cost < best) {
        pick = v;
        best = cost;
      }
    }
    if (!pick) break;
    const std::size_t v = *pick;
    done[v] = true;

    Stage stage{v, {}};
    RowSet next(mode);
    for (auto& r : rows) {
      if (r.a[v].is_zero()) {
        next.absorb(std::move(r));
      } else {
        stage.rows.push_back(std::move(r));
      }
    }
    std::vector<const Row*> upper;
    std::vector<const Row*> lower;
    for (const auto& r : stage.rows) (r.a[v].sign() > 0 ? upper : lower).push_back(&r);

    std::size_t produced = 0;
    for (const Row* p : upper) {
      for (const Row* q : lower) {
        const Rational cp = -q->a[v];  // > 0
        const Rational cq = p->a[v];   // > 0
        Row r;
        r.a.resize(width);
        r.eliminated = p->eliminated;
        r.eliminated |= q->eliminated;
        r.eliminated.set(v);
        for (std::size_t j = 0; j < width; ++j) {
          r.a[j] = cp * p->a[j] + cq * q->a[j];
          if (j != v && r.a[j].is_zero() && !(p->a[j].is_zero() && q->a[j].is_zero())) r.eliminated.set(j);
        }
        r.a[v] = Rational(0);
        r.b = cp * p->b + cq * q->b;
        r.history = p->history;
        r.history |= q->history;
        if (r.history.count() > r.eliminated.count() + 1) continue;
        if (!next.absorb(std::move(r))) return std::nullopt;
        if (budget && ++produced > *budget) throw OverBudget{};
      }
    }
    stages.push_back(std::move(stage));
    rows = next.take();
  }

  // Left: rows c * t <= b. Need some t > 0 within them; t <= 1 keeps t_hi set.
  std::optional<Rational> t_lo;
  std::optional<Rational> t_hi;
  for (const auto& r : rows) {
    const Rational limit = r.b / r.a[t];
    if (r.a[t].sign() > 0) {
      if (!t_hi || limit < *t_hi) t_hi = limit;
    } else if (!t_lo || limit > *t_lo) {
      t_lo = limit;
    }
  }
  if (!t_hi) throw OverPruned{};
  if (t_hi->sign() <= 0 || (t_lo && *t_lo > *t_hi)) return std::nullopt;

  std::vector<Rational> x(width, Rational(0));
  x[t] = *t_hi;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    const std::size_t v = it->variable;
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    for (const auto& r : it->rows) {
      Rational rest = r.b;
      for (std::size_t j = 0; j < width; ++j) {
        if (j != v && !r.a[j].is_zero()) rest -= r.a[j] * x[j];
      }
      const Rational limit = rest / r.a[v];
      if (r.a[v].sign() > 0) {
        if (!hi || limit < *hi) hi = limit;
      } else if (!lo || limit > *lo) {
        lo = limit;
      }
    }
    x[v] = pick_value(lo, hi);
  }
  x.pop_back();
  if (!sys.satisfied_by(x)) throw OverPruned{};
  return x;
}

// Dense two-phase simplex over the rationals with Bland's rule, so it
// terminates without tolerances. Variables: x = u - w with u, w >= 0, the
// slack t >= 0, one slack per inequality, one artificial per row whose
// starting basis is not feasible.
class Simplex {
public:
  explicit Simplex(const LinearSystem& sys) : m_(sys.variables()) {
    struct Eq {
      std::vector<Rational> a;  // over u, w, t
      Rational b;
      bool slack;
    };
    std::vector<Eq> eqs;
    for (const auto& c : sys.constraints()) {
      Eq e{std::vector<Rational>(2 * m_ + 1), c.bound, c.relation != Relation::kEqual};
      for (std::size_t k = 0; k < m_; ++k) {
        e.a[k] = c.coefficients[k];
        e.a[m_ + k] = -c.coefficients[k];
      }
      if (c.relation == Relation::kLess) e.a[2 * m_] = 1;
      eqs.push_back(std::move(e));
    }
    Eq cap{std::vector<Rational>(2 * m_ + 1), Rational(1), true};  // t <= 1
    cap.a[2 * m_] = 1;
    eqs.push_back(std::move(cap));

    const std::size_t rows = eqs.size();
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (const auto& e : eqs) {
      slacks += e.slack;
      artificials += !e.slack || e.b.sign() < 0;
    }
    first_artificial_ = 2 * m_ + 1 + slacks;
    cols_ = first_artificial_ + artificials;
    tab_.assign(rows, std::vector<Rational>(cols_ + 1));
    basis_.assign(rows, 0);

    std::size_t s = 2 * m_ + 1;
    std::size_t art = first_artificial_;
    for (std::size_t r = 0; r < rows; ++r) {
      auto& row = tab_[r];
      const bool flip = eqs[r].b.sign() < 0;
      for (std::size_t k = 0; k <= 2 * m_; ++k) row[k] = flip ? -eqs[r].a[k] : eqs[r].a[k];
      row[cols_] = flip ? -eqs[r].b : eqs[r].b;
      std::optional<std::size_t> slack;
      if (eqs[r].slack) {
        slack = s++;
        row[*slack] = flip ? -1 : 1;
      }
      if (slack && !flip) {
        basis_[r] = *slack;
      } else {
        row[art] = 1;
        basis_[r] = art++;
      }
    }
  }

  std::optional<std::vector<Rational>> solve() {
    // Phase one: maximize minus the sum of the artificials.
    std::vector<Rational> cost(cols_);
    for (std::size_t c = first_artificial_; c < cols_; ++c) cost[c] = -1;
    if (optimize(cost, cols_) < Rational(0)) return std::nullopt;
    drive_out_artificials();

    // Phase two: maximize t.
    std::vector<Rational> lift(cols_);
    lift[2 * m_] = 1;
    if (optimize(lift, first_artificial_).sign() <= 0) return std::nullopt;

    std::vector<Rational> z(cols_);
    for (std::size_t r = 0; r < tab_.size(); ++r) z[basis_[r]] = tab_[r][cols_];
    std::vector<Rational> x(m_);
    for (std::size_t k = 0; k < m_; ++k) x[k] = z[k] - z[m_ + k];
    return x;
  }

private:
  void pivot(std::size_t pr, std::size_t pc, std::vector<Rational>& obj) {
    auto& prow = tab_[pr];
    const Rational inv = Rational(1) / prow[pc];
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c <= cols_; ++c) {
      if (prow[c].is_zero()) continue;
      prow[c] *= inv;
      nz.push_back(c);
    }
    auto reduce = [&](std::vector<Rational>& row) {
      if (row[pc].is_zero()) return;
      const Rational f = row[pc];
      for (std::size_t c : nz) row[c] -= f * prow[c];
    };
    for (std::size_t r = 0; r < tab_.size(); ++r) {
      if (r != pr) reduce(tab_[r]);
    }
    reduce(obj);
    basis_[pr] = pc;
  }

  // Maximizes cost . z over columns below `limit`; returns the optimum.
  // Bounded here: phase one by zero, phase two by t <= 1.
  Rational optimize(const std::vector<Rational>& cost, std::size_t limit) {
    // obj[c] = reduced cost, obj[cols_] = minus the current value.
    std::vector<Rational> obj(cols_ + 1);
    for (std::size_t c = 0; c < cols_; ++c) obj[c] = cost[c];
    for (std::size_t r = 0; r < tab_.size(); ++r) {
      const Rational cb = cost[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (!tab_[r][c].is_zero()) obj[c] -= cb * tab_[r][c];
      }
    }
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < limit; ++c) {
        if (obj[c].sign() > 0) {
          enter = c;
          break;
        }
      }
      if (!enter) return -obj[cols_];
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < tab_.size(); ++r) {
        if (tab_[r][*enter].sign() <= 0) continue;
        const Rational ratio = tab_[r][cols_] / tab_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) throw std::logic_error("simplex: unbounded objective");
      pivot(*leave, *enter, obj);
    }
  }

  // Artificials left in the basis sit at zero; swap them for any real
  // column, or drop the row when it is a combination of the others.
  void drive_out_artificials() {
    std::vector<Rational> none(cols_ + 1);
    for (std::size_t r = 0; r < tab_.size();) {
      if (basis_[r] < first_artificial_) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t c = 0; c < first_artificial_; ++c) {
        if (!tab_[r][c].is_zero()) {
          col = c;
          break;
        }
      }
      if (col) {
        pivot(r, *col, none);
        ++r;
      } else {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  std::size_t m_;
  std::size_t first_artificial_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
};

std::optional<std::vector<Rational>> run_simplex(const LinearSystem& sys) {
  auto x = Simplex(sys).solve();
  if (x && !sys.satisfied_by(*x)) throw std::logic_error("simplex witness failed its check");
  return x;
}

std::optional<std::vector<Rational>> run_elimination(const LinearSystem& sys, std::optional<std::size_t> budget) {
  try {
    return eliminate(sys, Pruning::kFast, budget);
  } catch (const OverPruned&) {
  }
  try {
    return eliminate(sys, Pruning::kExact, budget);
  } catch (const OverPruned&) {
    throw std::logic_error("feasibility elimination lost part of the projection");
  }
}

constexpr std::size_t kRowBudget = 300;

}  // namespace

// An infeasible verdict always rests on a derived contradiction (or a
// phase-one optimum below zero) and a feasible one on a checked witness.
// The fast elimination pass is trusted whenever it finishes; the exact pass
// runs only when it loses part of the projection.
FeasibilityResult solve_feasibility(const LinearSystem& sys, FeasibilityMethod method) {
  std::optional<std::vector<Rational>> x;
  switch (method) {
    case FeasibilityMethod::kFourierMotzkin: x = run_elimination(sys, std::nullopt); break;
    case FeasibilityMethod::kSimplex: x = run_simplex(sys); break;
    case FeasibilityMethod::kAuto:
      try {
        x = run_elimination(sys, kRowBudget);
      } catch (const OverBudget&) {
        x = run_simplex(sys);
      }
      break;
  }
  if (!x) return {};
  return {true, std::move(*x)};
}

}  // namespace hassett
