#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "clausecut/formula.hpp"
#include "clausecut/lp.hpp"
#include "clausecut/sat_engine.hpp"

namespace clausecut {

inline constexpr double kIntegralityTol = 1e-6;
inline constexpr double kCutViolationTol = 1e-6;

// Literals of a partial assignment, at most one per variable, ascending by
// variable index.
using PartialAssignment = std::vector<Lit>;

// Literals for the components of xbar within tol of 0 or 1 (xbar[i] is the
// value of variable i+1).
PartialAssignment integral_assumptions(std::span<const double> xbar,
                                       double tol = kIntegralityTol);

// Clause inequality left-hand side at a fractional point: positive literal
// contributes x, negated 1-x. The clause row is violated iff this is < 1.
double clause_lhs_at(const Clause& c, std::span<const double> xbar);

enum class CutOrigin { Icca, Lcca };

// A clause implied by the formula together with its row form. The row cuts
// off the fractional point it was separated from but no satisfying 0/1 point.
struct ClauseCut {
  Clause clause;
  LinearRow row;
  CutOrigin origin;
  int length_before;   // clause length before core minimization
  int length_after;    // == clause.size()
  double separation_seconds;
};

// Clauses known to be implied by the formula, deduplicated by canonical
// (sorted) literal sequence, grouped by length with insertion order kept.
class KnownClauseDb {
 public:
  bool insert(const Clause& c);  // false if already present
  size_t size() const { return count_; }
  // First-inserted clause of minimum length whose left-hand side at xbar is
  // below 1 - eps.
  std::optional<Clause> first_shortest_violated(
      std::span<const double> xbar, double eps = kCutViolationTol) const;

 private:
  std::vector<std::vector<Clause>> by_length_;
  std::set<std::vector<int>> keys_;
  size_t count_ = 0;
};

std::optional<Clause> check_known_clauses_for_violation(
    const KnownClauseDb& db, std::span<const double> xbar,
    double eps = kCutViolationTol);

struct SeparationOptions {
  double integrality_tol = kIntegralityTol;
  double violation_eps = kCutViolationTol;
  // Seed the ICCA knock-out loop from the engine's failed-assumption subset
  // instead of the full assumption set. Off by default.
  bool shrink_to_failed = false;
};

// Deletion-based minimization: literals are tested in input order (ascending
// variable) and removals take effect immediately, so the result is a minimal
// unsatisfiable core. Verifies that solve(core) is Unsat first; a satisfiable
// input is a caller error.
PartialAssignment minimize_core(SatEngine& engine,
                                const PartialAssignment& core);

// Cut for the clause "or over ~l for l in core". Lengths are initialized to
// the clause length; callers that minimized a longer ancestor overwrite
// length_before.
ClauseCut cut_from_core(const PartialAssignment& core, CutOrigin origin);

// Integral-components separation: assume the integral part of xbar; if the
// engine refutes it, return the cut of the minimized no-good. Returns nothing
// when the assumptions extend to a model.
std::optional<ClauseCut> icca(SatEngine& engine, std::span<const double> xbar,
                              const SeparationOptions& opts = {});

// Learned-clause separation: refuted assumption sets and everything the
// engine has learned feed the database; the first-inserted shortest violated
// database clause is minimized into the cut.
std::optional<ClauseCut> lcca(SatEngine& engine, KnownClauseDb& db,
                              std::span<const double> xbar,
                              const SeparationOptions& opts = {});

}  // namespace clausecut
