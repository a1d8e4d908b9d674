#include "clausecut/separation.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace clausecut {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<int> canonical_key(const Clause& c) {
  std::vector<int> key;
  key.reserve(c.literals().size());
  for (Lit l : c.literals()) key.push_back(l.dimacs());
  return key;
}

void check_partial_assignment(const PartialAssignment& a) {
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i].var() <= a[i - 1].var())
      throw std::invalid_argument(
          "partial assignment must be ascending with one literal per variable");
}

// Knock-out loop shared by the public minimize_core and the separation
// routines (which already hold an Unsat verdict for the full core).
PartialAssignment knock_out(SatEngine& engine, PartialAssignment core) {
  size_t i = 0;
  while (i < core.size()) {
    PartialAssignment test;
    test.reserve(core.size() - 1);
    for (size_t k = 0; k < core.size(); ++k)
      if (k != i) test.push_back(core[k]);
    if (engine.solve(test) == Verdict::Unsat)
      core.erase(core.begin() + static_cast<long>(i));  // redundant literal
    else
      ++i;
  }
  return core;
}

}  // namespace

PartialAssignment integral_assumptions(std::span<const double> xbar,
                                       double tol) {
  PartialAssignment out;
  for (size_t i = 0; i < xbar.size(); ++i) {
    const int var = static_cast<int>(i) + 1;
    if (xbar[i] >= 1.0 - tol)
      out.push_back(Lit::positive(var));
    else if (xbar[i] <= tol)
      out.push_back(Lit::negative(var));
  }
  return out;
}

double clause_lhs_at(const Clause& c, std::span<const double> xbar) {
  double sum = 0.0;
  for (Lit l : c.literals()) {
    const size_t i = static_cast<size_t>(l.var()) - 1;
    if (i >= xbar.size())
      throw std::invalid_argument("clause variable beyond xbar");
    sum += l.is_positive() ? xbar[i] : 1.0 - xbar[i];
  }
  return sum;
}

bool KnownClauseDb::insert(const Clause& c) {
  if (!keys_.insert(canonical_key(c)).second) return false;
  const size_t len = static_cast<size_t>(c.size());
  if (by_length_.size() <= len) by_length_.resize(len + 1);
  by_length_[len].push_back(c);
  ++count_;
  return true;
}

std::optional<Clause> KnownClauseDb::first_shortest_violated(
    std::span<const double> xbar, double eps) const {
  for (const auto& bucket : by_length_)
    for (const Clause& c : bucket)
      if (clause_lhs_at(c, xbar) < 1.0 - eps) return c;
  return std::nullopt;
}

std::optional<Clause> check_known_clauses_for_violation(
    const KnownClauseDb& db, std::span<const double> xbar, double eps) {
  return db.first_shortest_violated(xbar, eps);
}

PartialAssignment minimize_core(SatEngine& engine,
                                const PartialAssignment& core) {
  check_partial_assignment(core);
  if (engine.solve(core) == Verdict::Sat)
    throw std::invalid_argument("minimize_core: input core is satisfiable");
  return knock_out(engine, core);
}

ClauseCut cut_from_core(const PartialAssignment& core, CutOrigin origin) {
  if (core.empty())
    throw std::invalid_argument("cut_from_core: empty core");
  std::vector<Lit> lits;
  lits.reserve(core.size());
  for (Lit l : core) lits.push_back(~l);
  Clause clause(std::move(lits));
  LinearRow row = clause_inequality(clause);
  return ClauseCut{std::move(clause), std::move(row), origin,
                   static_cast<int>(core.size()),
                   static_cast<int>(core.size()), 0.0};
}

std::optional<ClauseCut> icca(SatEngine& engine, std::span<const double> xbar,
                              const SeparationOptions& opts) {
  const auto t0 = Clock::now();
  const PartialAssignment assumed =
      integral_assumptions(xbar, opts.integrality_tol);
  if (engine.solve(assumed) == Verdict::Sat) return std::nullopt;
  if (assumed.empty())
    throw std::logic_error("icca: formula is unsatisfiable");

  PartialAssignment core = assumed;
  if (opts.shrink_to_failed) {
    core = engine.failed_assumptions();
    std::sort(core.begin(), core.end());
  }
  core = knock_out(engine, core);

  ClauseCut cut = cut_from_core(core, CutOrigin::Icca);
  cut.length_before = static_cast<int>(assumed.size());
  cut.separation_seconds = seconds_since(t0);
  return cut;
}

std::optional<ClauseCut> lcca(SatEngine& engine, KnownClauseDb& db,
                              std::span<const double> xbar,
                              const SeparationOptions& opts) {
  const auto t0 = Clock::now();
  const PartialAssignment assumed =
      integral_assumptions(xbar, opts.integrality_tol);
  if (engine.solve(assumed) == Verdict::Unsat) {
    if (assumed.empty())
      throw std::logic_error("lcca: formula is unsatisfiable");
    // The refuted assumption set enters the database unminimized.
    std::vector<Lit> nogood;
    nogood.reserve(assumed.size());
    for (Lit l : assumed) nogood.push_back(~l);
    db.insert(Clause(std::move(nogood)));
  }
  for (const Clause& c : engine.get_learned_clauses()) db.insert(c);

  const auto selected = db.first_shortest_violated(xbar, opts.violation_eps);
  if (!selected) return std::nullopt;

  PartialAssignment core;
  core.reserve(selected->literals().size());
  for (Lit l : selected->literals()) core.push_back(~l);
  core = knock_out(engine, core);

  ClauseCut cut = cut_from_core(core, CutOrigin::Lcca);
  cut.length_before = selected->size();
  cut.separation_seconds = seconds_since(t0);
  return cut;
}

}  // namespace clausecut
