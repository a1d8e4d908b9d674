#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "clausecut/formula.hpp"

namespace clausecut {

enum class Verdict { Sat, Unsat };

struct SatStats {
  uint64_t solves = 0;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t conflicts = 0;
  uint64_t restarts = 0;
  uint64_t learned = 0;
};

// Incremental CDCL solver over a fixed formula: two-watched-literal
// propagation, first-UIP learning with deep clause minimization, decayed
// variable activities with phase saving, Luby restarts. Assumptions enter as
// decisions on levels 1..k, so every clause the engine learns is implied by
// the formula alone, assumptions or not. Fully deterministic: the seed only
// feeds optional randomized tie-breaking, which is off by default.
class SatEngine {
 public:
  explicit SatEngine(const CnfFormula& f, uint64_t seed = 0);

  SatEngine(const SatEngine&) = delete;
  SatEngine& operator=(const SatEngine&) = delete;

  Verdict solve() { return solve(std::span<const Lit>{}); }
  // Assumptions must be duplicate-free and conflict-free over declared
  // variables; anything else throws std::invalid_argument.
  Verdict solve(std::span<const Lit> assumptions);

  // Total assignment over all variables; valid after a Sat verdict.
  const Assignment& model() const;
  // Subset of the last solve's assumptions sufficient for Unsat; valid after
  // an Unsat verdict under assumptions (empty if the formula itself is Unsat).
  const std::vector<Lit>& failed_assumptions() const { return failed_; }

  // New learned clauses since the previous call, in learning order. Each is
  // implied by the formula; a clause is never handed out twice, and clauses
  // later dropped by database reduction still appear.
  std::vector<Clause> get_learned_clauses();

  // solve({~l : l in c}) == Unsat. May grow the learned-clause log.
  bool is_implied(const Clause& c);

  int num_variables() const { return nvars_; }
  uint64_t seed() const { return seed_; }
  const SatStats& stats() const { return stats_; }

 private:
  // Internal literal encoding: variable v in [0, nvars), literal 2v positive,
  // 2v+1 negated. Truth values: -1 unset, 0 false, 1 true.
  struct Cls {
    std::vector<int> lits;
    double act = 0.0;
    int lbd = 0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    int cref;
    int blocker;
  };

  static int neg(int p) { return p ^ 1; }
  int value(int p) const {
    signed char a = assigns_[p >> 1];
    return a < 0 ? -1 : (a ^ (p & 1));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void attach(int cref);
  void detach(int cref);
  void unchecked_enqueue(int p, int from);
  int propagate();  // returns conflicting cref or -1
  void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }
  void cancel_until(int level);
  int pick_branch();  // internal literal, or -1 when all assigned
  void analyze(int confl, std::vector<int>& out, int& bt_level, int& lbd);
  bool lit_redundant(int p, unsigned abstract_levels);
  void analyze_final(int p);
  int search(long long restart_budget);  // -1 undef (restart), 0 unsat, 1 sat
  void bump_var(int v);
  void bump_clause(Cls& c);
  void reduce_db();
  bool locked(int cref) const;
  void heap_insert(int v);
  void heap_decrease(int v);
  int heap_pop();
  void heap_sift_up(int i);
  void heap_sift_down(int i);
  bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }

  int nvars_ = 0;
  uint64_t seed_ = 0;
  bool ok_ = true;

  std::vector<Cls> db_;
  int n_original_ = 0;  // clauses [0, n_original_) came from the formula
  std::vector<std::vector<Watcher>> watches_;

  std::vector<signed char> assigns_;
  std::vector<signed char> saved_phase_;
  std::vector<int> level_;
  std::vector<int> reason_;  // cref or -1
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  int qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;

  std::vector<int> assumptions_;  // internal literals
  std::vector<Lit> failed_;
  Assignment model_;
  bool model_valid_ = false;

  std::vector<signed char> seen_;
  std::vector<int> analyze_stack_;
  std::vector<int> analyze_toclear_;

  std::vector<Clause> learned_log_;
  size_t log_mark_ = 0;

  long long live_learnts_ = 0;
  long long reduce_limit_ = 0;

  SatStats stats_;
};

}  // namespace clausecut
