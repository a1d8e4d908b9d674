#include "clausecut/sat_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clausecut {

namespace {

int to_internal(Lit l) { return 2 * (l.var() - 1) + (l.is_positive() ? 0 : 1); }

Lit to_external(int p) {
  int var = (p >> 1) + 1;
  return (p & 1) ? Lit::negative(var) : Lit::positive(var);
}

// Luby restart sequence: 1 1 2 1 1 2 4 ...
long long luby(int i) {
  int size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return 1LL << seq;
}

constexpr int kRestartBase = 100;
constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;

}  // namespace

SatEngine::SatEngine(const CnfFormula& f, uint64_t seed)
    : nvars_(f.num_variables()), seed_(seed) {
  watches_.resize(2 * static_cast<size_t>(nvars_));
  assigns_.assign(nvars_, -1);
  saved_phase_.assign(nvars_, 0);  // branch false first, like the clause signs expect
  level_.assign(nvars_, 0);
  reason_.assign(nvars_, -1);
  activity_.assign(nvars_, 0.0);
  heap_pos_.assign(nvars_, -1);
  seen_.assign(nvars_, 0);
  for (int v = 0; v < nvars_; ++v) heap_insert(v);

  for (const Clause& c : f.clauses()) {
    if (!ok_) break;
    // Root-level simplification of the input clause.
    std::vector<int> lits;
    bool satisfied = false;
    for (Lit l : c.literals()) {
      int p = to_internal(l);
      if (value(p) == 1) {
        satisfied = true;
        break;
      }
      if (value(p) == 0) continue;  // false at root, drop
      lits.push_back(p);
    }
    if (satisfied) continue;
    if (lits.empty()) {
      ok_ = false;
    } else if (lits.size() == 1) {
      if (value(lits[0]) == 0)
        ok_ = false;
      else if (value(lits[0]) < 0)
        unchecked_enqueue(lits[0], -1);
    } else {
      db_.push_back(Cls{std::move(lits)});
      attach(static_cast<int>(db_.size()) - 1);
    }
  }
  n_original_ = static_cast<int>(db_.size());
  reduce_limit_ = std::max<long long>(4000, 2LL * n_original_);
  if (ok_ && propagate() != -1) ok_ = false;
}

void SatEngine::attach(int cref) {
  const Cls& c = db_[cref];
  watches_[neg(c.lits[0])].push_back(Watcher{cref, c.lits[1]});
  watches_[neg(c.lits[1])].push_back(Watcher{cref, c.lits[0]});
}

void SatEngine::detach(int cref) {
  const Cls& c = db_[cref];
  for (int w : {neg(c.lits[0]), neg(c.lits[1])}) {
    auto& ws = watches_[w];
    for (size_t i = 0; i < ws.size(); ++i) {
      if (ws[i].cref == cref) {
        ws.erase(ws.begin() + static_cast<long>(i));
        break;
      }
    }
  }
}

void SatEngine::unchecked_enqueue(int p, int from) {
  assigns_[p >> 1] = static_cast<signed char>((p & 1) ^ 1);
  level_[p >> 1] = decision_level();
  reason_[p >> 1] = from;
  trail_.push_back(p);
  ++stats_.propagations;
}

int SatEngine::propagate() {
  int confl = -1;
  while (qhead_ < static_cast<int>(trail_.size())) {
    const int p = trail_[qhead_++];  // p just became true
    auto& ws = watches_[p];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      Cls& c = db_[w.cref];
      const int false_lit = neg(p);
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      ++i;
      const int first = c.lits[0];
      const Watcher moved{w.cref, first};
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = moved;
        continue;
      }
      bool relocated = false;
      for (size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != 0) {
          c.lits[1] = c.lits[k];
          c.lits[k] = false_lit;
          watches_[neg(c.lits[1])].push_back(moved);
          relocated = true;
          break;
        }
      }
      if (relocated) continue;
      ws[j++] = moved;  // clause stays watched here
      if (value(first) == 0) {
        confl = w.cref;
        qhead_ = static_cast<int>(trail_.size());
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        unchecked_enqueue(first, w.cref);
      }
    }
    ws.resize(j);
  }
  return confl;
}

void SatEngine::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[level]; --i) {
    const int v = trail_[i] >> 1;
    saved_phase_[v] = assigns_[v];
    assigns_[v] = -1;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = static_cast<int>(trail_.size());
}

int SatEngine::pick_branch() {
  while (!heap_.empty()) {
    const int v = heap_pop();
    if (assigns_[v] < 0) return 2 * v + (saved_phase_[v] ? 0 : 1);
  }
  return -1;
}

void SatEngine::bump_var(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_decrease(v);
}

void SatEngine::bump_clause(Cls& c) {
  c.act += cla_inc_;
  if (c.act > 1e20) {
    for (Cls& d : db_)
      if (d.learnt) d.act *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

void SatEngine::analyze(int confl, std::vector<int>& out, int& bt_level,
                        int& lbd) {
  out.clear();
  out.push_back(-1);  // slot for the asserting literal
  int path = 0;
  int p = -1;
  int index = static_cast<int>(trail_.size()) - 1;

  do {
    Cls& c = db_[confl];
    if (c.learnt) bump_clause(c);
    for (size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
      const int q = c.lits[k];
      const int v = q >> 1;
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump_var(v);
        if (level_[v] >= decision_level())
          ++path;
        else
          out.push_back(q);
      }
    }
    while (!seen_[trail_[index--] >> 1]) {
    }
    p = trail_[index + 1];
    confl = reason_[p >> 1];
    seen_[p >> 1] = 0;
    --path;
  } while (path > 0);
  out[0] = neg(p);

  // Deep minimization: drop literals implied by the rest of the clause.
  analyze_toclear_.assign(out.begin(), out.end());
  unsigned abstract = 0;
  for (size_t k = 1; k < out.size(); ++k)
    abstract |= 1u << (level_[out[k] >> 1] & 31);
  size_t kept = 1;
  for (size_t k = 1; k < out.size(); ++k) {
    const int v = out[k] >> 1;
    if (reason_[v] == -1 || !lit_redundant(out[k], abstract))
      out[kept++] = out[k];
  }
  out.resize(kept);
  for (int q : analyze_toclear_) seen_[q >> 1] = 0;

  if (out.size() == 1) {
    bt_level = 0;
  } else {
    size_t max_k = 1;
    for (size_t k = 2; k < out.size(); ++k)
      if (level_[out[k] >> 1] > level_[out[max_k] >> 1]) max_k = k;
    std::swap(out[1], out[max_k]);
    bt_level = level_[out[1] >> 1];
  }

  lbd = 0;
  {
    std::vector<int> lvls;
    lvls.reserve(out.size());
    for (int q : out) lvls.push_back(level_[q >> 1]);
    std::sort(lvls.begin(), lvls.end());
    lvls.erase(std::unique(lvls.begin(), lvls.end()), lvls.end());
    lbd = static_cast<int>(lvls.size());
  }
}

bool SatEngine::lit_redundant(int p, unsigned abstract_levels) {
  analyze_stack_.assign(1, p);
  const size_t top = analyze_toclear_.size();
  while (!analyze_stack_.empty()) {
    const int q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const Cls& c = db_[reason_[q >> 1]];
    for (size_t k = 1; k < c.lits.size(); ++k) {
      const int r = c.lits[k];
      const int v = r >> 1;
      if (seen_[v] || level_[v] == 0) continue;
      if (reason_[v] != -1 && ((1u << (level_[v] & 31)) & abstract_levels)) {
        seen_[v] = 1;
        analyze_stack_.push_back(r);
        analyze_toclear_.push_back(r);
      } else {
        for (size_t t = top; t < analyze_toclear_.size(); ++t)
          seen_[analyze_toclear_[t] >> 1] = 0;
        analyze_toclear_.resize(top);
        return false;
      }
    }
  }
  return true;
}

void SatEngine::analyze_final(int p) {
  // p is the assumption literal found false; collect the assumptions that
  // force it. Everything marked lives on the trail.
  failed_.clear();
  failed_.push_back(to_external(p));
  if (decision_level() == 0) return;
  seen_[p >> 1] = 1;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[0]; --i) {
    const int v = trail_[i] >> 1;
    if (!seen_[v]) continue;
    if (reason_[v] == -1) {
      failed_.push_back(to_external(trail_[i]));
    } else {
      const Cls& c = db_[reason_[v]];
      for (size_t k = 1; k < c.lits.size(); ++k)
        if (level_[c.lits[k] >> 1] > 0) seen_[c.lits[k] >> 1] = 1;
    }
    seen_[v] = 0;
  }
  seen_[p >> 1] = 0;
}

bool SatEngine::locked(int cref) const {
  const Cls& c = db_[cref];
  return value(c.lits[0]) == 1 && reason_[c.lits[0] >> 1] == cref;
}

void SatEngine::reduce_db() {
  // Keep binary, glue (lbd <= 2) and locked clauses; drop the worse half of
  // the rest, judged by lbd then activity.
  std::vector<int> cand;
  for (int i = n_original_; i < static_cast<int>(db_.size()); ++i) {
    const Cls& c = db_[i];
    if (c.deleted || c.lits.size() <= 2 || c.lbd <= 2 || locked(i)) continue;
    cand.push_back(i);
  }
  std::sort(cand.begin(), cand.end(), [this](int a, int b) {
    if (db_[a].lbd != db_[b].lbd) return db_[a].lbd > db_[b].lbd;
    if (db_[a].act != db_[b].act) return db_[a].act < db_[b].act;
    return a < b;
  });
  for (size_t i = 0; i < cand.size() / 2; ++i) {
    detach(cand[i]);
    db_[cand[i]].deleted = true;
    db_[cand[i]].lits.clear();
    db_[cand[i]].lits.shrink_to_fit();
    --live_learnts_;
  }
  reduce_limit_ = reduce_limit_ + reduce_limit_ / 3;
}

int SatEngine::search(long long restart_budget) {
  long long conflicts = 0;
  std::vector<int> learnt;

  for (;;) {
    const int confl = propagate();
    if (confl != -1) {
      ++stats_.conflicts;
      ++conflicts;
      if (decision_level() == 0) return 0;  // conflict without decisions

      int bt_level, lbd;
      analyze(confl, learnt, bt_level, lbd);

      // Log before attaching: the log survives database reduction.
      {
        std::vector<Lit> ext;
        ext.reserve(learnt.size());
        for (int q : learnt) ext.push_back(to_external(q));
        learned_log_.push_back(Clause(std::move(ext)));
        ++stats_.learned;
      }

      cancel_until(bt_level);
      if (learnt.size() == 1) {
        unchecked_enqueue(learnt[0], -1);
      } else {
        db_.push_back(Cls{learnt, cla_inc_, lbd, true, false});
        const int cref = static_cast<int>(db_.size()) - 1;
        attach(cref);
        ++live_learnts_;
        unchecked_enqueue(learnt[0], cref);
      }
      var_inc_ /= kVarDecay;
      cla_inc_ /= kClauseDecay;
      if (live_learnts_ >= reduce_limit_) reduce_db();
    } else {
      if (conflicts >= restart_budget) {
        ++stats_.restarts;
        cancel_until(0);
        return -1;
      }

      int next = -1;
      while (decision_level() < static_cast<int>(assumptions_.size())) {
        const int a = assumptions_[decision_level()];
        if (value(a) == 1) {
          new_decision_level();  // dummy level keeps positions aligned
        } else if (value(a) == 0) {
          analyze_final(a);
          return 0;
        } else {
          next = a;
          break;
        }
      }
      if (next == -1) {
        next = pick_branch();
        if (next == -1) return 1;  // every variable assigned
        ++stats_.decisions;
      }
      new_decision_level();
      unchecked_enqueue(next, -1);
    }
  }
}

Verdict SatEngine::solve(std::span<const Lit> assumptions) {
  // Validate before touching state: bad assumption sets are caller errors.
  std::vector<signed char> mark(nvars_, -1);
  for (Lit l : assumptions) {
    if (l.var() < 1 || l.var() > nvars_)
      throw std::invalid_argument("assumption variable out of range");
    const signed char pol = l.is_positive() ? 1 : 0;
    const signed char prev = mark[l.var() - 1];
    if (prev == pol) throw std::invalid_argument("duplicate assumption");
    if (prev != -1) throw std::invalid_argument("conflicting assumptions");
    mark[l.var() - 1] = pol;
  }

  ++stats_.solves;
  model_valid_ = false;
  failed_.clear();
  if (!ok_) return Verdict::Unsat;

  assumptions_.clear();
  for (Lit l : assumptions) assumptions_.push_back(to_internal(l));

  int status = -1;
  for (int restarts = 0; status == -1; ++restarts)
    status = search(luby(restarts) * kRestartBase);

  if (status == 1) {
    model_ = Assignment(nvars_);
    for (int v = 0; v < nvars_; ++v) model_.set(v + 1, assigns_[v] == 1);
    model_valid_ = true;
  } else if (failed_.empty()) {
    // Conflict without any assumption involved: the formula itself is Unsat.
    ok_ = false;
  }
  cancel_until(0);
  assumptions_.clear();
  return status == 1 ? Verdict::Sat : Verdict::Unsat;
}

const Assignment& SatEngine::model() const {
  if (!model_valid_) throw std::logic_error("no model: last solve was not Sat");
  return model_;
}

std::vector<Clause> SatEngine::get_learned_clauses() {
  std::vector<Clause> out(learned_log_.begin() + static_cast<long>(log_mark_),
                          learned_log_.end());
  log_mark_ = learned_log_.size();
  return out;
}

bool SatEngine::is_implied(const Clause& c) {
  std::vector<Lit> assumps;
  assumps.reserve(c.literals().size());
  for (Lit l : c.literals()) assumps.push_back(~l);
  return solve(assumps) == Verdict::Unsat;
}

void SatEngine::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_sift_up(heap_pos_[v]);
}

void SatEngine::heap_decrease(int v) { heap_sift_up(heap_pos_[v]); }

int SatEngine::heap_pop() {
  const int v = heap_[0];
  heap_[0] = heap_.back();
  heap_pos_[heap_[0]] = 0;
  heap_.pop_back();
  heap_pos_[v] = -1;
  if (!heap_.empty()) heap_sift_down(0);
  return v;
}

void SatEngine::heap_sift_up(int i) {
  const int v = heap_[i];
  while (i > 0) {
    const int parent = (i - 1) >> 1;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void SatEngine::heap_sift_down(int i) {
  const int v = heap_[i];
  const int sz = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * i + 1;
    if (child >= sz) break;
    if (child + 1 < sz && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

}  // namespace clausecut
