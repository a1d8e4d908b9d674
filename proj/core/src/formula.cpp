#include "clausecut/formula.hpp"

#include <algorithm>

#include "clausecut/lp.hpp"

namespace clausecut {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  if (lits_.empty()) throw std::invalid_argument("empty clause");
  std::sort(lits_.begin(), lits_.end());
  for (size_t i = 1; i < lits_.size();) {
    if (lits_[i] == lits_[i - 1]) {
      lits_.erase(lits_.begin() + static_cast<long>(i));
    } else if (lits_[i].var() == lits_[i - 1].var()) {
      throw std::invalid_argument("tautological clause on variable " +
                                  std::to_string(lits_[i].var()));
    } else {
      ++i;
    }
  }
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

CnfFormula::CnfFormula(int num_variables) {
  if (num_variables < 0) throw std::invalid_argument("negative variable count");
  num_variables_ = num_variables;
}

void CnfFormula::set_num_variables(int n) {
  if (n < max_used_var_)
    throw std::invalid_argument("variable count below a used variable");
  num_variables_ = n;
}

void CnfFormula::add_clause(Clause c) {
  if (c.max_var() > num_variables_)
    throw std::invalid_argument("clause uses variable " +
                                std::to_string(c.max_var()) +
                                " beyond declared count " +
                                std::to_string(num_variables_));
  max_used_var_ = std::max(max_used_var_, c.max_var());
  clauses_.push_back(std::move(c));
}

long long CnfOptInstance::coefficient(int var) const {
  if (var < 1 || var >= static_cast<int>(objective.size())) return 0;
  return objective[var];
}

void CnfOptInstance::set_coefficient(int var, long long c) {
  if (var < 1 || var > formula.num_variables())
    throw std::invalid_argument("objective variable out of range");
  objective.resize(formula.num_variables() + 1, 0);
  objective[var] = c;
}

void WcnfInstance::add_hard(Clause c) {
  num_variables = std::max(num_variables, c.max_var());
  hard.push_back(std::move(c));
}

void WcnfInstance::add_soft(Clause c, long long weight) {
  if (weight < 1) throw std::invalid_argument("soft weight must be >= 1");
  num_variables = std::max(num_variables, c.max_var());
  soft.push_back(SoftClause{std::move(c), weight});
}

bool Assignment::value(int var) const {
  if (!has(var))
    throw std::invalid_argument("variable " + std::to_string(var) +
                                " is unassigned");
  return vals_[var] == 1;
}

void Assignment::set(int var, bool value) {
  if (var < 1 || var >= static_cast<int>(vals_.size()))
    throw std::invalid_argument("assignment variable out of range");
  vals_[var] = value ? 1 : 0;
}

void Assignment::unset(int var) {
  if (var >= 1 && var < static_cast<int>(vals_.size())) vals_[var] = -1;
}

Evaluation evaluate(const Assignment& a, const CnfOptInstance& p) {
  bool sat = true;
  for (const Clause& c : p.formula.clauses()) {
    bool clause_sat = false;
    for (Lit l : c.literals()) {
      if (!a.has(l.var()))
        throw std::invalid_argument("assignment misses variable " +
                                    std::to_string(l.var()));
      if (a.satisfies(l)) clause_sat = true;
    }
    if (!clause_sat) sat = false;
  }
  long long obj = 0;
  for (int v = 1; v < static_cast<int>(p.objective.size()); ++v) {
    if (p.objective[v] == 0) continue;
    if (!a.has(v))
      throw std::invalid_argument("assignment misses objective variable " +
                                  std::to_string(v));
    if (a.value(v)) obj += p.objective[v];
  }
  return Evaluation{sat, obj};
}

CnfOptInstance wcnf_to_cnfopt(const WcnfInstance& w) {
  CnfFormula f(w.num_variables + static_cast<int>(w.soft.size()));
  for (const Clause& c : w.hard) f.add_clause(c);
  int next_aux = w.num_variables;
  std::vector<std::pair<int, long long>> coefs;
  for (const SoftClause& s : w.soft) {
    ++next_aux;
    std::vector<Lit> lits(s.clause.literals().begin(),
                          s.clause.literals().end());
    lits.push_back(Lit::positive(next_aux));
    f.add_clause(Clause(std::move(lits)));
    coefs.emplace_back(next_aux, s.weight);
  }
  CnfOptInstance p(std::move(f));
  for (auto [v, c] : coefs) p.set_coefficient(v, c);
  return p;
}

WcnfEncoding cnfopt_to_wcnf(const CnfOptInstance& p) {
  WcnfEncoding enc;
  enc.constant_offset = 0;
  enc.wcnf.num_variables = p.formula.num_variables();
  enc.wcnf.hard = p.formula.clauses();
  for (int v = 1; v < static_cast<int>(p.objective.size()); ++v) {
    long long c = p.objective[v];
    if (c > 0) {
      enc.wcnf.add_soft(Clause{Lit::negative(v)}, c);
    } else if (c < 0) {
      enc.wcnf.add_soft(Clause{Lit::positive(v)}, -c);
      enc.constant_offset += c;
    }
  }
  return enc;
}

LinearRow clause_inequality(const Clause& c) {
  std::vector<std::pair<int, double>> terms;
  terms.reserve(c.literals().size());
  int negated = 0;
  for (Lit l : c.literals()) {
    if (l.is_positive()) {
      terms.emplace_back(l.var(), 1.0);
    } else {
      terms.emplace_back(l.var(), -1.0);
      ++negated;
    }
  }
  return LinearRow(std::move(terms), 1.0 - negated);
}

}  // namespace clausecut
