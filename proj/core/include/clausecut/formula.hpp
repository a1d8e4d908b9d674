#pragma once

#include <cstdlib>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace clausecut {

class LinearRow;  // lp.hpp

// Literal over a 1-based variable, DIMACS-encoded: +v positive, -v negated.
class Lit {
 public:
  explicit Lit(int dimacs_code) : code_(dimacs_code) {
    if (code_ == 0) throw std::invalid_argument("literal code must be nonzero");
  }
  static Lit positive(int var) { return Lit(var); }
  static Lit negative(int var) { return Lit(-var); }

  int var() const { return std::abs(code_); }
  bool is_positive() const { return code_ > 0; }
  int dimacs() const { return code_; }
  Lit operator~() const { return Lit(-code_); }

  bool operator==(const Lit&) const = default;

 private:
  int code_;
};

// Canonical order: by variable index, negated phase first within a variable.
inline bool operator<(Lit a, Lit b) {
  if (a.var() != b.var()) return a.var() < b.var();
  return !a.is_positive() && b.is_positive();
}

// Disjunction of literals. Construction normalizes: literals are sorted by
// variable and deduplicated; empty or tautological input is rejected.
class Clause {
 public:
  explicit Clause(std::vector<Lit> lits);
  Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}

  std::span<const Lit> literals() const { return lits_; }
  int size() const { return static_cast<int>(lits_.size()); }
  int max_var() const { return lits_.back().var(); }
  bool contains(Lit l) const;

  bool operator==(const Clause&) const = default;

 private:
  std::vector<Lit> lits_;
};

// CNF over variables 1..num_variables. Clauses may use only declared variables.
class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(int num_variables);

  int num_variables() const { return num_variables_; }
  // Grows the variable range; shrinking below a used variable is an error.
  void set_num_variables(int n);
  void add_clause(Clause c);
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool operator==(const CnfFormula&) const = default;

 private:
  int num_variables_ = 0;
  int max_used_var_ = 0;
  std::vector<Clause> clauses_;
};

// Minimization instance: min sum(objective[v] * x_v) over assignments
// satisfying the formula. objective is dense, indexed by variable (entry 0
// unused); missing/zero entries contribute nothing.
struct CnfOptInstance {
  CnfFormula formula;
  std::vector<long long> objective;

  CnfOptInstance() = default;
  explicit CnfOptInstance(CnfFormula f)
      : formula(std::move(f)), objective(formula.num_variables() + 1, 0) {}

  long long coefficient(int var) const;
  void set_coefficient(int var, long long c);

  bool operator==(const CnfOptInstance&) const = default;
};

struct SoftClause {
  Clause clause;
  long long weight;  // >= 1

  bool operator==(const SoftClause&) const = default;
};

// Weighted partial MaxSAT instance: hard clauses must hold, each falsified
// soft clause costs its weight.
struct WcnfInstance {
  int num_variables = 0;
  std::vector<Clause> hard;
  std::vector<SoftClause> soft;

  void add_hard(Clause c);
  void add_soft(Clause c, long long weight);

  bool operator==(const WcnfInstance&) const = default;
};

// Partial truth assignment over variables 1..num_variables.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_variables)
      : vals_(static_cast<size_t>(num_variables) + 1, -1) {}

  int num_variables() const { return static_cast<int>(vals_.size()) - 1; }
  bool has(int var) const {
    return var >= 1 && var < static_cast<int>(vals_.size()) && vals_[var] >= 0;
  }
  bool value(int var) const;
  void set(int var, bool value);
  void unset(int var);
  // True literal under this assignment? Variable must be assigned.
  bool satisfies(Lit l) const { return value(l.var()) == l.is_positive(); }

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<signed char> vals_;  // -1 unset, 0 false, 1 true
};

struct Evaluation {
  bool satisfies_formula;
  long long objective;
};

// Checks the formula clause by clause and sums the objective. The assignment
// must cover every variable the instance uses (clauses or nonzero objective).
Evaluation evaluate(const Assignment& a, const CnfOptInstance& p);

// MaxSAT -> CNFOPT: one fresh relaxation variable per soft clause, in soft
// order; minimizing the weighted sum of relaxation variables minimizes the
// falsified soft weight.
CnfOptInstance wcnf_to_cnfopt(const WcnfInstance& w);

// CNFOPT -> MaxSAT: positive coefficient c on x becomes soft (-x) weight c,
// negative becomes soft (x) weight -c plus a constant offset c. For every
// total assignment: objective = falsified soft weight + constant_offset.
struct WcnfEncoding {
  WcnfInstance wcnf;
  long long constant_offset;
};
WcnfEncoding cnfopt_to_wcnf(const CnfOptInstance& p);

// Row form of a clause over 0/1 variables: positive literal contributes +x,
// negated literal 1-x; the row is sum >= 1 with constants moved to the
// right-hand side (so rhs = 1 - #negated).
LinearRow clause_inequality(const Clause& c);

}  // namespace clausecut
