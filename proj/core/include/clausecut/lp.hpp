#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace clausecut {

inline constexpr double kLpFeasTol = 1e-7;
inline constexpr double kLpPivotTol = 1e-9;

// Numerical breakdown (stall, singular pivot, failed post-check). Never
// reported as Optimal.
struct LpError : std::runtime_error {
  explicit LpError(const std::string& what) : std::runtime_error(what) {}
};

// Sparse ">=" inequality over structural variables: sum coef*x >= rhs.
// Terms are kept sorted by variable with no duplicates and no zeros.
class LinearRow {
 public:
  LinearRow(std::vector<std::pair<int, double>> terms, double rhs);
  // "<=" input, normalized to ">=" by negating both sides.
  static LinearRow less_equal(std::vector<std::pair<int, double>> terms,
                              double rhs);

  const std::vector<std::pair<int, double>>& terms() const { return terms_; }
  double rhs() const { return rhs_; }
  // Left-hand-side value at a point (index i holds variable i+1).
  double value_at(std::span<const double> x) const;

  bool operator==(const LinearRow&) const = default;

 private:
  std::vector<std::pair<int, double>> terms_;
  double rhs_;
};

// min objective . x  s.t. rows, bounds <= x <= upper (defaults [0,1]^n).
struct LpProblem {
  int num_variables = 0;
  std::vector<double> objective;  // size num_variables, index i -> var i+1
  std::vector<LinearRow> rows;
  std::vector<double> lower;  // per-variable bounds, within [0,1]
  std::vector<double> upper;

  LpProblem() = default;
  LpProblem(int num_variables, std::vector<double> objective,
            std::vector<LinearRow> rows);

  void fix_variable(int var, double value);  // lower = upper = value
};

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
  LpStatus status;
  std::vector<double> values;  // structural variables, index i -> var i+1
  double objective = 0.0;
};

// Appends a row; the result is solved from scratch (no warm start is kept in
// the problem itself).
LpProblem add_row(LpProblem p, LinearRow r);

// Bounded-variable primal simplex (dense tableau, two phases with artificials,
// Dantzig pricing with a Bland fallback once pivoting stalls). Deterministic:
// identical problems yield identical solutions. Optionally restarts the bound
// states of structural variables from a previous solution.
LpSolution solve_lp(const LpProblem& p,
                    const std::vector<double>* warm_values = nullptr);

}  // namespace clausecut
