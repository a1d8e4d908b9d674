#include "clausecut/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace clausecut {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LinearRow::LinearRow(std::vector<std::pair<int, double>> terms, double rhs)
    : terms_(std::move(terms)), rhs_(rhs) {
  std::sort(terms_.begin(), terms_.end());
  size_t out = 0;
  for (size_t i = 0; i < terms_.size();) {
    int var = terms_[i].first;
    if (var < 1) throw std::invalid_argument("row variable must be >= 1");
    double coef = 0.0;
    while (i < terms_.size() && terms_[i].first == var) coef += terms_[i++].second;
    if (coef != 0.0) terms_[out++] = {var, coef};
  }
  terms_.resize(out);
  if (terms_.empty())
    throw std::invalid_argument("row needs at least one nonzero coefficient");
}

LinearRow LinearRow::less_equal(std::vector<std::pair<int, double>> terms,
                                double rhs) {
  for (auto& [v, c] : terms) c = -c;
  return LinearRow(std::move(terms), -rhs);
}

double LinearRow::value_at(std::span<const double> x) const {
  double sum = 0.0;
  for (auto [v, c] : terms_) sum += c * x[static_cast<size_t>(v) - 1];
  return sum;
}

LpProblem::LpProblem(int num_variables_, std::vector<double> objective_,
                     std::vector<LinearRow> rows_)
    : num_variables(num_variables_),
      objective(std::move(objective_)),
      rows(std::move(rows_)),
      lower(num_variables_, 0.0),
      upper(num_variables_, 1.0) {
  if (num_variables < 0) throw std::invalid_argument("negative variable count");
  if (static_cast<int>(objective.size()) != num_variables)
    throw std::invalid_argument("objective size mismatch");
  for (const LinearRow& r : rows)
    if (r.terms().back().first > num_variables)
      throw std::invalid_argument("row variable out of range");
}

void LpProblem::fix_variable(int var, double value) {
  if (var < 1 || var > num_variables)
    throw std::invalid_argument("fixed variable out of range");
  lower[var - 1] = value;
  upper[var - 1] = value;
}

LpProblem add_row(LpProblem p, LinearRow r) {
  if (r.terms().back().first > p.num_variables)
    throw std::invalid_argument("row variable out of range");
  p.rows.push_back(std::move(r));
  return p;
}

namespace {

// Bounded-variable primal simplex on a dense tableau.
//
// Column layout: [0,n) structural, [n,n+m) surplus (one per ">=" row, so
// a.x - s = rhs with s >= 0), then one artificial column per row whose
// surplus would start negative. Nonbasic columns rest at a finite bound;
// basic values are kept in beta and updated incrementally, with periodic
// recomputation from B^-1 b for hygiene.
struct Simplex {
  const LpProblem& p;
  int n, m, nart = 0, total = 0;
  std::vector<double> T;      // m x total, row-major; starts as B^-1 A
  std::vector<double> rhs;    // B^-1 b
  std::vector<double> lb, ub, val;  // per column; val is the nonbasic resting value
  std::vector<double> cost;   // reduced costs of the active phase
  std::vector<int> basis;     // row -> basic column
  std::vector<signed char> st;  // 0 at lower, 1 at upper, 2 basic
  std::vector<double> beta;   // value of basis[i]
  long long pivots = 0;
  int degen = 0;
  bool bland = false;

  static constexpr signed char kLower = 0, kUpper = 1, kBasic = 2;

  explicit Simplex(const LpProblem& prob, const std::vector<double>* warm)
      : p(prob), n(prob.num_variables), m(static_cast<int>(prob.rows.size())) {
    // Structural columns rest at the bound their cost prefers (warm values,
    // when given, override the side). This rule is part of the deterministic
    // tie-break: degenerate optima always come out the same way.
    std::vector<signed char> start(n, kLower);
    for (int j = 0; j < n; ++j) {
      if (p.lower[j] >= p.upper[j]) continue;  // fixed
      if (warm && static_cast<int>(warm->size()) == n)
        start[j] = ((*warm)[j] >= 0.5) ? kUpper : kLower;
      else
        start[j] = (p.objective[j] > 0.0) ? kLower : kUpper;
    }

    std::vector<double> resid(m);  // a.x0 - rhs per row
    std::vector<double> x0(n);
    for (int j = 0; j < n; ++j)
      x0[j] = (start[j] == kUpper) ? p.upper[j] : p.lower[j];
    for (int i = 0; i < m; ++i)
      resid[i] = p.rows[i].value_at(x0) - p.rows[i].rhs();
    for (int i = 0; i < m; ++i)
      if (resid[i] < 0.0) ++nart;

    total = n + m + nart;
    T.assign(static_cast<size_t>(m) * total, 0.0);
    rhs.assign(m, 0.0);
    lb.assign(total, 0.0);
    ub.assign(total, kInf);
    val.assign(total, 0.0);
    basis.assign(m, -1);
    st.assign(total, kLower);
    beta.assign(m, 0.0);

    for (int j = 0; j < n; ++j) {
      lb[j] = p.lower[j];
      ub[j] = p.upper[j];
      st[j] = start[j];
      val[j] = x0[j];
    }

    int art = n + m;
    for (int i = 0; i < m; ++i) {
      // Row i holds either its surplus (resid >= 0, equation negated so the
      // basic column reads +1) or a fresh artificial.
      const bool negate = resid[i] >= 0.0;
      const double sign = negate ? -1.0 : 1.0;
      for (auto [v, c] : p.rows[i].terms()) at(i, v - 1) = sign * c;
      at(i, n + i) = negate ? 1.0 : -1.0;
      rhs[i] = sign * p.rows[i].rhs();
      if (negate) {
        basis[i] = n + i;
        beta[i] = resid[i];
      } else {
        at(i, art) = 1.0;
        basis[i] = art++;
        beta[i] = -resid[i];
      }
      st[basis[i]] = kBasic;
    }
  }

  double& at(int i, int j) { return T[static_cast<size_t>(i) * total + j]; }
  double* row(int i) { return T.data() + static_cast<size_t>(i) * total; }

  bool is_artificial(int j) const { return j >= n + m; }
  double range(int j) const { return ub[j] - lb[j]; }

  // cost[j] = c[j] - c_B . T[:,j], computed fresh at each phase start and
  // maintained through pivots afterwards.
  void compute_cost(bool phase1) {
    cost.assign(total, 0.0);
    if (phase1) {
      for (int j = n + m; j < total; ++j) cost[j] = 1.0;
    } else {
      for (int j = 0; j < n; ++j) cost[j] = p.objective[j];
    }
    for (int i = 0; i < m; ++i) {
      const int b = basis[i];
      double cb = 0.0;
      if (phase1 ? is_artificial(b) : b < n)
        cb = phase1 ? 1.0 : p.objective[b];
      if (cb == 0.0) continue;
      const double* tr = row(i);
      for (int j = 0; j < total; ++j) cost[j] -= cb * tr[j];
    }
  }

  int pick_entering() const {
    int best = -1;
    double best_score = kLpPivotTol;
    for (int j = 0; j < total; ++j) {
      if (st[j] == kBasic || range(j) <= 0.0) continue;
      const double d = cost[j];
      const bool improving = (st[j] == kLower) ? d < -kLpPivotTol
                                               : d > kLpPivotTol;
      if (!improving) continue;
      if (bland) return j;
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        best = j;
      }
    }
    return best;
  }

  void refresh_beta() {
    for (int i = 0; i < m; ++i) {
      double b = rhs[i];
      const double* tr = row(i);
      for (int j = 0; j < total; ++j)
        if (st[j] != kBasic && val[j] != 0.0) b -= tr[j] * val[j];
      beta[i] = b;
    }
  }

  // One simplex iteration: returns false when the phase is optimal.
  bool iterate() {
    const int jin = pick_entering();
    if (jin < 0) return false;
    const double dir = (st[jin] == kLower) ? 1.0 : -1.0;

    // Ratio test: smallest step that drives a basic variable to one of its
    // bounds, against the entering variable's own range. Ties prefer the
    // largest pivot magnitude, then the lowest row index.
    double best_t = range(jin);  // may be +inf for surplus columns
    int leave = -1;
    bool leave_upper = false;
    for (int i = 0; i < m; ++i) {
      const double coef = dir * at(i, jin);
      const int b = basis[i];
      double t;
      bool hits_upper;
      if (coef > kLpPivotTol) {
        t = (beta[i] - lb[b]) / coef;
        hits_upper = false;
      } else if (coef < -kLpPivotTol && ub[b] < kInf) {
        t = (ub[b] - beta[i]) / (-coef);
        hits_upper = true;
      } else {
        continue;
      }
      if (t < 0.0) t = 0.0;
      bool better;
      if (t < best_t - kLpPivotTol) {
        better = true;
      } else if (t < best_t + kLpPivotTol && leave >= 0) {
        // Near-tie: Dantzig mode keeps the numerically strongest pivot;
        // Bland mode needs the lowest leaving index for its termination
        // guarantee.
        better = bland ? basis[i] < basis[leave]
                       : std::abs(at(i, jin)) > std::abs(at(leave, jin));
      } else {
        better = false;
      }
      if (better) {
        best_t = t;
        leave = i;
        leave_upper = hits_upper;
      }
    }

    if (leave < 0) {
      if (range(jin) == kInf)
        throw LpError("unbounded pivot direction (numerical breakdown)");
      // Entire step is a bound flip of the entering column.
      const double t = range(jin);
      for (int i = 0; i < m; ++i) beta[i] -= dir * t * at(i, jin);
      st[jin] = (st[jin] == kLower) ? kUpper : kLower;
      val[jin] = (st[jin] == kUpper) ? ub[jin] : lb[jin];
      bump(t);
      return true;
    }

    const double t = best_t;
    const double piv = at(leave, jin);
    if (std::abs(piv) <= kLpPivotTol)
      throw LpError("singular pivot (numerical breakdown)");

    for (int i = 0; i < m; ++i)
      if (i != leave) beta[i] -= dir * t * at(i, jin);
    const double enter_val = val[jin] + dir * t;

    const int jout = basis[leave];
    st[jout] = leave_upper ? kUpper : kLower;
    val[jout] = leave_upper ? ub[jout] : lb[jout];
    if (is_artificial(jout)) {
      lb[jout] = ub[jout] = 0.0;  // artificials never come back
      val[jout] = 0.0;
    }

    double* pr = row(leave);
    const double inv = 1.0 / piv;
    for (int j = 0; j < total; ++j) pr[j] *= inv;
    rhs[leave] *= inv;
    pr[jin] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = at(i, jin);
      if (f == 0.0) continue;
      double* ri = row(i);
      for (int j = 0; j < total; ++j) ri[j] -= f * pr[j];
      ri[jin] = 0.0;
      rhs[i] -= f * rhs[leave];
    }
    const double fc = cost[jin];
    if (fc != 0.0)
      for (int j = 0; j < total; ++j) cost[j] -= fc * pr[j];
    cost[jin] = 0.0;

    basis[leave] = jin;
    st[jin] = kBasic;
    beta[leave] = enter_val;
    bump(t);
    return true;
  }

  void bump(double step) {
    ++pivots;
    if (pivots > 20000 + 200LL * (m + n))
      throw LpError("simplex iteration limit (numerical breakdown)");
    if (step <= 1e-10) {
      if (++degen > 1000) bland = true;  // Dantzig stalled; Bland terminates
    } else {
      degen = 0;
      bland = false;
    }
    if (pivots % 512 == 0) refresh_beta();
  }

  double phase1_infeasibility() const {
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      if (is_artificial(basis[i])) s += beta[i];
    return s;
  }

  LpSolution run() {
    if (nart > 0) {
      compute_cost(true);
      while (phase1_infeasibility() > kLpFeasTol && iterate()) {
      }
      if (phase1_infeasibility() > kLpFeasTol)
        return LpSolution{LpStatus::Infeasible, {}, 0.0};
      for (int j = n + m; j < total; ++j) {
        lb[j] = ub[j] = 0.0;
        if (st[j] != kBasic) val[j] = 0.0;
      }
    }

    compute_cost(false);
    while (iterate()) {
    }

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.values.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
      if (st[j] != kBasic) sol.values[j] = val[j];
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) sol.values[basis[i]] = beta[i];
    for (int j = 0; j < n; ++j) sol.objective += p.objective[j] * sol.values[j];

    // Claiming Optimal requires an actually feasible point; numerical drift
    // surfaces as an error instead of a wrong answer.
    for (int j = 0; j < n; ++j)
      if (sol.values[j] < p.lower[j] - 1e-6 ||
          sol.values[j] > p.upper[j] + 1e-6)
        throw LpError("solution violates variable bounds (numerical breakdown)");
    for (const LinearRow& r : p.rows)
      if (r.value_at(sol.values) < r.rhs() - 1e-6)
        throw LpError("solution violates a row (numerical breakdown)");
    return sol;
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& p, const std::vector<double>* warm) {
  for (int j = 0; j < p.num_variables; ++j) {
    if (p.lower[j] < 0.0 || p.upper[j] > 1.0 || p.lower[j] > p.upper[j])
      throw std::invalid_argument("variable bounds must satisfy 0 <= l <= u <= 1");
  }
  Simplex s(p, warm);
  return s.run();
}

}  // namespace clausecut
