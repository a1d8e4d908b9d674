#include "clausecut/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace clausecut {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<int> canonical_key(const Clause& c) {
  std::vector<int> key;
  for (Lit l : c.literals()) key.push_back(l.dimacs());
  return key;
}

bool past(const std::optional<Clock::time_point>& deadline) {
  return deadline && Clock::now() >= *deadline;
}

}  // namespace

const char* to_string(SepAlgo a) {
  switch (a) {
    case SepAlgo::None: return "none";
    case SepAlgo::Icca: return "icca";
    case SepAlgo::Lcca: return "lcca";
  }
  return "?";
}

std::optional<SepAlgo> sep_algo_from_string(const std::string& s) {
  if (s == "none") return SepAlgo::None;
  if (s == "icca") return SepAlgo::Icca;
  if (s == "lcca") return SepAlgo::Lcca;
  return std::nullopt;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimedOut: return "timeout";
  }
  return "?";
}

MilpModel MilpModel::from_instance(const CnfOptInstance& p) {
  const int n = p.formula.num_variables();
  std::vector<double> obj(n, 0.0);
  for (int v = 1; v <= n; ++v)
    obj[v - 1] = static_cast<double>(p.coefficient(v));
  std::vector<LinearRow> rows;
  rows.reserve(p.formula.clauses().size());
  for (const Clause& c : p.formula.clauses()) rows.push_back(clause_inequality(c));
  return MilpModel{LpProblem(n, std::move(obj), std::move(rows)), {}};
}

void MilpModel::add_cut(ClauseCut cut) {
  lp = add_row(std::move(lp), cut.row);
  cuts.push_back(std::move(cut));
}

bool node_feasibility_probe(SatEngine& engine, std::span<const double> xbar,
                            double tol) {
  return engine.solve(integral_assumptions(xbar, tol)) == Verdict::Sat;
}

BnbResult branch_and_bound(const MilpModel& m, const Assignment* incumbent,
                           long long incumbent_objective,
                           const BnbOptions& opts) {
  if (opts.probe_nodes && !opts.probe_engine)
    throw std::invalid_argument("branch_and_bound: probing needs an engine");

  const int n = m.lp.num_variables;
  BnbResult res;
  res.status = SolveStatus::Optimal;
  bool have_best = incumbent != nullptr;
  Assignment best = have_best ? *incumbent : Assignment();
  long long best_obj = have_best ? incumbent_objective : 0;

  std::vector<BnbNode> stack;
  stack.push_back(BnbNode{{}, -std::numeric_limits<double>::infinity(), 0});

  while (!stack.empty()) {
    if (past(opts.deadline)) {
      res.status = SolveStatus::TimedOut;
      break;
    }
    BnbNode node = std::move(stack.back());
    stack.pop_back();

    LpProblem lp = m.lp;
    for (auto [var, val] : node.fixings) lp.fix_variable(var, val ? 1.0 : 0.0);
    const LpSolution sol = solve_lp(lp);
    ++res.nodes_visited;
    if (sol.status == LpStatus::Infeasible) continue;

    // Integral LP point: satisfies every clause row at 0/1, so it is a model.
    bool integral = true;
    for (double x : sol.values)
      if (std::abs(x - std::round(x)) > opts.integrality_tol) {
        integral = false;
        break;
      }
    if (integral) {
      ++res.feasible_nodes;
      long long obj = 0;
      Assignment a(n);
      for (int i = 0; i < n; ++i) {
        const bool bit = sol.values[i] >= 0.5;
        a.set(i + 1, bit);
        if (bit) obj += static_cast<long long>(m.lp.objective[i]);
      }
      if (!have_best || obj < best_obj) {
        have_best = true;
        best = std::move(a);
        best_obj = obj;
      }
      continue;
    }

    if (opts.probe_nodes &&
        node_feasibility_probe(*opts.probe_engine, sol.values,
                               opts.integrality_tol))
      ++res.feasible_nodes;

    // Objectives are integral, so the bound rounds up before comparing.
    if (have_best &&
        static_cast<long long>(std::ceil(sol.objective - 1e-6)) >= best_obj)
      continue;

    int branch_var = -1;
    double best_dist = 2.0;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(sol.values[i] - 0.5);
      if (d < best_dist - 1e-12) {
        best_dist = d;
        branch_var = i + 1;
      }
    }
    const bool near_val =
        have_best && best.has(branch_var)
            ? best.value(branch_var)
            : sol.values[branch_var - 1] >= 0.5;  // no incumbent: round

    BnbNode far{node.fixings, sol.objective, node.depth + 1};
    far.fixings.emplace_back(branch_var, !near_val);
    BnbNode near{std::move(node.fixings), sol.objective, node.depth + 1};
    near.fixings.emplace_back(branch_var, near_val);
    stack.push_back(std::move(far));
    stack.push_back(std::move(near));  // explored first
  }

  if (res.status == SolveStatus::Optimal && !have_best)
    res.status = SolveStatus::Infeasible;
  if (have_best) {
    res.model = std::move(best);
    res.objective = best_obj;
  }
  return res;
}

SolveResult solve_instance(const CnfOptInstance& p, const SolveOptions& opts) {
  const auto t_start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (std::isfinite(opts.timeout_seconds))
    deadline = t_start + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(opts.timeout_seconds));

  SolveResult res;
  res.stats.probed_nodes = opts.probe_nodes;

  SatEngine engine(p.formula, opts.seed);
  const auto t_sat = Clock::now();
  const Verdict initial = engine.solve();
  res.stats.initial_sat_seconds = seconds_since(t_sat);
  if (initial == Verdict::Unsat) {
    res.status = SolveStatus::Infeasible;
    res.stats.total_seconds = seconds_since(t_start);
    return res;
  }

  Assignment incumbent = engine.model();
  long long incumbent_obj = evaluate(incumbent, p).objective;

  MilpModel model = MilpModel::from_instance(p);
  KnownClauseDb db;

  const auto t_cuts = Clock::now();
  if (opts.algo != SepAlgo::None) {
    std::set<std::vector<int>> seen_cuts;
    std::optional<ClauseCut> cut;
    do {
      const LpSolution root = solve_lp(model.lp);
      if (root.status != LpStatus::Optimal)
        throw std::logic_error("cut loop: relaxation of a satisfiable formula is infeasible");
      res.stats.lp_objective_trace.push_back(root.objective);

      cut = opts.algo == SepAlgo::Icca
                ? icca(engine, root.values, opts.separation)
                : lcca(engine, db, root.values, opts.separation);
      // A clause that already entered the model counts as no cut at all.
      if (cut && !seen_cuts.insert(canonical_key(cut->clause)).second)
        cut = std::nullopt;
      if (cut) {
        res.cuts.push_back(CutLogEntry{*cut, root.values});
        model.add_cut(std::move(*cut));
        ++res.stats.n_cuts;
      }
    } while (cut && res.stats.n_cuts < opts.limits.max_cuts &&
             seconds_since(t_start) < opts.limits.time_budget_seconds &&
             !past(deadline));
  }
  res.stats.cut_loop_seconds = seconds_since(t_cuts);

  BnbOptions bo;
  bo.seed = opts.seed;
  bo.probe_nodes = opts.probe_nodes;
  bo.probe_engine = &engine;
  bo.integrality_tol = opts.separation.integrality_tol;
  bo.deadline = deadline;

  const auto t_bnb = Clock::now();
  const BnbResult bnb = branch_and_bound(model, &incumbent, incumbent_obj, bo);
  res.stats.bnb_seconds = seconds_since(t_bnb);

  res.status = bnb.status;
  res.model = bnb.model;
  res.objective = bnb.objective;
  res.stats.nodes_visited = bnb.nodes_visited;
  res.stats.feasible_nodes = bnb.feasible_nodes;
  res.stats.solved_at_root = bnb.nodes_visited == 1;
  if (res.stats.n_cuts > 0) {
    double before = 0.0, after = 0.0;
    for (const CutLogEntry& e : res.cuts) {
      before += e.cut.length_before;
      after += e.cut.length_after;
    }
    res.stats.avg_length_before = before / res.stats.n_cuts;
    res.stats.avg_length_after = after / res.stats.n_cuts;
  }
  res.stats.total_seconds = seconds_since(t_start);
  return res;
}

std::string to_json(const SolveResult& r, const std::string& instance,
                    const std::string& cut_log_ref) {
  nlohmann::json j;
  if (!instance.empty()) j["instance"] = instance;
  j["status"] = to_string(r.status);
  if (r.status != SolveStatus::Infeasible) j["objective"] = r.objective;
  j["initial_sat_seconds"] = r.stats.initial_sat_seconds;
  j["cut_loop_seconds"] = r.stats.cut_loop_seconds;
  j["bnb_seconds"] = r.stats.bnb_seconds;
  j["total_seconds"] = r.stats.total_seconds;
  j["n_cuts"] = r.stats.n_cuts;
  j["avg_length_before"] = r.stats.avg_length_before;
  j["avg_length_after"] = r.stats.avg_length_after;
  j["nodes_visited"] = r.stats.nodes_visited;
  j["feasible_nodes"] = r.stats.feasible_nodes;
  j["solved_at_root"] = r.stats.solved_at_root;
  j["probed_nodes"] = r.stats.probed_nodes;
  j["lp_objective_trace"] = r.stats.lp_objective_trace;
  j["cut_log"] = cut_log_ref;
  return j.dump();
}

}  // namespace clausecut
