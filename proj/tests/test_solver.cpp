#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "clausecut/rng.hpp"
#include "clausecut/solver.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace clausecut;
using namespace clausecut::testing;

TEST_CASE("algo names round trip") {
  CHECK(to_string(SepAlgo::None) == std::string("none"));
  CHECK(to_string(SepAlgo::Icca) == std::string("icca"));
  CHECK(to_string(SepAlgo::Lcca) == std::string("lcca"));
  CHECK(sep_algo_from_string("lcca") == SepAlgo::Lcca);
  CHECK(!sep_algo_from_string("bogus").has_value());
}

TEST_CASE("model construction mirrors the instance") {
  CnfOptInstance inst = worked_example();
  MilpModel m = MilpModel::from_instance(inst);
  CHECK(m.lp.num_variables == 3);
  CHECK(m.lp.rows.size() == 6);
  CHECK(m.lp.objective == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(m.cuts.empty());

  ClauseCut cut = cut_from_core({Lit(-3)}, CutOrigin::Icca);
  m.add_cut(cut);
  CHECK(m.lp.rows.size() == 7);
  REQUIRE(m.cuts.size() == 1);
  CHECK(m.cuts[0].clause == Clause({Lit(3)}));
}

TEST_CASE("branch and bound without cuts still finds the optimum") {
  CnfOptInstance inst = worked_example();
  MilpModel m = MilpModel::from_instance(inst);
  BnbResult r = branch_and_bound(m, nullptr, 4);  // loose incumbent bound
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.objective == 1);
  CHECK(r.nodes_visited > 1);  // the root is fractional here
  CHECK(r.feasible_nodes >= 1);
  CHECK(r.model.value(3));
}

TEST_CASE("branch and bound with the cut solves at the root") {
  CnfOptInstance inst = worked_example();
  MilpModel m = MilpModel::from_instance(inst);
  m.add_cut(cut_from_core({Lit(-3)}, CutOrigin::Icca));
  BnbResult r = branch_and_bound(m, nullptr, 4);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.objective == 1);
  CHECK(r.nodes_visited == 1);
}

TEST_CASE("infeasible lp at the root") {
  CnfOptInstance inst;
  inst.formula.set_num_variables(1);
  inst.formula.add_clause(Clause({Lit(1)}));
  inst.formula.add_clause(Clause({Lit(-1)}));
  inst.objective = {0, 1};
  MilpModel m = MilpModel::from_instance(inst);
  BnbResult r = branch_and_bound(m, nullptr,
                                 std::numeric_limits<long long>::max());
  CHECK(r.status == SolveStatus::Infeasible);
  CHECK(r.nodes_visited == 1);
}

TEST_CASE("probing counts feasible nodes") {
  CnfOptInstance inst = worked_example();
  MilpModel m = MilpModel::from_instance(inst);
  SatEngine probe(inst.formula);
  BnbOptions opts;
  opts.probe_nodes = true;
  opts.probe_engine = &probe;
  BnbResult r = branch_and_bound(m, nullptr, 4, opts);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.objective == 1);
  CHECK(r.feasible_nodes >= 1);
}

TEST_CASE("solve_instance on the worked example per mode") {
  CnfOptInstance inst = worked_example();
  for (SepAlgo algo : {SepAlgo::None, SepAlgo::Icca, SepAlgo::Lcca}) {
    SolveOptions opts;
    opts.algo = algo;
    SolveResult r = solve_instance(inst, opts);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.objective == 1);
    Evaluation ev = evaluate(r.model, inst);
    CHECK(ev.satisfies_formula);
    CHECK(ev.objective == 1);
    if (algo == SepAlgo::None) {
      CHECK(r.stats.n_cuts == 0);
      CHECK(!r.stats.solved_at_root);
    } else {
      CHECK(r.stats.n_cuts == 1);
      CHECK(r.stats.solved_at_root);
      CHECK(r.stats.nodes_visited == 1);
      REQUIRE(r.cuts.size() == 1);
      CHECK(r.cuts[0].cut.clause == Clause({Lit(3)}));
      REQUIRE(r.cuts[0].xbar.size() == 3);
      CHECK(r.cuts[0].xbar[2] == doctest::Approx(0.0));
    }
    CHECK(r.stats.total_seconds >= 0.0);
  }
}

TEST_CASE("solve_instance reports infeasible formulas") {
  CnfOptInstance inst;
  inst.formula.set_num_variables(2);
  inst.formula.add_clause(Clause({Lit(1)}));
  inst.formula.add_clause(Clause({Lit(-1)}));
  inst.objective = {0, 1, 1};
  SolveResult r = solve_instance(inst);
  CHECK(r.status == SolveStatus::Infeasible);
  CHECK(r.stats.nodes_visited == 0);
}

TEST_CASE("objective trace never decreases") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    CnfFormula f = satisfiable_3cnf(10, 43, seed * 23);
    CnfOptInstance inst;
    inst.formula = f;
    inst.objective.assign(11, 0);
    SplitMix64 rng(seed);
    for (int v = 1; v <= 10; ++v) inst.objective[v] = rng.range(-10, 10);
    SolveOptions opts;
    opts.algo = SepAlgo::Lcca;
    SolveResult r = solve_instance(inst, opts);
    REQUIRE(r.status == SolveStatus::Optimal);
    for (size_t i = 1; i < r.stats.lp_objective_trace.size(); ++i)
      CHECK(r.stats.lp_objective_trace[i] >=
            r.stats.lp_objective_trace[i - 1] - 1e-9);
    CHECK(r.stats.n_cuts == static_cast<int>(r.cuts.size()));
  }
}

TEST_CASE("emitted cuts are distinct") {
  CnfFormula f = satisfiable_3cnf(12, 51, 5);
  CnfOptInstance inst;
  inst.formula = f;
  inst.objective.assign(13, 0);
  SplitMix64 rng(5);
  for (int v = 1; v <= 12; ++v) inst.objective[v] = rng.range(-10, 10);
  SolveResult r = solve_instance(inst);
  for (size_t i = 0; i < r.cuts.size(); ++i)
    for (size_t j = i + 1; j < r.cuts.size(); ++j)
      CHECK(!(r.cuts[i].cut.clause == r.cuts[j].cut.clause));
}

TEST_CASE("timeout surfaces as TimedOut with the incumbent") {
  CnfFormula f = satisfiable_3cnf(12, 51, 9);
  CnfOptInstance inst;
  inst.formula = f;
  inst.objective.assign(13, 0);
  for (int v = 1; v <= 12; ++v) inst.objective[v] = (v % 2 == 0) ? -3 : 2;
  SolveOptions opts;
  opts.timeout_seconds = 0.0;
  SolveResult r = solve_instance(inst, opts);
  CHECK(r.status == SolveStatus::TimedOut);
  // The incumbent from the initial SAT call is still a model.
  CHECK(evaluate(r.model, inst).satisfies_formula);
  CHECK(r.objective == evaluate(r.model, inst).objective);
}

TEST_CASE("per-mode determinism") {
  CnfFormula f = satisfiable_3cnf(12, 51, 13);
  CnfOptInstance inst;
  inst.formula = f;
  inst.objective.assign(13, 0);
  SplitMix64 rng(13);
  for (int v = 1; v <= 12; ++v) inst.objective[v] = rng.range(-10, 10);
  for (SepAlgo algo : {SepAlgo::None, SepAlgo::Icca, SepAlgo::Lcca}) {
    SolveOptions opts;
    opts.algo = algo;
    SolveResult a = solve_instance(inst, opts);
    SolveResult b = solve_instance(inst, opts);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);
    CHECK(a.model == b.model);
    CHECK(a.stats.n_cuts == b.stats.n_cuts);
    CHECK(a.stats.nodes_visited == b.stats.nodes_visited);
    CHECK(a.stats.feasible_nodes == b.stats.feasible_nodes);
    REQUIRE(a.cuts.size() == b.cuts.size());
    for (size_t i = 0; i < a.cuts.size(); ++i)
      CHECK(a.cuts[i].cut.clause == b.cuts[i].cut.clause);
  }
}

TEST_CASE("json rendering carries the documented keys") {
  SolveResult r = solve_instance(worked_example());
  std::string j = to_json(r, "we.cnfopt", "we.cutlog");
  for (const char* key :
       {"\"instance\"", "\"status\"", "\"objective\"", "\"n_cuts\"",
        "\"nodes_visited\"", "\"feasible_nodes\"", "\"solved_at_root\"",
        "\"initial_sat_seconds\"", "\"cut_loop_seconds\"", "\"bnb_seconds\"",
        "\"total_seconds\"", "\"avg_length_before\"", "\"avg_length_after\"",
        "\"lp_objective_trace\"", "\"cut_log\"", "\"probed_nodes\""})
    CHECK(j.find(key) != std::string::npos);
}
