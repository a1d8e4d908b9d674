#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "clausecut/formula.hpp"
#include "clausecut/lp.hpp"
#include "clausecut/sat_engine.hpp"
#include "clausecut/separation.hpp"

namespace clausecut {

enum class SepAlgo { None, Icca, Lcca };

const char* to_string(SepAlgo a);
std::optional<SepAlgo> sep_algo_from_string(const std::string& s);

struct CutLoopLimits {
  int max_cuts = 150;
  double time_budget_seconds = 60.0;  // measured from solve entry
};

// MILP view of an instance: the LP relaxation of the clause rows plus any
// appended cuts, bounds [0,1].
struct MilpModel {
  LpProblem lp;
  std::vector<ClauseCut> cuts;

  static MilpModel from_instance(const CnfOptInstance& p);
  void add_cut(ClauseCut cut);
};

struct SolveStats {
  double initial_sat_seconds = 0.0;
  double cut_loop_seconds = 0.0;
  double bnb_seconds = 0.0;
  double total_seconds = 0.0;
  int n_cuts = 0;
  double avg_length_before = 0.0;  // mean over emitted cuts; 0 when none
  double avg_length_after = 0.0;
  long long nodes_visited = 0;
  long long feasible_nodes = 0;
  bool solved_at_root = false;  // holds iff nodes_visited == 1
  bool probed_nodes = false;
  // Root LP objective at each cut-loop pass, in order; non-decreasing.
  std::vector<double> lp_objective_trace;
};

enum class SolveStatus { Optimal, Infeasible, TimedOut };

const char* to_string(SolveStatus s);

struct CutLogEntry {
  ClauseCut cut;
  std::vector<double> xbar;  // the fractional point the cut separated
};

struct SolveResult {
  SolveStatus status;
  Assignment model;  // optimum; on TimedOut, the best incumbent found
  long long objective = 0;
  SolveStats stats;
  std::vector<CutLogEntry> cuts;
};

struct SolveOptions {
  SepAlgo algo = SepAlgo::Lcca;
  CutLoopLimits limits;
  uint64_t seed = 0;
  bool probe_nodes = true;
  // Wall-clock cap for the whole call; exceeded caps surface as TimedOut.
  double timeout_seconds = std::numeric_limits<double>::infinity();
  SeparationOptions separation;
};

// Is the integral part of xbar extendable to a model? One engine call under
// assumptions; the engine may learn clauses as a side effect.
bool node_feasibility_probe(SatEngine& engine, std::span<const double> xbar,
                            double tol = kIntegralityTol);

struct BnbOptions {
  uint64_t seed = 0;  // reserved; the search itself is deterministic
  bool probe_nodes = false;
  SatEngine* probe_engine = nullptr;  // required when probe_nodes is set
  double integrality_tol = kIntegralityTol;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct BnbNode {
  std::vector<std::pair<int, bool>> fixings;  // (variable, value) on the path
  double parent_bound;
  int depth;
};

struct BnbResult {
  SolveStatus status;
  Assignment model;
  long long objective = 0;
  long long nodes_visited = 0;
  long long feasible_nodes = 0;
};

// Depth-first LP branch and bound: most-fractional branching (ties to the
// lowest variable), the child matching the incumbent's phase explored first,
// pruning by the integer round-up of the node bound. Every processed node
// counts as visited; feasible_nodes counts probe hits when probing, else
// nodes whose LP solution was already integral.
BnbResult branch_and_bound(const MilpModel& m, const Assignment* incumbent,
                           long long incumbent_objective,
                           const BnbOptions& opts = {});

// End-to-end optimizer: time an initial engine solve (model seeds the
// incumbent), run the cut loop until the algorithm yields no cut or limits
// hit, then branch and bound.
SolveResult solve_instance(const CnfOptInstance& p,
                           const SolveOptions& opts = {});

// One-object JSON rendering of a result; documented key set in the README.
std::string to_json(const SolveResult& r, const std::string& instance = "",
                    const std::string& cut_log_ref = "");

}  // namespace clausecut
