// Microbenchmarks: SAT engine, LP solver, and end-to-end solves per mode on
// seeded random 3-CNF instances.

#include <benchmark/benchmark.h>

#include "clausecut/bench.hpp"
#include "clausecut/lp.hpp"
#include "clausecut/rng.hpp"
#include "clausecut/sat_engine.hpp"
#include "clausecut/solver.hpp"

using namespace clausecut;

namespace {

// Random 3-CNF at the standard hard ratio; distinct variables per clause.
CnfFormula random_3cnf(int n_vars, int n_clauses, uint64_t seed) {
  SplitMix64 rng(seed);
  CnfFormula f;
  f.set_num_variables(n_vars);
  for (int c = 0; c < n_clauses; ++c) {
    int v[3];
    v[0] = static_cast<int>(rng.bounded(static_cast<uint64_t>(n_vars))) + 1;
    do {
      v[1] = static_cast<int>(rng.bounded(static_cast<uint64_t>(n_vars))) + 1;
    } while (v[1] == v[0]);
    do {
      v[2] = static_cast<int>(rng.bounded(static_cast<uint64_t>(n_vars))) + 1;
    } while (v[2] == v[0] || v[2] == v[1]);
    std::vector<Lit> lits;
    for (int i = 0; i < 3; ++i)
      lits.push_back(Lit(rng.bounded(2) ? v[i] : -v[i]));
    f.add_clause(Clause(lits));
  }
  return f;
}

CnfFormula satisfiable_3cnf(int n_vars, int n_clauses, uint64_t seed) {
  for (uint64_t s = seed;; ++s) {
    CnfFormula f = random_3cnf(n_vars, n_clauses, s);
    SatEngine probe(f);
    if (probe.solve() == Verdict::Sat) return f;
  }
}

void BM_SatSolve(benchmark::State& state) {
  CnfFormula f = random_3cnf(50, 218, 7);
  for (auto _ : state) {
    SatEngine eng(f);
    benchmark::DoNotOptimize(eng.solve());
  }
}
BENCHMARK(BM_SatSolve);

void BM_LpSolve(benchmark::State& state) {
  CnfFormula f = satisfiable_3cnf(50, 218, 7);
  CnfOptInstance inst = generate_instance(f, 10, 7);
  MilpModel m = MilpModel::from_instance(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp(m.lp));
  }
}
BENCHMARK(BM_LpSolve);

void solve_mode(benchmark::State& state, SepAlgo algo) {
  CnfFormula f = satisfiable_3cnf(50, 218, 11);
  CnfOptInstance inst = generate_instance(f, 10, 11);
  for (auto _ : state) {
    SolveOptions opts;
    opts.algo = algo;
    benchmark::DoNotOptimize(solve_instance(inst, opts));
  }
}

void BM_SolveNone(benchmark::State& state) { solve_mode(state, SepAlgo::None); }
void BM_SolveIcca(benchmark::State& state) { solve_mode(state, SepAlgo::Icca); }
void BM_SolveLcca(benchmark::State& state) { solve_mode(state, SepAlgo::Lcca); }
BENCHMARK(BM_SolveNone)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveIcca)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveLcca)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
