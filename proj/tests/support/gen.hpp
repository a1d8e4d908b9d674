#pragma once

// Seeded deterministic generators and the fixed fixture instances shared by
// the unit tests and the acceptance gate.

#include <cstdint>
#include <vector>

#include "clausecut/formula.hpp"
#include "clausecut/lp.hpp"

namespace clausecut::testing {

// Random k-CNF with distinct variables per clause and random polarities.
CnfFormula random_3cnf(int n_vars, int n_clauses, uint64_t seed);

// First satisfiable random_3cnf scanning seeds upward from seed.
CnfFormula satisfiable_3cnf(int n_vars, int n_clauses, uint64_t seed);

// Random clause-inequality LP: rows are clause inequalities of random
// clauses of length 1..3, objective integer in [-10, 10].
LpProblem random_clause_lp(int n_vars, int n_rows, uint64_t seed);

// Up to max_size assumption literals over distinct variables.
std::vector<Lit> random_assumptions(int n_vars, int max_size, uint64_t seed);

// The 3-variable motivating instance: x <-> y, z <-> (x = y), minimize z.
// Its LP relaxation optimum is (0.5, 0.5, 0); the only missing facet of the
// integer hull is z >= 1.
CnfOptInstance worked_example();

// Two clauses over two variables whose conjunction implies ~x, yet no
// integral component exists at (0.5, 0.5) for the assumption check to seize.
CnfFormula incompleteness_formula();

// Maximum stable set on the complete conflict graph of n nodes as a CNFOPT:
// pairwise (~xi | ~xj), objective -sum x. LP optimum is all one-half.
CnfOptInstance pairwise_conflict(int n);

}  // namespace clausecut::testing
