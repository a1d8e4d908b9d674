#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "clausecut/sat_engine.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace clausecut;
using namespace clausecut::testing;

namespace {

// Pigeonhole principle PHP(p, h): p pigeons into h holes, p > h => UNSAT.
CnfFormula pigeonhole(int pigeons, int holes) {
  CnfFormula f;
  f.set_num_variables(pigeons * holes);
  auto var = [&](int p, int h) { return p * holes + h + 1; };
  for (int p = 0; p < pigeons; ++p) {
    std::vector<Lit> some;
    for (int h = 0; h < holes; ++h) some.push_back(Lit(var(p, h)));
    f.add_clause(Clause(some));
  }
  for (int h = 0; h < holes; ++h)
    for (int p1 = 0; p1 < pigeons; ++p1)
      for (int p2 = p1 + 1; p2 < pigeons; ++p2)
        f.add_clause(Clause({Lit(-var(p1, h)), Lit(-var(p2, h))}));
  return f;
}

bool model_satisfies(const CnfFormula& f, const Assignment& a) {
  for (const Clause& c : f.clauses()) {
    bool sat = false;
    for (Lit l : c.literals()) sat |= a.satisfies(l);
    if (!sat) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("textbook example") {
  // phi = (x | y) & (~y): satisfiable, but not under the assumption ~x.
  CnfFormula f(2);
  f.add_clause(Clause({Lit(1), Lit(2)}));
  f.add_clause(Clause({Lit(-2)}));
  SatEngine eng(f);
  CHECK(eng.solve() == Verdict::Sat);
  CHECK(model_satisfies(f, eng.model()));

  std::vector<Lit> neg_x{Lit(-1)};
  CHECK(eng.solve(neg_x) == Verdict::Unsat);
  auto failed = eng.failed_assumptions();
  REQUIRE(failed.size() == 1);
  CHECK(failed[0] == Lit(-1));

  // The engine stays usable for later calls.
  CHECK(eng.solve() == Verdict::Sat);
}

TEST_CASE("unit propagation chain") {
  // x1, x1->x2, x2->x3: the only model sets all three.
  CnfFormula f(3);
  f.add_clause(Clause({Lit(1)}));
  f.add_clause(Clause({Lit(-1), Lit(2)}));
  f.add_clause(Clause({Lit(-2), Lit(3)}));
  SatEngine eng(f);
  REQUIRE(eng.solve() == Verdict::Sat);
  Assignment m = eng.model();
  CHECK(m.value(1));
  CHECK(m.value(2));
  CHECK(m.value(3));
}

TEST_CASE("pigeonhole unsat and sticky state") {
  SatEngine eng(pigeonhole(4, 3));
  CHECK(eng.solve() == Verdict::Unsat);
  CHECK(eng.solve() == Verdict::Unsat);  // sticky without assumptions
  CHECK_THROWS_AS(eng.model(), std::logic_error);
  CHECK(eng.stats().conflicts > 0);
}

TEST_CASE("assumption validation") {
  CnfFormula f(2);
  f.add_clause(Clause({Lit(1), Lit(2)}));
  SatEngine eng(f);
  std::vector<Lit> dup{Lit(1), Lit(1)};
  CHECK_THROWS_AS(eng.solve(dup), std::invalid_argument);
  std::vector<Lit> clash{Lit(1), Lit(-1)};
  CHECK_THROWS_AS(eng.solve(clash), std::invalid_argument);
  std::vector<Lit> range{Lit(7)};
  CHECK_THROWS_AS(eng.solve(range), std::invalid_argument);
}

TEST_CASE("failed assumptions form an unsatisfiable subset") {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    CnfFormula f = random_3cnf(8, 34, seed);
    SatEngine eng(f);
    if (eng.solve() == Verdict::Unsat) continue;
    auto assumed = random_assumptions(8, 8, seed * 31 + 1);
    if (eng.solve(assumed) == Verdict::Sat) continue;
    std::vector<Lit> failed(eng.failed_assumptions().begin(),
                            eng.failed_assumptions().end());
    // Subset of the assumptions:
    for (Lit l : failed)
      CHECK(std::find(assumed.begin(), assumed.end(), l) != assumed.end());
    // and itself unsatisfiable.
    CHECK(!brute_satisfiable(f, failed));
  }
}

TEST_CASE("learned clause log: implied, fresh, high water mark") {
  CnfFormula f = random_3cnf(10, 43, 7);
  auto sat = satisfying_masks(f);
  SatEngine eng(f);
  std::vector<Clause> seen;
  for (uint64_t round = 0; round < 30; ++round) {
    auto assumed = random_assumptions(10, 10, round * 131 + 5);
    eng.solve(assumed);
    auto fresh = eng.get_learned_clauses();
    for (const Clause& c : fresh) {
      CHECK(brute_implied(sat, c));  // implied by phi alone
      CHECK(std::find(seen.begin(), seen.end(), c) == seen.end());
      seen.push_back(c);
    }
  }
  // Everything already returned stays returned.
  CHECK(eng.get_learned_clauses().empty());
}

TEST_CASE("is_implied") {
  CnfOptInstance inst = worked_example();
  SatEngine eng(inst.formula);
  CHECK(eng.is_implied(Clause({Lit(3)})));               // z is forced
  CHECK(eng.is_implied(Clause({Lit(-1), Lit(2)})));      // original clause
  CHECK(!eng.is_implied(Clause({Lit(1)})));              // x free
  CHECK(!eng.is_implied(Clause({Lit(-3)})));
}

TEST_CASE("differential verdicts against enumeration") {
  int checked = 0;
  for (uint64_t seed = 1; seed <= 150; ++seed) {
    int n = 4 + static_cast<int>(seed % 9);  // 4..12
    int m = static_cast<int>(n * 4.26 + 0.5);
    CnfFormula f = random_3cnf(n, m, seed * 7919);
    SatEngine eng(f);
    for (int round = 0; round < 4; ++round) {
      auto assumed = random_assumptions(n, n, seed * 101 + round);
      bool expect = brute_satisfiable(f, assumed);
      bool got = eng.solve(assumed) == Verdict::Sat;
      CHECK(got == expect);
      if (got) CHECK(model_satisfies(f, eng.model()));
      ++checked;
    }
  }
  CHECK(checked == 600);
}

TEST_CASE("determinism") {
  CnfFormula f = random_3cnf(12, 51, 3);
  SatEngine a(f), b(f);
  CHECK(a.solve() == b.solve());
  if (a.solve() == Verdict::Sat) CHECK(a.model() == b.model());
  CHECK(a.stats().decisions == b.stats().decisions);
  CHECK(a.stats().conflicts == b.stats().conflicts);
}
