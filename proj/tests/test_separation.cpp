#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "clausecut/rng.hpp"
#include "clausecut/separation.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace clausecut;
using namespace clausecut::testing;

TEST_CASE("integral assumptions pick out the near-integral components") {
  std::vector<double> xbar{0.5, 1.0 - 1e-8, 0.0, 0.3, 1e-8};
  PartialAssignment a = integral_assumptions(xbar);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == Lit(2));
  CHECK(a[1] == Lit(-3));
  CHECK(a[2] == Lit(-5));

  // Strictly inside the tolerance band nothing is integral.
  std::vector<double> mid{0.4, 0.6};
  CHECK(integral_assumptions(mid).empty());

  // The tolerance is adjustable.
  std::vector<double> close{0.05, 0.95};
  CHECK(integral_assumptions(close).empty());
  CHECK(integral_assumptions(close, 0.1).size() == 2);
}

TEST_CASE("clause lhs at a fractional point") {
  Clause c({Lit(1), Lit(-2)});
  std::vector<double> x{0.25, 0.75};
  CHECK(clause_lhs_at(c, x) == doctest::Approx(0.5));
  std::vector<double> sat{1.0, 0.0};
  CHECK(clause_lhs_at(c, sat) == doctest::Approx(2.0));
  std::vector<double> shortv{0.25};
  CHECK_THROWS_AS(clause_lhs_at(c, shortv), std::invalid_argument);
}

TEST_CASE("known clause database orders by length then insertion") {
  KnownClauseDb db;
  CHECK(db.insert(Clause({Lit(1), Lit(2)})));
  CHECK(!db.insert(Clause({Lit(2), Lit(1)})));  // same clause, normalized
  CHECK(db.insert(Clause({Lit(3), Lit(4)})));

  // Nothing is violated at one-half while only pairs are known (lhs = 1).
  std::vector<double> half(5, 0.5);
  CHECK(!db.first_shortest_violated(half).has_value());
  CHECK(!check_known_clauses_for_violation(db, half).has_value());

  CHECK(db.insert(Clause({Lit(-5)})));
  CHECK(db.size() == 3);

  // Everything is violated at the all-zero point; the unit clause (~x5) has
  // lhs 1 there, so the first-inserted violated pair wins.
  std::vector<double> zero(5, 0.0);
  auto pick = db.first_shortest_violated(zero);
  REQUIRE(pick.has_value());
  CHECK(*pick == Clause({Lit(1), Lit(2)}));

  // At all-ones only (~x5) is violated.
  std::vector<double> ones(5, 1.0);
  pick = db.first_shortest_violated(ones);
  REQUIRE(pick.has_value());
  CHECK(*pick == Clause({Lit(-5)}));

  // Shorter beats earlier: a later unit clause wins over an earlier pair.
  std::vector<double> w{0.0, 0.0, 1.0, 1.0, 0.0};
  pick = db.first_shortest_violated(w);
  REQUIRE(pick.has_value());
  CHECK(*pick == Clause({Lit(1), Lit(2)}));
  CHECK(db.insert(Clause({Lit(2)})));
  pick = db.first_shortest_violated(w);
  REQUIRE(pick.has_value());
  CHECK(*pick == Clause({Lit(2)}));
}

TEST_CASE("minimize_core removes in ascending variable order") {
  // (~x1) & (~x2): both unit cores work alone; scanning x1 first removes it
  // and keeps x2.
  CnfFormula f(2);
  f.add_clause(Clause({Lit(-1)}));
  f.add_clause(Clause({Lit(-2)}));
  SatEngine eng(f);
  PartialAssignment core{Lit(1), Lit(2)};
  PartialAssignment min = minimize_core(eng, core);
  REQUIRE(min.size() == 1);
  CHECK(min[0] == Lit(2));
}

TEST_CASE("minimize_core yields a minimal core") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    CnfFormula f = random_3cnf(8, 34, seed);
    SatEngine eng(f);
    if (eng.solve() == Verdict::Unsat) continue;
    auto assumed = random_assumptions(8, 8, seed * 37);
    std::sort(assumed.begin(), assumed.end());
    if (eng.solve(assumed) == Verdict::Sat) continue;

    PartialAssignment min = minimize_core(eng, assumed);
    CHECK(!brute_satisfiable(f, min));  // still a core
    for (size_t i = 0; i < min.size(); ++i) {
      PartialAssignment reduced = min;
      reduced.erase(reduced.begin() + static_cast<long>(i));
      CHECK(brute_satisfiable(f, reduced));  // every deletion breaks it
    }
  }
}

TEST_CASE("minimize_core rejects satisfiable input") {
  CnfFormula f(2);
  f.add_clause(Clause({Lit(1), Lit(2)}));
  SatEngine eng(f);
  PartialAssignment sat_core{Lit(1)};
  CHECK_THROWS_AS(minimize_core(eng, sat_core), std::invalid_argument);

  PartialAssignment unsorted{Lit(2), Lit(1)};
  CHECK_THROWS_AS(minimize_core(eng, unsorted), std::invalid_argument);
}

TEST_CASE("cut_from_core builds the negation clause") {
  PartialAssignment core{Lit(1), Lit(-3)};
  ClauseCut cut = cut_from_core(core, CutOrigin::Icca);
  CHECK(cut.clause == Clause({Lit(-1), Lit(3)}));
  CHECK(cut.length_before == 2);
  CHECK(cut.length_after == 2);
  CHECK(cut.row.rhs() == 0.0);  // (1-x1) + x3 >= 1
  CHECK_THROWS_AS(cut_from_core({}, CutOrigin::Icca), std::invalid_argument);
}

TEST_CASE("icca separates the worked example point") {
  CnfOptInstance inst = worked_example();
  SatEngine eng(inst.formula);
  std::vector<double> xbar{0.5, 0.5, 0.0};
  auto cut = icca(eng, xbar);
  REQUIRE(cut.has_value());
  CHECK(cut->clause == Clause({Lit(3)}));
  CHECK(cut->origin == CutOrigin::Icca);
  CHECK(cut->length_before == 1);  // one integral component assumed
  CHECK(cut->length_after == 1);
  CHECK(clause_lhs_at(cut->clause, xbar) < 1.0 - kCutViolationTol);
}

TEST_CASE("icca returns nothing when the integral part extends to a model") {
  CnfOptInstance inst = worked_example();
  SatEngine eng(inst.formula);
  std::vector<double> xbar{1.0, 1.0, 1.0};
  CHECK(!icca(eng, xbar).has_value());
}

TEST_CASE("icca incompleteness on the two-clause formula") {
  CnfFormula f = incompleteness_formula();
  SatEngine eng(f);
  std::vector<double> xbar{0.5, 0.5};
  CHECK(!icca(eng, xbar).has_value());
}

TEST_CASE("icca core is minimized below the assumption set") {
  // x3 alone is refuted; x1, x2 are innocent bystanders fixed integrally.
  CnfFormula f(3);
  f.add_clause(Clause({Lit(-3)}));
  f.add_clause(Clause({Lit(1), Lit(2), Lit(3)}));
  SatEngine eng(f);
  std::vector<double> xbar{1.0, 0.0, 1.0};
  auto cut = icca(eng, xbar);
  REQUIRE(cut.has_value());
  CHECK(cut->clause == Clause({Lit(-3)}));
  CHECK(cut->length_before == 3);
  CHECK(cut->length_after == 1);
}

TEST_CASE("lcca on the worked example") {
  CnfOptInstance inst = worked_example();
  SatEngine eng(inst.formula);
  KnownClauseDb db;
  std::vector<double> xbar{0.5, 0.5, 0.0};
  auto cut = lcca(eng, db, xbar);
  REQUIRE(cut.has_value());
  CHECK(cut->clause == Clause({Lit(3)}));
  CHECK(cut->origin == CutOrigin::Lcca);
  CHECK(db.size() >= 1);  // the refuted no-good went in
}

TEST_CASE("lcca mines learned clauses even when the assumptions extend") {
  // Seed the database through a refuted point first, then present a point
  // whose integral part is extendable but which a known clause still cuts.
  CnfOptInstance inst = worked_example();
  SatEngine eng(inst.formula);
  KnownClauseDb db;
  std::vector<double> first{0.5, 0.5, 0.0};
  REQUIRE(lcca(eng, db, first).has_value());

  std::vector<double> again{0.4, 0.6, 0.2};  // nothing integral; (z) violated
  auto cut = lcca(eng, db, again);
  REQUIRE(cut.has_value());
  CHECK(cut->clause == Clause({Lit(3)}));
}

TEST_CASE("lcca returns nothing without a violated known clause") {
  CnfFormula f = incompleteness_formula();
  SatEngine eng(f);
  KnownClauseDb db;
  std::vector<double> xbar{0.5, 0.5};
  CHECK(!lcca(eng, db, xbar).has_value());
}

TEST_CASE("separated cuts pass the quality properties") {
  int cuts_checked = 0;
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    CnfFormula f = satisfiable_3cnf(8, 30, seed * 17);
    auto sat = satisfying_masks(f);
    SatEngine eng(f);
    KnownClauseDb db;
    SplitMix64 rng(seed);
    std::vector<double> xbar(8);
    for (auto& v : xbar) {
      uint64_t r = rng.bounded(5);
      v = r == 0 ? 0.0 : (r == 1 ? 1.0 : 0.25 * static_cast<double>(r));
    }
    for (bool use_lcca : {false, true}) {
      auto cut = use_lcca ? lcca(eng, db, xbar) : icca(eng, xbar);
      if (!cut) continue;
      ++cuts_checked;
      // Valid: holds for every satisfying assignment.
      CHECK(brute_implied(sat, cut->clause));
      // Separating: violated at xbar.
      CHECK(clause_lhs_at(cut->clause, xbar) < 1.0 - kCutViolationTol);
      // Minimal: dropping any literal of the core breaks unsatisfiability.
      PartialAssignment core;
      for (Lit l : cut->clause.literals()) core.push_back(~l);
      CHECK(!brute_satisfiable(f, core));
      for (size_t i = 0; i < core.size(); ++i) {
        PartialAssignment reduced = core;
        reduced.erase(reduced.begin() + static_cast<long>(i));
        CHECK(brute_satisfiable(f, reduced));
      }
      // Supporting: some satisfying assignment meets the row with equality,
      // i.e. satisfies exactly one literal of the clause.
      bool touched = false;
      for (uint32_t m : sat) {
        int count = 0;
        for (Lit l : cut->clause.literals())
          count += (((m >> (l.var() - 1)) & 1u) == l.is_positive()) ? 1 : 0;
        touched |= (count == 1);
      }
      CHECK(touched);
    }
  }
  CHECK(cuts_checked > 0);
}
