#include <gtest/gtest.h>

#include "qrg/brute.hpp"
#include "qrg/check.hpp"
#include "qrg/generators.hpp"
#include "qrg/solver.hpp"
#include "test_support.hpp"

using namespace qrg;
using qrg::test::clause;
using qrg::test::example1;
using qrg::test::lits;

namespace {

SolverOptions plain() {
  SolverOptions o;
  o.axioms.enable_qbce = false;
  return o;
}

std::vector<SolverOptions> all_configs() {
  std::vector<SolverOptions> c(6, plain());
  c[1].axioms.enable_qbce = true;
  c[2].axioms.enable_abs = true;
  c[3].axioms.enable_trivial_truth = true;
  c[4].axioms.enable_abs = c[4].axioms.enable_trivial_truth = true;
  c[5].axioms.enable_qbce = c[5].axioms.enable_abs = c[5].axioms.enable_trivial_truth = true;
  c[5].axioms.oracle = OracleKind::Brute;
  c[5].axioms.brute_budget = 1000;
  for (auto& o : c) o.axioms.oracle_interval_log2 = o.axioms.sat_interval_log2 = 0;
  return c;
}

bool contains_step(const Proof& p, Rule r, const Constraint& c) {
  for (const auto& s : p.steps)
    if (s.rule == r && s.constraint().same_as(c)) return true;
  return false;
}

}  // namespace

TEST(Solve, RunningExampleIsSat) {
  const auto r = solve(example1(), plain());
  EXPECT_EQ(r.verdict, Verdict::Sat);
  ASSERT_TRUE(r.proof);
  EXPECT_TRUE(r.proof->final_step().literals.empty());
  EXPECT_EQ(r.proof->final_step().kind, ConstraintKind::Cube);
}

TEST(Solve, PhiFamilyIsUnsat) {
  EXPECT_EQ(solve(generate_phi_t(1)).verdict, Verdict::Unsat);
  const Pcnf f4 = generate_phi_t(4);
  EXPECT_EQ(evaluate(f4), Verdict::Unsat);
  EXPECT_EQ(solve(f4).verdict, Verdict::Unsat);
}

TEST(Solve, TrivialInputs) {
  const Pcnf empty = parse_qdimacs(std::string("p cnf 1 1\ne 1 0\n1 -1 0\n"));
  EXPECT_EQ(solve(empty).verdict, Verdict::Sat);
  Pcnf f = example1();
  f.matrix.push_back(Constraint::clause({}));
  const auto r = solve(f);
  EXPECT_EQ(r.verdict, Verdict::Unsat);
  EXPECT_TRUE(check(*r.proof, f, CheckMode::QRes));
}

TEST(Solve, SingleUnitNeverDecides) {
  const Pcnf f = parse_qdimacs(std::string("p cnf 1 1\ne 1 0\n1 0\n"));
  SolverOptions o = plain();
  int decisions = 0;
  o.on_decision = [&](const std::vector<Literal>&, Literal) { ++decisions; };
  EXPECT_EQ(solve(f, o).verdict, Verdict::Sat);
  EXPECT_EQ(decisions, 0);
}

TEST(Decisions, FirstBlockThenUniversal) {
  SolverOptions o = plain();
  std::vector<std::pair<std::vector<Literal>, Literal>> seen;
  o.forced_decisions = lits({-1, -2});
  o.on_decision = [&](const std::vector<Literal>& t, Literal d) { seen.emplace_back(t, d); };
  solve(example1(), o);
  ASSERT_GE(seen.size(), 3u);
  EXPECT_TRUE(seen[0].first.empty());
  EXPECT_EQ(seen[0].second, Literal(-1));
  EXPECT_EQ(seen[1].second, Literal(-2));
  EXPECT_EQ(seen[2].first, lits({-1, -2}));
  EXPECT_EQ(seen[2].second.var(), 3u);
}

TEST(Decisions, PrefixOrderOnCorpus) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Pcnf f = generate_corpus_instance(seed);
    for (auto o : all_configs()) {
      bool ok = true;
      o.on_decision = [&](const std::vector<Literal>& t, Literal d) {
        std::vector<char> assigned(f.prefix.max_var() + 1, 0);
        for (Literal l : t) assigned[l.var()] = 1;
        if (assigned[d.var()]) ok = false;
        for (const auto& b : f.prefix.blocks()) {
          if (static_cast<int>(&b - f.prefix.blocks().data()) >= f.prefix.block(d.var())) break;
          for (Var v : b.vars)
            if (!assigned[v]) ok = false;
        }
      };
      solve(f, o);
      ASSERT_TRUE(ok) << seed;
    }
  }
}

TEST(Analyze, RunningExampleCubeResolutionOnU) {
  const auto r = solve(example1(), plain());
  ASSERT_TRUE(r.proof);
  const auto& p = *r.proof;
  EXPECT_TRUE(contains_step(p, Rule::CuInit, Constraint::cube(lits({-1, -2, -3, -4}))));
  EXPECT_TRUE(contains_step(p, Rule::CuInit, Constraint::cube(lits({-1, -2, 3, 4}))));
  EXPECT_TRUE(contains_step(p, Rule::Res, Constraint::cube(lits({-1, -2}))));
  EXPECT_TRUE(check(p, example1(), CheckMode::QRes));
}

TEST(Analyze, Phi1UnitFromAbstractionClause) {
  const PhiVars v{1};
  SolverOptions o = plain();
  o.axioms.enable_abs = true;
  o.abs_probes = {{Literal::negative(v.f(1))}};
  const auto r = solve(generate_phi_t(1), o);
  ASSERT_EQ(r.verdict, Verdict::Unsat);
  const auto& p = *r.proof;
  const Literal d1 = Literal::positive(v.d(1)), x1 = Literal::positive(v.x(1)), f1 = Literal::positive(v.f(1));
  EXPECT_TRUE(contains_step(p, Rule::AbsClInit, Constraint::clause({f1})));
  EXPECT_TRUE(contains_step(p, Rule::Res, Constraint::clause({d1, ~x1})));
  EXPECT_TRUE(contains_step(p, Rule::Red, Constraint::clause({d1})));
  EXPECT_EQ(p.count(Rule::AbsClInit), 1u);
}

TEST(Learning, Phi1LearnsD1AndPropagatesAtLevelZero) {
  const PhiVars v{1};
  SolverOptions o = plain();
  std::vector<std::vector<Literal>> trails;
  o.on_decision = [&](const std::vector<Literal>& t, Literal) { trails.push_back(t); };
  const auto r = solve(generate_phi_t(1), o);
  ASSERT_EQ(r.verdict, Verdict::Unsat);
  ASSERT_EQ(r.learned_clauses.size(), 1u);
  EXPECT_TRUE(r.learned_clauses[0].same_as(Constraint::clause({Literal::positive(v.d(1))})));
  // the decision after learning sees d1 propagated at level 0, right after -d0
  ASSERT_GE(trails.size(), 2u);
  EXPECT_EQ(trails.back()[1], Literal::positive(v.d(1)));
  EXPECT_TRUE(check(*r.proof, generate_phi_t(1), CheckMode::QRes));
}

TEST(Learning, AssertingAndNoDuplicates) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Pcnf f = generate_corpus_instance(seed, 14, 40, 4);
    for (const auto& o : all_configs()) {
      const auto r = solve(f, o);
      ASSERT_EQ(r.stats.non_asserting, 0u) << seed;
      for (const auto* store : {&r.learned_clauses, &r.learned_cubes}) {
        for (std::size_t i = 0; i < store->size(); ++i) {
          ASSERT_FALSE(has_complementary_pair((*store)[i].literals()));
          for (std::size_t j = i + 1; j < store->size(); ++j)
            ASSERT_FALSE((*store)[i].same_as((*store)[j])) << seed;
        }
      }
    }
  }
}

TEST(Learning, LearnedConstraintsAreSound) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Pcnf f = generate_corpus_instance(seed);
    const Verdict base = evaluate(f);
    for (const auto& o : all_configs()) {
      const auto r = solve(f, o);
      for (const auto& c : r.learned_clauses) ASSERT_TRUE(test::preserves_verdict(f, c, base)) << seed;
      for (const auto& c : r.learned_cubes) ASSERT_TRUE(test::preserves_verdict(f, c, base)) << seed;
    }
  }
}

TEST(Agreement, CorpusAndPhiUnderEveryConfig) {
  const auto configs = all_configs();
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Pcnf f = generate_corpus_instance(seed);
    const Verdict base = evaluate(f);
    for (const auto& o : configs) ASSERT_EQ(solve(f, o).verdict, base) << seed;
  }
  for (int t = 1; t <= 8; ++t)
    for (const auto& o : configs) ASSERT_EQ(solve(generate_phi_t(t), o).verdict, Verdict::Unsat) << t;
}

TEST(Limits, DecisionCapGivesUnknownWithoutProof) {
  SolverOptions o = plain();
  o.max_decisions = 1;
  const auto r = solve(generate_phi_t(5), o);
  EXPECT_EQ(r.verdict, Verdict::Unknown);
  EXPECT_FALSE(r.proof.has_value());
  EXPECT_EQ(r.stats.decisions, 1u);

  o = plain();
  o.max_conflicts = 1;
  EXPECT_EQ(solve(generate_phi_t(5), o).verdict, Verdict::Unknown);
}

TEST(Limits, InvalidConfigurationThrows) {
  SolverOptions o;
  o.axioms.sat_avg_disable_secs = -1;
  EXPECT_THROW(solve(example1(), o), std::invalid_argument);
}

TEST(Counters, TriedAtLeastSuccess) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Pcnf f = generate_corpus_instance(seed);
    for (const auto& o : all_configs()) {
      const auto s = solve(f, o).stats;
      ASSERT_GE(s.qbce_tried, s.qbce_success);
      ASSERT_GE(s.oracle_tried, s.oracle_success);
      ASSERT_GE(s.abs_tried, s.abs_success);
      ASSERT_GE(s.tt_tried, s.tt_success);
    }
  }
}

TEST(Counters, DeterministicAcrossRuns) {
  const Pcnf f = generate_phi_t(6);
  const auto a = solve(f, plain()), b = solve(f, plain());
  EXPECT_EQ(a.stats.decisions, b.stats.decisions);
  EXPECT_EQ(a.stats.conflicts, b.stats.conflicts);
  EXPECT_EQ(write_proof(*a.proof), write_proof(*b.proof));
}
