#include <gtest/gtest.h>

#include <random>

#include "qrg/check.hpp"
#include "qrg/generators.hpp"
#include "qrg/proof.hpp"
#include "qrg/solver.hpp"
#include "test_support.hpp"

using namespace qrg;
using qrg::test::example1;
using qrg::test::example1_trace;
using qrg::test::example2_trace;
using qrg::test::lits;
using qrg::test::make_proof;
using qrg::test::step;

namespace {

const auto C = ConstraintKind::Clause;
const auto U = ConstraintKind::Cube;

SolverOptions config(int i) {
  SolverOptions o;
  o.axioms.enable_qbce = i == 1 || i == 5;
  o.axioms.enable_abs = i == 2 || i >= 4;
  o.axioms.enable_trivial_truth = i >= 3;
  if (i == 5) {
    o.axioms.oracle = OracleKind::Brute;
    o.axioms.brute_budget = 1000;
  }
  o.axioms.oracle_interval_log2 = o.axioms.sat_interval_log2 = 0;
  return o;
}

bool in_matrix(const Pcnf& f, const Constraint& c) {
  for (const auto& m : f.matrix)
    if (m.same_as(c)) return true;
  return false;
}

}  // namespace

TEST(Trace, WriteFormatIsExact) {
  const std::string text = write_proof(example2_trace());
  EXPECT_EQ(text, "p qrgp 4 2\n1 gen-cu-init U -1 -2 0 0 a -1 -2 0 d -1 -2 0\n2 red U 0 1 0\n");
}

TEST(Trace, RoundTrip) {
  for (const auto& p : {example1_trace(), example2_trace(), test::phi_qu_refutation(3)}) {
    const Proof q = read_proof(write_proof(p));
    EXPECT_EQ(q.steps, p.steps);
    EXPECT_EQ(q.num_vars, p.num_vars);
  }
}

TEST(Trace, MalformedInputIsRejected) {
  for (const char* bad : {"1 res C 0 0\n", "p qrgp 2 1\n1 frob C 0 0\n", "p qrgp 2 1\n1 res X 0 0\n",
                          "p qrgp 2 1\n1 res C 1 2\n", "p qrgp 2 2\n1 cl-init C 1 0 0\n",
                          "p qrgp 2 1\n2 cl-init C 1 0 0\n"})
    EXPECT_THROW(read_proof(std::string(bad)), ProofFormatError) << bad;
}

TEST(Check, RunningExampleHandTrace) {
  const auto r = check(example1_trace(), example1(), CheckMode::QRes);
  EXPECT_TRUE(r.accepted) << r.reason;
  EXPECT_EQ(r.final_kind, U);
  EXPECT_EQ(example1_trace().size(), 6u);
}

TEST(Check, GeneralizedCubeTrace) {
  EXPECT_TRUE(check(example2_trace(), example1(), CheckMode::QResAbs));
  const auto r = check(example2_trace(), example1(), CheckMode::QRes);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.step, 1);
}

TEST(Check, CubePivotMustBeUniversal) {
  // resolve the unreduced cu-init cubes: they clash on u and y
  Proof p = example1_trace();
  p.steps[4].antecedents = {1, 3};
  EXPECT_FALSE(check(p, example1(), CheckMode::QRes));
  // recorded pivot y instead of u
  Proof q = example1_trace();
  q.steps[4].pivot = 4;
  const auto r = check(q, example1(), CheckMode::QRes);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.step, 5);
  // a cube "resolution" on an existential variable
  const Proof e = make_proof(4, {step(Rule::CuInit, U, lits({-1, -2, -3, -4}), {}, lits({-1, -2, -3, -4})),
                                 step(Rule::CuInit, U, lits({-1, -2, 3, 4}), {}, lits({-1, -2, 3, 4})),
                                 step(Rule::Res, U, lits({-1, -2, -3, 3}), {1, 2})});
  EXPECT_FALSE(check(e, example1(), CheckMode::QRes));
}

TEST(Check, AxiomSideConditions) {
  const Pcnf f = example1();
  // clause not in the matrix
  EXPECT_FALSE(check(make_proof(4, {step(Rule::ClInit, C, lits({1, 2}))}), f, CheckMode::QRes));
  // cu-init witness that does not satisfy the matrix
  EXPECT_FALSE(check(make_proof(4, {step(Rule::CuInit, U, lits({-1, -2}), {}, lits({-1, -2}))}), f, CheckMode::QRes));
  // gen-cu-init on a decision that skips the outer block
  EXPECT_FALSE(check(make_proof(4, {step(Rule::GenCuInit, U, lits({-3}), {}, lits({-3}), lits({-3}))}), f,
                     CheckMode::QResAbs));
  // gen-cl-init whose residual is satisfiable
  EXPECT_FALSE(check(make_proof(4, {step(Rule::GenClInit, C, lits({1, 2}), {}, lits({-1, -2}), lits({-1, -2}))}), f,
                     CheckMode::QResAbs));
  // abs-cl-init on a satisfiable abstraction
  EXPECT_FALSE(check(make_proof(4, {step(Rule::AbsClInit, C, lits({1, 2}), {}, lits({-1, -2}))}), f,
                     CheckMode::QResAbs));
  // reduction of an existential from a clause
  EXPECT_FALSE(check(make_proof(4, {step(Rule::ClInit, C, lits({3, -4})), step(Rule::Red, C, lits({3}), {1})}), f,
                     CheckMode::QRes));
  // final constraint is not empty
  EXPECT_FALSE(check(make_proof(4, {step(Rule::ClInit, C, lits({3, -4}))}), f, CheckMode::QRes));
}

TEST(Check, QuResolutionOnlyInItsMode) {
  const Pcnf f = generate_phi_t(2);
  const Proof p = test::phi_qu_refutation(2);
  EXPECT_TRUE(check(p, f, CheckMode::QuRes));
  EXPECT_FALSE(check(p, f, CheckMode::QRes));
  EXPECT_FALSE(check(p, f, CheckMode::QResAbs));
}

TEST(Translate, SingleUniversalStep) {
  const Pcnf f = generate_phi_t(1);
  const Proof out = translate_qu_to_abs(test::phi_qu_refutation(1), f);
  // x1 = 4, f1 = 5
  const auto& s = out.steps[2];
  EXPECT_EQ(s.rule, Rule::AbsClInit);
  EXPECT_EQ(s.literals, lits({5}));
  EXPECT_EQ(s.witness, lits({-5}));
  EXPECT_TRUE(s.antecedents.empty());
}

TEST(Translate, HandBuiltRefutations) {
  for (int t = 1; t <= 4; ++t) {
    const Pcnf f = generate_phi_t(t);
    const Proof in = test::phi_qu_refutation(t);
    ASSERT_TRUE(check(in, f, CheckMode::QuRes)) << t;
    const Proof out = translate_qu_to_abs(in, f);
    const auto r = check(out, f, CheckMode::QResAbs);
    EXPECT_TRUE(r.accepted) << t << ": " << r.reason;
    EXPECT_LE(out.size(), in.size());
    EXPECT_EQ(out.count(Rule::AbsClInit), static_cast<std::size_t>(t));
    EXPECT_EQ(out.count(Rule::QuRes), 0u);
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(out.steps[i].literals, in.steps[i].literals);
  }
}

TEST(Translate, NoUniversalPivotsIsIdentity) {
  const Proof out = translate_qu_to_abs(example1_trace(), example1());
  EXPECT_EQ(out.steps, example1_trace().steps);
}

TEST(Translate, RejectsInvalidInput) {
  Proof p = test::phi_qu_refutation(2);
  p.steps[2].literals = lits({-6});
  EXPECT_THROW(translate_qu_to_abs(p, generate_phi_t(2)), TranslationError);
}

TEST(Emit, RunningExampleWithoutGeneralizedAxioms) {
  SolverOptions o;
  o.axioms.enable_qbce = false;
  const auto r = solve(example1(), o);
  ASSERT_TRUE(r.proof);
  EXPECT_TRUE(check(*r.proof, example1(), CheckMode::QRes));
}

TEST(Emit, Phi1WithAbstraction) {
  SolverOptions o;
  o.axioms.enable_qbce = false;
  o.axioms.enable_abs = true;
  o.abs_probes = {lits({-5})};
  const auto r = solve(generate_phi_t(1), o);
  ASSERT_TRUE(r.proof);
  EXPECT_GE(r.proof->count(Rule::AbsClInit), 1u);
  EXPECT_TRUE(check(*r.proof, generate_phi_t(1), CheckMode::QResAbs));
}

TEST(Emit, UnknownHasNoProof) {
  SolverOptions o;
  o.max_decisions = 1;
  EXPECT_FALSE(solve(generate_phi_t(4), o).proof.has_value());
}

TEST(Emit, EveryProofChecksAndMatchesVerdict) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Pcnf f = generate_corpus_instance(seed);
    for (int i = 0; i < 6; ++i) {
      const auto r = solve(f, config(i));
      ASSERT_TRUE(r.proof);
      const auto c = check(*r.proof, f, CheckMode::QResAbs);
      ASSERT_TRUE(c.accepted) << seed << '/' << i << ": step " << c.step << ' ' << c.reason;
      ASSERT_EQ(c.final_kind == C, r.verdict == Verdict::Unsat);
      // the trace survives serialization
      ASSERT_TRUE(check(read_proof(write_proof(*r.proof)), f, CheckMode::QResAbs));
    }
  }
}

TEST(Mutation, SingleStepMutationsAreRejected) {
  std::mt19937_64 rng(41);
  std::size_t mutations = 0, rejected = 0;
  for (std::uint64_t seed = 0; mutations < 12000 && seed < 20000; ++seed) {
    const Pcnf f = generate_corpus_instance(seed);
    const auto r = solve(f, config(static_cast<int>(seed % 6)));
    const Proof& p = *r.proof;
    if (p.size() < 2) continue;
    for (int k = 0; k < 4; ++k) {
      Proof m = p;
      auto& s = m.steps[rng() % m.size()];
      const int kind = static_cast<int>(rng() % 3);
      if (kind == 0 && !s.literals.empty()) {
        auto& l = s.literals[rng() % s.literals.size()];
        l = ~l;
        // landing on another matrix clause leaves a valid proof
        if (s.rule == Rule::ClInit && in_matrix(f, s.constraint())) continue;
      } else if (kind == 1 && !s.antecedents.empty()) {
        s.antecedents.erase(s.antecedents.begin() + static_cast<std::ptrdiff_t>(rng() % s.antecedents.size()));
      } else if (kind == 2 && (s.rule == Rule::Res)) {
        const auto& a = m.steps[static_cast<std::size_t>(s.antecedents[0] - 1)];
        Var other = 0;
        for (Literal l : a.literals) {
          const auto& b = m.steps[static_cast<std::size_t>(s.antecedents[1] - 1)].literals;
          if (std::find(b.begin(), b.end(), ~l) == b.end()) other = l.var();
        }
        if (other == 0) other = a.literals.empty() ? 1 : a.literals[0].var() + 1;
        s.pivot = other;
      } else {
        continue;
      }
      ++mutations;
      if (!check(m, f, CheckMode::QResAbs).accepted) ++rejected;
    }
  }
  EXPECT_GE(mutations, 10000u);
  EXPECT_EQ(rejected, mutations);
}
