#include <gtest/gtest.h>

#include "qrg/brute.hpp"
#include "qrg/generators.hpp"
#include "qrg/qdimacs.hpp"
#include "test_support.hpp"

using namespace qrg;
using qrg::test::clause;
using qrg::test::example1;

TEST(Parse, RunningExample) {
  const Pcnf f = example1();
  EXPECT_EQ(f.num_vars, 4u);
  ASSERT_EQ(f.prefix.size(), 3u);
  EXPECT_EQ(f.prefix.blocks()[0].vars, (std::vector<Var>{1, 2}));
  EXPECT_EQ(f.prefix.blocks()[1].quantifier, Quantifier::Forall);
  ASSERT_EQ(f.matrix.size(), 6u);
  EXPECT_TRUE(f.matrix[0].same_as(clause({3, -4})));
  EXPECT_TRUE(f.matrix[5].same_as(clause({-2, 3, 4})));
}

TEST(Parse, TautologyRemovedGivesEmptyMatrix) {
  const Pcnf f = parse_qdimacs(std::string("p cnf 1 1\ne 1 0\n1 -1 0\n"));
  EXPECT_TRUE(f.matrix.empty());
  EXPECT_EQ(evaluate(f), Verdict::Sat);
}

TEST(Parse, FreeVariableIsAnError) {
  try {
    parse_qdimacs(std::string("p cnf 2 1\ne 1 0\n2 0\n"));
    FAIL() << "free variable accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.diagnostics().line, 3);
    EXPECT_NE(e.diagnostics().message.find("free variable 2"), std::string::npos);
  }
}

TEST(Parse, MalformedInputsReportLines) {
  struct Case {
    const char* text;
    int line;
  };
  const Case cases[] = {
      {"p cnf x 1\n", 1},
      {"e 1 0\n", 1},
      {"p cnf 2 1\ne 1 0\ne 1 0\n1 0\n", 3},
      {"p cnf 2 1\ne 1 2\n", 2},
      {"p cnf 2 1\ne 1 0\n1 0\na 2 0\n", 4},
      {"p cnf 2 1\ne 1 3 0\n", 2},
  };
  for (const auto& c : cases) {
    try {
      parse_qdimacs(std::string(c.text));
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.diagnostics().line, c.line) << c.text;
    }
  }
}

TEST(Parse, ClauseCountMismatchIsAWarning) {
  std::istringstream in("p cnf 2 5\ne 1 2 0\n1 2 0\n");
  const auto r = parse_qdimacs_with_warnings(in);
  EXPECT_EQ(r.formula.matrix.size(), 1u);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Parse, DuplicateLiteralsAndComments) {
  const Pcnf f = parse_qdimacs(std::string("c hi\np cnf 2 1\nc between\ne 1 2 0\nc again\n1 1 2 0\n"));
  ASSERT_EQ(f.matrix.size(), 1u);
  EXPECT_EQ(f.matrix[0].size(), 2u);
}

TEST(Parse, MergesConsecutiveQuantifierLines) {
  const Pcnf f = parse_qdimacs(std::string("p cnf 3 1\ne 1 0\ne 2 0\na 3 0\n1 2 3 0\n"));
  EXPECT_EQ(f.prefix.size(), 2u);
}

TEST(Write, RoundTripRunningExample) {
  const Pcnf f = example1();
  EXPECT_EQ(parse_qdimacs(write_qdimacs(f)), f);
}

TEST(Write, SingleBlockSingleClauseIsThreeLines) {
  Pcnf f;
  f.num_vars = 1;
  f.prefix.add_block(Quantifier::Exists, {1});
  f.matrix.push_back(clause({1}));
  const std::string s = write_qdimacs(f);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
  EXPECT_EQ(s, "p cnf 1 1\ne 1 0\n1 0\n");
}

TEST(Write, RoundTripGenerators) {
  for (int t = 1; t <= 6; ++t) {
    const Pcnf f = generate_phi_t(t);
    EXPECT_EQ(parse_qdimacs(write_qdimacs(f)), f) << t;
  }
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Pcnf f = generate_corpus_instance(seed);
    ASSERT_EQ(parse_qdimacs(write_qdimacs(f)), f) << seed;
  }
}
