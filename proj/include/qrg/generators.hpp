#pragma once

// Instance generators: the phi_t family and seeded random PCNFs.

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "qrg/formula.hpp"

namespace qrg {

/// Variable numbering of phi_t: d0 = 1; d_j, e_j, x_j = 3j-1, 3j, 3j+1;
/// f_j = 3t+1+j.
struct PhiVars {
  int t;
  Var d(int j) const { return j == 0 ? 1 : static_cast<Var>(3 * j - 1); }
  Var e(int j) const { return static_cast<Var>(3 * j); }
  Var x(int j) const { return static_cast<Var>(3 * j + 1); }
  Var f(int j) const { return static_cast<Var>(3 * t + 1 + j); }
};

inline Pcnf generate_phi_t(int t) {
  if (t < 1) throw std::invalid_argument("phi_t needs t >= 1");
  const PhiVars v{t};
  Pcnf f;
  f.num_vars = static_cast<Var>(4 * t + 1);
  f.prefix.add_block(Quantifier::Exists, {v.d(0), v.d(1), v.e(1)});
  for (int j = 1; j <= t; ++j) {
    f.prefix.add_block(Quantifier::Forall, {v.x(j)});
    if (j < t) f.prefix.add_block(Quantifier::Exists, {v.d(j + 1), v.e(j + 1)});
  }
  std::vector<Var> fs;
  for (int j = 1; j <= t; ++j) fs.push_back(v.f(j));
  f.prefix.add_block(Quantifier::Exists, fs);

  auto pos = Literal::positive;
  auto neg = Literal::negative;
  f.matrix.push_back(Constraint::clause({neg(v.d(0))}));
  f.matrix.push_back(Constraint::clause({pos(v.d(0)), neg(v.d(1)), neg(v.e(1))}));
  for (int j = 1; j < t; ++j) {
    f.matrix.push_back(Constraint::clause({pos(v.d(j)), neg(v.x(j)), neg(v.d(j + 1)), neg(v.e(j + 1))}));
    f.matrix.push_back(Constraint::clause({pos(v.e(j)), pos(v.x(j)), neg(v.d(j + 1)), neg(v.e(j + 1))}));
  }
  std::vector<Literal> c2t{pos(v.d(t)), neg(v.x(t))}, c2t1{pos(v.e(t)), pos(v.x(t))};
  for (int j = 1; j <= t; ++j) {
    c2t.push_back(neg(v.f(j)));
    c2t1.push_back(neg(v.f(j)));
  }
  f.matrix.push_back(Constraint::clause(c2t));
  f.matrix.push_back(Constraint::clause(c2t1));
  for (int j = 1; j <= t; ++j) {
    f.matrix.push_back(Constraint::clause({pos(v.x(j)), pos(v.f(j))}));
    f.matrix.push_back(Constraint::clause({neg(v.x(j)), pos(v.f(j))}));
  }
  return f;
}

struct RandomSpec {
  std::uint64_t seed = 1;
  int vars = 8;
  int clauses = 20;
  int blocks = 3;
  int clause_len = 3;
  Quantifier first = Quantifier::Exists;
  int min_existential = 0;  // existential literals per clause, when available
};

/// Reproducible random PCNF: alternating blocks of near-equal size over
/// variables 1..vars in order, clauses of distinct variables with random
/// polarities, no duplicate clauses.
inline Pcnf generate_random(const RandomSpec& s) {
  if (s.vars < 1 || s.clauses < 0 || s.blocks < 1 || s.clause_len < 1)
    throw std::invalid_argument("random PCNF parameters must be positive");
  if (s.blocks > s.vars) throw std::invalid_argument("more blocks than variables");
  if (s.clause_len > s.vars) throw std::invalid_argument("clause length exceeds variable count");
  std::mt19937_64 rng(s.seed);
  auto below = [&](std::uint64_t n) { return rng() % n; };
  Pcnf f;
  f.num_vars = static_cast<Var>(s.vars);
  Quantifier q = s.first;
  Var next = 1;
  for (int b = 0; b < s.blocks; ++b) {
    const int size = s.vars / s.blocks + (b < s.vars % s.blocks ? 1 : 0);
    std::vector<Var> vs;
    for (int i = 0; i < size; ++i) vs.push_back(next++);
    f.prefix.add_block(q, vs);
    q = dual(q);
  }
  std::vector<Var> evars;
  for (const auto& b : f.prefix.blocks())
    if (b.quantifier == Quantifier::Exists) evars.insert(evars.end(), b.vars.begin(), b.vars.end());
  const int want_e = std::min({s.min_existential, static_cast<int>(evars.size()), s.clause_len});
  std::set<std::vector<int>> seen;
  int attempts = 0;
  while (static_cast<int>(f.matrix.size()) < s.clauses) {
    if (++attempts > 100 * (s.clauses + 10)) throw std::invalid_argument("cannot generate enough distinct clauses");
    std::vector<Var> vs;
    while (static_cast<int>(vs.size()) < want_e) {
      const Var v = evars[below(evars.size())];
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    while (static_cast<int>(vs.size()) < s.clause_len) {
      const Var v = static_cast<Var>(below(static_cast<std::uint64_t>(s.vars)) + 1);
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    std::vector<Literal> lits;
    std::vector<int> key;
    for (Var v : vs) {
      const Literal l = below(2) ? Literal::positive(v) : Literal::negative(v);
      lits.push_back(l);
      key.push_back(l.dimacs());
    }
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    f.matrix.push_back(Constraint::clause(lits));
  }
  return f;
}

inline Pcnf generate_random(std::uint64_t seed, int vars, int clauses, int blocks, int clause_len) {
  return generate_random(RandomSpec{seed, vars, clauses, blocks, clause_len, Quantifier::Exists});
}

/// Small mixed-shape instance for agreement corpora: up to 12 variables,
/// 30 clauses and 4 blocks, mostly 3-literal clauses, either leading
/// quantifier.
inline Pcnf generate_corpus_instance(std::uint64_t seed, int max_vars = 12, int max_clauses = 30, int max_blocks = 4) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 7);
  auto range = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  RandomSpec s;
  s.seed = rng();
  s.vars = range(std::min(4, max_vars), max_vars);
  s.blocks = range(std::min(2, std::min(max_blocks, s.vars)), std::min(max_blocks, s.vars));
  const int roll = range(0, 9);
  s.clause_len = std::min(s.vars, roll < 2 ? 2 : roll < 8 ? 3 : 4);
  double available = 1;
  for (int i = 0; i < s.clause_len; ++i) available = available * (s.vars - i) / (i + 1) * 2;
  const int cap = std::min(max_clauses, std::max(1, static_cast<int>(available / 2)));
  s.clauses = range(std::min(cap, s.vars), std::min(cap, 3 * s.vars));
  s.min_existential = 2;
  s.first = rng() % 2 ? Quantifier::Exists : Quantifier::Forall;
  for (;;) {
    try {
      return generate_random(s);
    } catch (const std::invalid_argument&) {
      if (s.clauses <= 1) throw;
      s.clauses = s.clauses * 3 / 4;
    }
  }
}

}  // namespace qrg
