#pragma once

// Exact recursive QBF evaluation and propositional model enumeration.
// Ground truth for tests and a complete (budgeted) oracle at tiny scale.

#include <cstdint>
#include <vector>

#include "qrg/formula.hpp"

namespace qrg {

struct BruteOptions {
  std::uint64_t node_budget = 10'000'000;
  bool simplify = true;  // unit/pure reasoning inside the recursion
};

namespace detail {

// Evaluates Pi.((matrix /\ extra_clauses) \/ cubes) by prefix-order splitting.
class BruteEvaluator {
public:
  BruteEvaluator(const Prefix& prefix, std::vector<const Constraint*> clauses,
                 std::vector<const Constraint*> cubes, BruteOptions opts)
      : prefix_(prefix), clauses_(std::move(clauses)), cubes_(std::move(cubes)), opts_(opts) {
    for (const auto& b : prefix_.blocks())
      for (Var v : b.vars) order_.push_back(v);
  }

  Verdict run(std::vector<signed char> values) {
    values.resize(prefix_.max_var() + 1, 0);
    nodes_ = 0;
    const int r = eval(values);
    if (r < 0) return Verdict::Unknown;
    return r ? Verdict::Sat : Verdict::Unsat;
  }

private:
  int val(const std::vector<signed char>& a, Literal l) const {
    const int v = a[l.var()];
    return l.is_positive() ? v : -v;
  }

  // 1 true, 0 false, -1 budget exhausted
  int eval(std::vector<signed char>& a) {
    if (++nodes_ > opts_.node_budget) return -1;
    for (;;) {
      bool any_cube_possible = false;
      for (const auto* k : cubes_) {
        bool possible = true, all_true = true;
        for (Literal l : *k) {
          const int v = val(a, l);
          if (v < 0) { possible = false; break; }
          if (v == 0) all_true = false;
        }
        if (possible && all_true) return 1;
        any_cube_possible |= possible;
      }
      bool all_sat = true, falsified = false;
      for (const auto* c : clauses_) {
        bool sat = false, open = false;
        for (Literal l : *c) {
          const int v = val(a, l);
          if (v > 0) { sat = true; break; }
          if (v == 0) open = true;
        }
        if (sat) continue;
        all_sat = false;
        if (!open) { falsified = true; break; }
      }
      if (all_sat) return 1;
      if (falsified && !any_cube_possible) return 0;
      if (!opts_.simplify || !cubes_.empty() || falsified) break;
      const int s = simplify(a);
      if (s == 0) return 0;
      if (s == 2) break;  // nothing changed
    }
    Var next = 0;
    for (Var v : order_)
      if (a[v] == 0) { next = v; break; }
    if (next == 0) return 0;  // all assigned, not satisfied
    const bool exists = prefix_.quantifier(next) == Quantifier::Exists;
    bool saw_unknown = false;
    for (int phase : {-1, 1}) {
      auto b = a;
      b[next] = static_cast<signed char>(phase);
      const int r = eval(b);
      if (r < 0) { saw_unknown = true; continue; }
      if (exists && r == 1) return 1;
      if (!exists && r == 0) return 0;
    }
    if (saw_unknown) return -1;
    return exists ? 0 : 1;
  }

  // 0: conflict, 1: assigned something, 2: fixpoint
  int simplify(std::vector<signed char>& a) {
    std::vector<int> occ(2 * (prefix_.max_var() + 1), 0);
    for (const auto* c : clauses_) {
      bool sat = false;
      for (Literal l : *c)
        if (val(a, l) > 0) { sat = true; break; }
      if (sat) continue;
      int exist_count = 0, max_e_block = -1;
      Literal unit;
      for (Literal l : *c) {
        if (val(a, l) != 0) continue;
        ++occ[l.index()];
        if (prefix_.is_existential(l)) {
          ++exist_count;
          unit = l;
          max_e_block = std::max(max_e_block, prefix_.block(l.var()));
        }
      }
      if (exist_count == 0) return 0;  // residual is all-universal
      if (exist_count == 1) {
        bool blocked = false;
        for (Literal l : *c)
          if (val(a, l) == 0 && prefix_.is_universal(l) && prefix_.block(l.var()) < max_e_block)
            blocked = true;
        if (!blocked) {
          a[unit.var()] = unit.is_positive() ? 1 : -1;
          return 1;
        }
      }
    }
    for (Var v : order_) {
      if (a[v] != 0) continue;
      const int pos = occ[Literal::positive(v).index()];
      const int neg = occ[Literal::negative(v).index()];
      if ((pos == 0) == (neg == 0)) continue;
      const Literal pure = pos ? Literal::positive(v) : Literal::negative(v);
      const Literal set = prefix_.quantifier(v) == Quantifier::Exists ? pure : ~pure;
      a[v] = set.is_positive() ? 1 : -1;
      return 1;
    }
    return 2;
  }

  const Prefix& prefix_;
  std::vector<const Constraint*> clauses_;
  std::vector<const Constraint*> cubes_;
  BruteOptions opts_;
  std::vector<Var> order_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exact verdict of Pi.((psi /\ extra_clauses) \/ extra_cubes), optionally
/// under a starting assignment. UNKNOWN when the node budget runs out.
inline Verdict evaluate(const Pcnf& f, const std::vector<Constraint>& extra_clauses,
                        const std::vector<Constraint>& extra_cubes, const std::vector<Literal>& under,
                        BruteOptions opts = {}) {
  std::vector<const Constraint*> cls, cubes;
  for (const auto& c : f.matrix) cls.push_back(&c);
  for (const auto& c : extra_clauses) cls.push_back(&c);
  for (const auto& c : extra_cubes) cubes.push_back(&c);
  std::vector<signed char> start(f.prefix.max_var() + 1, 0);
  for (Literal l : under)
    if (l.var() < start.size()) start[l.var()] = l.is_positive() ? 1 : -1;
  detail::BruteEvaluator ev(f.prefix, std::move(cls), std::move(cubes), opts);
  return ev.run(std::move(start));
}

inline Verdict evaluate(const Pcnf& f, BruteOptions opts = {}) { return evaluate(f, {}, {}, {}, opts); }

inline Verdict evaluate(const Pcnf& f, std::uint64_t budget) {
  BruteOptions o;
  o.node_budget = budget;
  return evaluate(f, o);
}

/// Verdict of phi[A] for an assignment A.
inline Verdict evaluate_under(const Pcnf& f, const std::vector<Literal>& a, BruteOptions opts = {}) {
  return evaluate(f, {}, {}, a, opts);
}

class EnumerationCapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// All propositional models of the clause set over `vars` (each model lists
/// one literal per variable, in the order of `vars`).
inline std::vector<std::vector<Literal>> enumerate_models(const std::vector<Constraint>& clauses,
                                                          const std::vector<Var>& vars,
                                                          std::size_t cap = 20) {
  if (vars.size() > cap)
    throw EnumerationCapExceeded("model enumeration over " + std::to_string(vars.size()) +
                                 " variables exceeds cap " + std::to_string(cap));
  Var maxv = 0;
  for (Var v : vars) maxv = std::max(maxv, v);
  for (const auto& c : clauses)
    for (Literal l : c) maxv = std::max(maxv, l.var());
  std::vector<std::vector<Literal>> models;
  std::vector<signed char> a(maxv + 1, 0);
  const std::uint64_t n = std::uint64_t{1} << vars.size();
  for (std::uint64_t bits = 0; bits < n; ++bits) {
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = (bits >> i) & 1 ? 1 : -1;
    bool ok = true;
    for (const auto& c : clauses) {
      bool sat = false;
      for (Literal l : c) {
        const int v = a[l.var()];
        if ((l.is_positive() ? v : -v) > 0) { sat = true; break; }
      }
      if (!sat) { ok = false; break; }
    }
    if (!ok) continue;
    std::vector<Literal> m;
    for (std::size_t i = 0; i < vars.size(); ++i)
      m.push_back((bits >> i) & 1 ? Literal::positive(vars[i]) : Literal::negative(vars[i]));
    models.push_back(std::move(m));
  }
  return models;
}

}  // namespace qrg
