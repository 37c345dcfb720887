#pragma once

// Unit and pure literal detection for clauses and cubes, with universal
// (existential) reduction applied on the fly. The engine keeps its own
// incremental bookkeeping but shares the per-constraint rules below.

#include <vector>

#include "qrg/formula.hpp"

namespace qrg {

enum class ConstraintState {
  Inactive,  // clause has a true literal / cube has a false literal
  Empty,     // reduced residual is empty: conflicting clause, satisfied cube
  Unit,      // implies `implied`
  Open,
};

struct ConstraintCheck {
  ConstraintState state = ConstraintState::Open;
  Literal implied;
};

/// Classifies a clause or cube under a partial assignment given by
/// `value(l)` in {-1, 0, +1}.
template <class ValueFn>
ConstraintCheck check_constraint(const Prefix& p, const Constraint& c, ValueFn&& value) {
  const bool clause = c.is_clause();
  const Quantifier own = clause ? Quantifier::Exists : Quantifier::Forall;
  int own_count = 0;
  Literal own_lit;
  for (Literal l : c) {
    const int v = value(l);
    if (clause ? v > 0 : v < 0) return {ConstraintState::Inactive, {}};
    if (v == 0 && p.quantifier(l) == own) {
      ++own_count;
      own_lit = l;
    }
  }
  if (own_count == 0) return {ConstraintState::Empty, {}};
  if (own_count > 1) return {ConstraintState::Open, {}};
  const int b = p.block(own_lit.var());
  for (Literal l : c)
    if (value(l) == 0 && l != own_lit && p.block(l.var()) < b) return {ConstraintState::Open, {}};
  return {ConstraintState::Unit, clause ? own_lit : ~own_lit};
}

/// Pure literal of the active part of `matrix` to assign next, or an invalid
/// literal. Existential pure l yields l, universal pure l yields ~l. Lowest
/// variable first.
template <class ValueFn>
Literal find_pure(const Pcnf& f, ValueFn&& value) {
  std::vector<char> occ(2 * (static_cast<std::size_t>(f.prefix.max_var()) + 1), 0);
  for (const auto& c : f.matrix) {
    bool sat = false;
    for (Literal l : c)
      if (value(l) > 0) { sat = true; break; }
    if (sat) continue;
    for (Literal l : c)
      if (value(l) == 0) occ[l.index()] = 1;
  }
  for (Var v = 1; v <= f.prefix.max_var(); ++v) {
    if (!f.prefix.contains(v)) continue;
    const Literal pos = Literal::positive(v);
    if (value(pos) != 0) continue;
    const bool p = occ[pos.index()], n = occ[(~pos).index()];
    if (p == n) continue;
    const Literal pure = p ? pos : ~pos;
    return f.prefix.quantifier(v) == Quantifier::Exists ? pure : ~pure;
  }
  return {};
}

enum class PropagationOutcome { Stable, Falsified, Satisfied };

struct PropagationResult {
  PropagationOutcome outcome = PropagationOutcome::Stable;
  // Falsified: index into matrix ++ learned_clauses.
  // Satisfied: index into learned_cubes, or -1 when every matrix clause is satisfied.
  int constraint = -1;
  std::vector<AssignedLiteral> implied;
};

/// Runs unit and pure literal detection to fixpoint, extending `trail`.
/// Units are processed before pure literals; conflicts before solutions.
inline PropagationResult propagate(const Pcnf& f, const std::vector<Constraint>& learned_clauses,
                                   const std::vector<Constraint>& learned_cubes, Assignment& trail) {
  PropagationResult res;
  auto value = [&](Literal l) { return trail.value(l); };
  const int m = static_cast<int>(f.matrix.size());
  auto clause_at = [&](int i) -> const Constraint& {
    return i < m ? f.matrix[static_cast<std::size_t>(i)] : learned_clauses[static_cast<std::size_t>(i - m)];
  };
  const int nclauses = m + static_cast<int>(learned_clauses.size());
  for (;;) {
    Literal unit;
    int unit_reason = -1;
    bool unit_from_cube = false;
    for (int i = 0; i < nclauses; ++i) {
      const auto chk = check_constraint(f.prefix, clause_at(i), value);
      if (chk.state == ConstraintState::Empty) {
        res.outcome = PropagationOutcome::Falsified;
        res.constraint = i;
        return res;
      }
      if (chk.state == ConstraintState::Unit && !unit.valid()) {
        unit = chk.implied;
        unit_reason = i;
      }
    }
    bool all_sat = true;
    for (const auto& c : f.matrix)
      if (check_constraint(f.prefix, c, value).state != ConstraintState::Inactive) { all_sat = false; break; }
    if (all_sat) {
      res.outcome = PropagationOutcome::Satisfied;
      res.constraint = -1;
      return res;
    }
    for (int i = 0; i < static_cast<int>(learned_cubes.size()); ++i) {
      const auto chk = check_constraint(f.prefix, learned_cubes[static_cast<std::size_t>(i)], value);
      if (chk.state == ConstraintState::Empty) {
        res.outcome = PropagationOutcome::Satisfied;
        res.constraint = i;
        return res;
      }
      if (chk.state == ConstraintState::Unit && !unit.valid()) {
        unit = chk.implied;
        unit_reason = i;
        unit_from_cube = true;
      }
    }
    if (unit.valid()) {
      // cube antecedents are encoded as -(index + 2) to keep them apart from clauses
      const int ante = unit_from_cube ? -(unit_reason + 2) : unit_reason;
      trail.push(unit, ReasonKind::Unit, ante);
      res.implied.push_back({unit, ReasonKind::Unit, ante});
      continue;
    }
    const Literal pure = find_pure(f, value);
    if (pure.valid()) {
      trail.push(pure, ReasonKind::Pure);
      res.implied.push_back({pure, ReasonKind::Pure, -1});
      continue;
    }
    return res;
  }
}

}  // namespace qrg
