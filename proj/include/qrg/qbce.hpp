#pragma once

// Quantified blocked clause elimination on the residual phi[A]. Used as an
// incomplete oracle: eliminating every residual clause proves phi[A]
// satisfiable; it never proves unsatisfiability.

#include <numeric>
#include <set>
#include <vector>

#include "qrg/formula.hpp"

namespace qrg {

struct QbceResult {
  bool empty = false;                 // every residual clause was eliminated
  std::size_t residual_clauses = 0;   // clauses of phi[A] before elimination
  std::vector<Constraint> remaining;  // residual clauses that survived
};

namespace detail {

inline std::vector<Constraint> residual_clauses(const Pcnf& f, const std::vector<Literal>& trail) {
  std::vector<signed char> val(static_cast<std::size_t>(f.prefix.max_var()) + 1, 0);
  for (Literal l : trail)
    if (l.var() < val.size()) val[l.var()] = l.is_positive() ? 1 : -1;
  std::vector<Constraint> out;
  std::set<std::vector<int>> seen;
  for (const auto& c : f.matrix) {
    Constraint r(ConstraintKind::Clause);
    bool sat = false;
    for (Literal l : c) {
      const int v = l.is_positive() ? val[l.var()] : -val[l.var()];
      if (v > 0) { sat = true; break; }
      if (v == 0) r.add(l);
    }
    if (!sat && seen.insert(r.key()).second) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// True iff existential l in c blocks c with respect to `others` (alive ones).
inline bool is_blocking(const Prefix& p, const Constraint& c, Literal l, const std::vector<Constraint>& others,
                        const std::vector<char>& alive, std::size_t self) {
  if (!p.is_existential(l)) return false;
  const int bl = p.block(l.var());
  for (std::size_t j = 0; j < others.size(); ++j) {
    if (j == self || !alive[j] || !others[j].contains(~l)) continue;
    bool taut = false;
    for (Literal k : c) {
      if (k == l || p.block(k.var()) > bl) continue;
      if (others[j].contains(~k)) { taut = true; break; }
    }
    if (!taut) return false;
  }
  return true;
}

/// Eliminates blocked clauses of phi[trail] to fixpoint. `order` optionally
/// fixes the scan order over residual clauses (a permutation of indices).
inline QbceResult qbce_reduce(const Pcnf& f, const std::vector<Literal>& trail,
                              const std::vector<std::size_t>* order = nullptr) {
  QbceResult res;
  auto clauses = detail::residual_clauses(f, trail);
  res.residual_clauses = clauses.size();
  std::vector<std::size_t> ord(clauses.size());
  if (order && order->size() == clauses.size())
    ord = *order;
  else
    std::iota(ord.begin(), ord.end(), 0);
  std::vector<char> alive(clauses.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i : ord) {
      if (!alive[i]) continue;
      for (Literal l : clauses[i]) {
        if (is_blocking(f.prefix, clauses[i], l, clauses, alive, i)) {
          alive[i] = 0;
          changed = true;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (alive[i]) res.remaining.push_back(clauses[i]);
  res.empty = res.remaining.empty();
  return res;
}

}  // namespace qrg
