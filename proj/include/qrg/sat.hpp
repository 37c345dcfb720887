#pragma once

// Small incremental CDCL SAT solver: two watched literals, first-UIP
// learning, activity-based decisions with phase saving, Luby restarts and
// solving under assumptions with failed-assumption extraction.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "qrg/formula.hpp"

namespace qrg {

struct SatResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<Literal> model;               // one literal per variable when SAT
  std::vector<Literal> failed_assumptions;  // subset of the assumptions when UNSAT
};

/// Failed assumptions of an UNSAT result; a contract violation otherwise.
inline const std::vector<Literal>& failed_assumptions(const SatResult& r) {
  if (r.verdict != Verdict::Unsat) throw std::logic_error("failed_assumptions on a non-UNSAT result");
  return r.failed_assumptions;
}

struct SatOptions {
  bool luby_restarts = true;
  std::uint64_t restart_unit = 64;
  double var_decay = 0.95;
};

class SatSolver {
public:
  explicit SatSolver(SatOptions opts = {}) : opts_(opts) {}

  Var num_vars() const { return static_cast<Var>(values_.size()) - 1; }
  std::size_t num_clauses() const { return dump_.size(); }  // as added, tautologies excepted
  std::size_t num_learned() const { return clauses_.size() - original_count_; }

  void reserve_vars(Var n) {
    if (n + 1 <= values_.size()) return;
    values_.resize(n + 1, 0);
    level_.resize(n + 1, 0);
    reason_.resize(n + 1, -1);
    activity_.resize(n + 1, 0.0);
    phase_.resize(n + 1, -1);
    seen_.resize(n + 1, 0);
    watches_.resize(2 * (n + 1));
  }

  /// Adds a permanent clause. Tautologies are skipped, duplicates merged.
  void add_clause(std::span<const Literal> lits) {
    backtrack(0);
    std::vector<Literal> c;
    for (Literal l : lits) {
      reserve_vars(l.var());
      if (std::find(c.begin(), c.end(), ~l) != c.end()) return;
      if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
    }
    dump_.push_back(c);
    if (inconsistent_) return;
    // drop literals false at level 0, skip satisfied clauses
    std::vector<Literal> kept;
    for (Literal l : c) {
      const int v = value(l);
      if (v > 0) return;
      if (v == 0) kept.push_back(l);
    }
    if (kept.empty()) {
      inconsistent_ = true;
      return;
    }
    if (kept.size() == 1) {
      enqueue(kept[0], -1);
      if (propagate() >= 0) inconsistent_ = true;
      return;
    }
    attach(std::move(kept), false);
  }

  void add_clause(const std::vector<Literal>& lits) { add_clause(std::span<const Literal>(lits)); }

  SatResult solve(std::span<const Literal> assumptions = {},
                  std::optional<std::uint64_t> conflict_budget = std::nullopt) {
    ++calls_;
    SatResult res;
    for (Literal a : assumptions) reserve_vars(a.var());
    backtrack(0);
    if (inconsistent_) {
      res.verdict = Verdict::Unsat;
      return res;
    }
    std::vector<Literal> assume(assumptions.begin(), assumptions.end());
    std::uint64_t conflicts = 0;
    std::uint64_t restart_index = 0;
    std::uint64_t next_restart = opts_.restart_unit * luby(restart_index);
    std::uint64_t since_restart = 0;
    for (;;) {
      const int confl = propagate();
      if (confl >= 0) {
        ++conflicts;
        ++since_restart;
        if (decision_level() == 0) {
          inconsistent_ = true;
          res.verdict = Verdict::Unsat;
          return res;
        }
        if (conflict_budget && conflicts > *conflict_budget) {
          backtrack(0);
          res.verdict = Verdict::Unknown;
          return res;
        }
        std::vector<Literal> learnt;
        int bt = 0;
        analyze(confl, learnt, bt);
        backtrack(bt);
        if (learnt.size() == 1) {
          backtrack(0);
          enqueue(learnt[0], -1);
        } else {
          const int cref = attach(learnt, true);
          enqueue(learnt[0], cref);
        }
        decay_activity();
        continue;
      }
      if (opts_.luby_restarts && since_restart >= next_restart) {
        since_restart = 0;
        next_restart = opts_.restart_unit * luby(++restart_index);
        backtrack(0);
        continue;
      }
      // assumptions occupy the first decision levels
      Literal next;
      while (decision_level() < static_cast<int>(assume.size())) {
        const Literal a = assume[static_cast<std::size_t>(decision_level())];
        const int v = value(a);
        if (v > 0) {
          new_level();
        } else if (v < 0) {
          res.verdict = Verdict::Unsat;
          res.failed_assumptions = analyze_final(~a, assume);
          backtrack(0);
          return res;
        } else {
          next = a;
          break;
        }
      }
      if (!next.valid()) {
        next = pick_branch();
        if (!next.valid()) {
          res.verdict = Verdict::Sat;
          for (Var v = 1; v <= num_vars(); ++v)
            res.model.push_back(values_[v] >= 0 ? Literal::positive(v) : Literal::negative(v));
          backtrack(0);
          return res;
        }
      }
      new_level();
      enqueue(next, -1);
    }
  }

  SatResult solve(const std::vector<Literal>& assumptions,
                  std::optional<std::uint64_t> conflict_budget = std::nullopt) {
    return solve(std::span<const Literal>(assumptions), conflict_budget);
  }

  std::uint64_t calls() const { return calls_; }

  /// DIMACS dump of the permanent clauses (for external cross-checking).
  void write_dimacs(std::ostream& out) const {
    out << "p cnf " << num_vars() << ' ' << dump_.size() << '\n';
    for (const auto& c : dump_) {
      for (Literal l : c) out << l.dimacs() << ' ';
      out << "0\n";
    }
  }

private:
  struct Watcher {
    int cref;
    Literal blocker;
  };

  int value(Literal l) const {
    const int v = values_[l.var()];
    return l.is_positive() ? v : -v;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void new_level() { trail_lim_.push_back(trail_.size()); }

  void enqueue(Literal l, int reason) {
    values_[l.var()] = l.is_positive() ? 1 : -1;
    level_[l.var()] = decision_level();
    reason_[l.var()] = reason;
    trail_.push_back(l);
  }

  int attach(std::vector<Literal> c, bool learnt) {
    const int cref = static_cast<int>(clauses_.size());
    watches_[c[0].index()].push_back({cref, c[1]});
    watches_[c[1].index()].push_back({cref, c[0]});
    clauses_.push_back(std::move(c));
    if (!learnt) ++original_count_;
    return cref;
  }

  void backtrack(int lvl) {
    if (decision_level() <= lvl) return;
    const std::size_t lim = trail_lim_[static_cast<std::size_t>(lvl)];
    for (std::size_t i = trail_.size(); i-- > lim;) {
      const Var v = trail_[i].var();
      phase_[v] = values_[v];
      values_[v] = 0;
      reason_[v] = -1;
    }
    trail_.resize(lim);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = std::min(qhead_, trail_.size());
  }

  // returns conflicting clause index or -1
  int propagate() {
    while (qhead_ < trail_.size()) {
      const Literal p = trail_[qhead_++];
      const Literal false_lit = ~p;
      auto& ws = watches_[false_lit.index()];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const Watcher w = ws[i++];
        if (value(w.blocker) > 0) {
          ws[j++] = w;
          continue;
        }
        auto& c = clauses_[static_cast<std::size_t>(w.cref)];
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        if (value(c[0]) > 0) {
          ws[j++] = {w.cref, c[0]};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[c[1].index()].push_back({w.cref, c[0]});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, c[0]};
        if (value(c[0]) < 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          return w.cref;
        }
        enqueue(c[0], w.cref);
      }
      ws.resize(j);
    }
    return -1;
  }

  void bump(Var v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
  }
  void decay_activity() { var_inc_ /= opts_.var_decay; }

  void analyze(int confl, std::vector<Literal>& out, int& bt_level) {
    out.clear();
    out.push_back(Literal());
    int pending = 0;
    Literal p;
    std::size_t idx = trail_.size();
    std::vector<Var> touched;
    for (;;) {
      const auto& c = clauses_[static_cast<std::size_t>(confl)];
      for (std::size_t k = p.valid() ? 1 : 0; k < c.size(); ++k) {
        const Literal q = c[k];
        const Var v = q.var();
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        touched.push_back(v);
        bump(v);
        if (level_[v] >= decision_level())
          ++pending;
        else
          out.push_back(q);
      }
      while (!seen_[trail_[--idx].var()]) {
      }
      p = trail_[idx];
      confl = reason_[p.var()];
      seen_[p.var()] = 0;
      if (--pending == 0) break;
      // reason clauses keep the implied literal at position 0
      auto& rc = clauses_[static_cast<std::size_t>(confl)];
      if (rc[0] != p) {
        auto it = std::find(rc.begin(), rc.end(), p);
        std::swap(*rc.begin(), *it);
      }
    }
    out[0] = ~p;
    for (Var v : touched) seen_[v] = 0;
    bt_level = 0;
    std::size_t max_i = 1;
    for (std::size_t k = 1; k < out.size(); ++k) {
      if (level_[out[k].var()] > bt_level) {
        bt_level = level_[out[k].var()];
        max_i = k;
      }
    }
    if (out.size() > 1) std::swap(out[1], out[max_i]);
  }

  // Assumptions responsible for `p` being forced false... expressed as the
  // subset of the original assumption literals.
  std::vector<Literal> analyze_final(Literal p, const std::vector<Literal>& assume) {
    std::vector<Literal> failed;
    auto is_assumption = [&](Literal l) {
      return std::find(assume.begin(), assume.end(), l) != assume.end();
    };
    failed.push_back(~p);
    if (decision_level() == 0 || level_[p.var()] == 0) return failed;
    std::vector<Var> touched;
    seen_[p.var()] = 1;
    touched.push_back(p.var());
    for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
      const Var v = trail_[i].var();
      if (!seen_[v]) continue;
      const int r = reason_[v];
      if (r < 0) {
        if (level_[v] > 0 && is_assumption(trail_[i])) failed.push_back(trail_[i]);
      } else {
        for (Literal q : clauses_[static_cast<std::size_t>(r)])
          if (q.var() != v && level_[q.var()] > 0 && !seen_[q.var()]) {
            seen_[q.var()] = 1;
            touched.push_back(q.var());
          }
      }
    }
    for (Var v : touched) seen_[v] = 0;
    std::sort(failed.begin(), failed.end());
    failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
    return failed;
  }

  Literal pick_branch() {
    Var best = 0;
    double best_act = -1.0;
    for (Var v = 1; v <= num_vars(); ++v) {
      if (values_[v] != 0) continue;
      if (activity_[v] > best_act) {
        best_act = activity_[v];
        best = v;
      }
    }
    if (best == 0) return Literal();
    return phase_[best] > 0 ? Literal::positive(best) : Literal::negative(best);
  }

  static std::uint64_t luby(std::uint64_t i) {
    std::uint64_t size = 1, seq = 0;
    while (size < i + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != i) {
      size = (size - 1) >> 1;
      --seq;
      i = i % size;
    }
    return std::uint64_t{1} << seq;
  }

  SatOptions opts_;
  std::vector<std::vector<Literal>> clauses_;
  std::vector<std::vector<Literal>> dump_;
  std::size_t original_count_ = 0;
  std::vector<std::vector<Watcher>> watches_{2};
  std::vector<signed char> values_{0};
  std::vector<int> level_{0};
  std::vector<int> reason_{-1};
  std::vector<double> activity_{0.0};
  std::vector<signed char> phase_{-1};
  std::vector<char> seen_{0};
  std::vector<Literal> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool inconsistent_ = false;
  std::uint64_t calls_ = 0;
};

/// Loads a clause set once; the instance is then queried incrementally.
inline SatSolver load_matrix(const std::vector<Constraint>& clauses, Var num_vars = 0) {
  SatSolver s;
  s.reserve_vars(num_vars);
  for (const auto& c : clauses) s.add_clause(c.literals());
  return s;
}

}  // namespace qrg
