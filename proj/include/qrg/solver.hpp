#pragma once

// QCDCL search: prefix-ordered decisions, propagation over matrix, learned
// clauses and learned cubes, axiom attempts at propagation fixpoints,
// clause/cube learning by Q-resolution, and proof recording.

#include <algorithm>
#include <chrono>
#include <memory>
#include <unordered_map>
#include <functional>
#include <optional>
#include <vector>

#include "qrg/axioms.hpp"
#include "qrg/formula.hpp"
#include "qrg/proof.hpp"
#include "qrg/qbcp.hpp"
#include "qrg/qbce.hpp"

namespace qrg {

struct SolverOptions {
  AxiomConfig axioms;
  std::uint64_t max_decisions = 0;  // 0: unlimited
  std::uint64_t max_conflicts = 0;  // conflicts plus solutions; 0: unlimited
  bool pure_literals = true;
  double activity_decay = 0.95;
  // Decisions taken in order while each names an unassigned variable of the
  // outermost open block.
  std::vector<Literal> forced_decisions;
  // Assignments handed to abs-cl-init once before the first decision.
  std::vector<std::vector<Literal>> abs_probes;
  // Seconds added to the measured duration of each oracle/SAT call.
  std::function<double(CallKind)> injected_latency;
  std::function<void(const AbsOutcome&)> on_abs;
  // Sees the trail just before each decision is pushed.
  std::function<void(const std::vector<Literal>&, Literal)> on_decision;
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t solutions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t learned_clauses = 0;
  std::uint64_t learned_cubes = 0;
  std::uint64_t non_asserting = 0;
  std::uint64_t qbce_tried = 0, qbce_success = 0;
  std::uint64_t oracle_tried = 0, oracle_success = 0;
  std::uint64_t abs_tried = 0, abs_success = 0;
  std::uint64_t tt_tried = 0, tt_success = 0;
  std::uint64_t oracle_calls = 0, sat_calls = 0;
  std::uint64_t fallback_axioms = 0;
  bool oracle_disabled = false, sat_disabled = false, capped = false;
};

struct SolveResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Proof> proof;  // absent for UNKNOWN
  SolverStats stats;
  std::vector<Constraint> learned_clauses;
  std::vector<Constraint> learned_cubes;
};

class Solver {
public:
  explicit Solver(const Pcnf& f, SolverOptions opts = {})
      : f_(f), p_(f.prefix), opts_(std::move(opts)), sched_(opts_.axioms, f.matrix.size()) {
    opts_.axioms.validate();
    nv_ = std::max<Var>(f.prefix.max_var(), f.num_vars);
    const std::size_t n = static_cast<std::size_t>(nv_) + 1;
    val_.assign(n, 0);
    level_.assign(n, 0);
    reason_.assign(n, kDecision);
    activity_.assign(n, 0.0);
    phase_.assign(n, -1);
    occ_.resize(2 * n);
    act_occ_.assign(2 * n, 0);
    m_ = static_cast<int>(f.matrix.size());
    for (const auto& c : f.matrix) add_entry(c, false);
    sat_count_.assign(f.matrix.size(), 0);
    unsat_count_ = m_;
    for (const auto& c : f.matrix)
      for (Literal l : c) ++act_occ_[l.index()];
    stats_.capped = sched_.capped();
    if (opts_.axioms.enable_oracle()) oracle_ = make_oracle(opts_.axioms);
  }

  SolveResult solve() {
    SolveResult r;
    r.verdict = run();
    r.stats = stats_;
    r.stats.oracle_disabled = sched_.disabled(CallKind::Oracle);
    r.stats.sat_disabled = sched_.disabled(CallKind::Sat);
    r.stats.oracle_calls = sched_.calls(CallKind::Oracle);
    r.stats.sat_calls = sched_.calls(CallKind::Sat);
    if (r.verdict != Verdict::Unknown) r.proof = proof_.trim(final_pid_, nv_);
    for (int i = m_; i < static_cast<int>(db_.size()); ++i)
      (db_[static_cast<std::size_t>(i)].c.is_clause() ? r.learned_clauses : r.learned_cubes)
          .push_back(db_[static_cast<std::size_t>(i)].c);
    return r;
  }

private:
  static constexpr int kDecision = -1;
  static constexpr int kPure = -2;

  struct Entry {
    Constraint c;
    int pid = 0;  // proof step id, 0 until recorded
  };

  enum class Event { None, Conflict, Solution };

  struct Learned {
    Constraint c;
    int pid = 0;
    int backtrack = -1;  // -1: empty constraint
    Literal unit;        // literal of c that becomes unassigned-unit
  };

  // ---- assignment -------------------------------------------------------

  int value(Literal l) const {
    const int v = val_[l.var()];
    return l.is_positive() ? v : -v;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Literal l, int reason) {
    val_[l.var()] = l.is_positive() ? 1 : -1;
    level_[l.var()] = decision_level();
    reason_[l.var()] = reason;
    trail_.push_back(l);
    ++stats_.propagations;
    for (int e : occ_[l.index()]) {
      if (e >= m_) break;
      if (sat_count_[static_cast<std::size_t>(e)]++ == 0) {
        --unsat_count_;
        for (Literal k : db_[static_cast<std::size_t>(e)].c) --act_occ_[k.index()];
      }
    }
  }

  void backtrack(int lvl) {
    if (decision_level() <= lvl) return;
    const std::size_t lim = trail_lim_[static_cast<std::size_t>(lvl)];
    while (trail_.size() > lim) {
      const Literal l = trail_.back();
      trail_.pop_back();
      for (int e : occ_[l.index()]) {
        if (e >= m_) break;
        if (--sat_count_[static_cast<std::size_t>(e)] == 0) {
          ++unsat_count_;
          for (Literal k : db_[static_cast<std::size_t>(e)].c) ++act_occ_[k.index()];
        }
      }
      phase_[l.var()] = val_[l.var()];
      val_[l.var()] = 0;
      reason_[l.var()] = kDecision;
    }
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = std::min(qhead_, trail_.size());
  }

  int add_entry(Constraint c, bool learned) {
    const int id = static_cast<int>(db_.size());
    for (Literal l : c) occ_[l.index()].push_back(id);
    db_.push_back({std::move(c), 0});
    if (learned) {
      if (db_.back().c.is_clause())
        ++stats_.learned_clauses;
      else
        ++stats_.learned_cubes;
    }
    return id;
  }

  // ---- propagation ------------------------------------------------------

  Event propagate(int& which) {
    auto v = [this](Literal l) { return value(l); };
    if (initial_scan_) {
      // constraints that are unit or empty before any assignment
      initial_scan_ = false;
      for (int e = 0; e < static_cast<int>(db_.size()); ++e) {
        const auto& c = db_[static_cast<std::size_t>(e)].c;
        const auto chk = check_constraint(p_, c, v);
        if (chk.state == ConstraintState::Empty) {
          which = e;
          return c.is_clause() ? Event::Conflict : Event::Solution;
        }
        if (chk.state == ConstraintState::Unit) enqueue(chk.implied, e);
      }
    }
    for (;;) {
      while (qhead_ < trail_.size()) {
        const Literal l = trail_[qhead_++];
        for (int e : occ_[(~l).index()]) {
          const auto& c = db_[static_cast<std::size_t>(e)].c;
          if (!c.is_clause()) continue;
          const auto chk = check_constraint(p_, c, v);
          if (chk.state == ConstraintState::Empty) {
            which = e;
            return Event::Conflict;
          }
          if (chk.state == ConstraintState::Unit) enqueue(chk.implied, e);
        }
        for (int e : occ_[l.index()]) {
          const auto& c = db_[static_cast<std::size_t>(e)].c;
          if (!c.is_cube()) continue;
          const auto chk = check_constraint(p_, c, v);
          if (chk.state == ConstraintState::Empty) {
            which = e;
            return Event::Solution;
          }
          if (chk.state == ConstraintState::Unit) enqueue(chk.implied, e);
        }
      }
      if (unsat_count_ == 0) {
        which = -1;
        return Event::Solution;
      }
      if (!opts_.pure_literals) return Event::None;
      const Literal pure = find_pure_literal();
      if (!pure.valid()) return Event::None;
      enqueue(pure, kPure);
    }
  }

  Literal find_pure_literal() const {
    for (Var v = 1; v <= nv_; ++v) {
      if (val_[v] != 0 || !p_.contains(v)) continue;
      const Literal pos = Literal::positive(v);
      const bool hp = act_occ_[pos.index()] > 0, hn = act_occ_[(~pos).index()] > 0;
      if (hp == hn) continue;
      const Literal pure = hp ? pos : ~pos;
      return p_.quantifier(v) == Quantifier::Exists ? pure : ~pure;
    }
    return {};
  }

  // ---- proof bookkeeping ------------------------------------------------

  int pid_of(int entry) {
    auto& e = db_[static_cast<std::size_t>(entry)];
    if (e.pid == 0) {
      ProofStep s;
      s.rule = Rule::ClInit;
      s.kind = ConstraintKind::Clause;
      s.literals = e.c.literals();
      e.pid = proof_.add(std::move(s));
    }
    return e.pid;
  }

  int add_step(Rule r, const Constraint& c, std::vector<int> ante, std::optional<Var> pivot = std::nullopt,
               std::vector<int> deps = {}) {
    ProofStep s;
    s.rule = r;
    s.kind = c.kind();
    s.literals = c.literals();
    s.antecedents = std::move(ante);
    s.pivot = pivot;
    return proof_.add(std::move(s), std::move(deps));
  }

  // Axiom over `a`; decisions among `a` are tagged, reasons of the others
  // become hidden dependencies.
  int add_axiom(Rule r, const Constraint& c, const std::vector<Literal>& a) {
    ProofStep s;
    s.rule = r;
    s.kind = c.kind();
    s.literals = c.literals();
    s.witness = a;
    std::vector<int> deps;
    if (r == Rule::GenClInit || r == Rule::GenCuInit) {
      for (Literal l : a) {
        const int rs = val_[l.var()] != 0 ? reason_[l.var()] : kDecision;
        if (rs == kDecision)
          s.decisions.push_back(l);
        else if (rs >= 0)
          deps.push_back(pid_of(rs));
      }
    }
    return proof_.add(std::move(s), std::move(deps));
  }

  // reduce and record a red step when something was removed
  void reduce_step(Constraint& c, int& pid) {
    Constraint r = reduce(p_, c);
    if (r.size() != c.size()) {
      pid = add_step(Rule::Red, r, {pid});
      c = std::move(r);
    }
  }

  static std::optional<Constraint> resolve(const Constraint& a, const Constraint& b, Var pivot) {
    Constraint r(a.kind());
    for (const auto* side : {&a, &b})
      for (Literal l : *side) {
        if (l.var() == pivot) continue;
        if (r.contains(~l)) return std::nullopt;
        r.add(l);
      }
    return r;
  }

  // ---- analysis ---------------------------------------------------------

  // Trail literals of levels < lvl plus the decision opening level lvl.
  std::vector<Literal> truncated_trail(int lvl) const {
    const std::size_t end = trail_lim_[static_cast<std::size_t>(lvl - 1)] + 1;
    return std::vector<Literal>(trail_.begin(), trail_.begin() + static_cast<std::ptrdiff_t>(end));
  }

  void bump(const Constraint& c) {
    for (Literal l : c) {
      activity_[l.var()] += var_inc_;
      if (activity_[l.var()] > 1e100) {
        for (auto& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
      }
    }
  }

  // Clause learning (cube = false) or cube learning (cube = true), starting
  // from a constraint whose reduced form is empty under the trail.
  Learned analyze(Constraint c, int pid) {
    const bool cube = c.is_cube();
    // pivot quantifier of this analysis: existential for clauses, universal for cubes
    const Quantifier own = cube ? Quantifier::Forall : Quantifier::Exists;
    reduce_step(c, pid);
    for (;;) {
      if (c.empty()) return {c, pid, -1, {}};
      Literal piv;  // literal of c (false for clauses, true for cubes) with latest trail position
      std::size_t best = 0;
      for (Literal l : c) {
        if (p_.quantifier(l) != own) continue;
        const std::size_t pos = trail_pos(l.var());
        if (!piv.valid() || pos > best) {
          piv = l;
          best = pos;
        }
      }
      const int lvl = level_[piv.var()];
      if (lvl > 0) {
        bool asserting = true;
        int bt = 0;
        const int pb = p_.block(piv.var());
        for (Literal l : c) {
          if (l == piv) continue;
          const bool same = p_.quantifier(l) == own;
          if (!same && p_.block(l.var()) > pb) continue;
          if (val_[l.var()] == 0 || level_[l.var()] >= lvl) {
            asserting = false;
            break;
          }
          bt = std::max(bt, level_[l.var()]);
        }
        if (asserting) {
          bump(c);
          return {c, pid, bt, piv};
        }
      }
      if (lvl == 0) {
        if (level_zero_step(c, pid)) continue;
        ++stats_.fallback_axioms;
        Constraint g(c.kind());
        return {g, add_axiom(cube ? Rule::GenCuInit : Rule::GenClInit, g, {}), -1, {}};
      }
      if (resolve_on(c, pid, piv)) continue;
      // no structural step available: generalized axiom on the truncated trail
      ++stats_.fallback_axioms;
      const auto a = truncated_trail(lvl);
      Constraint g(c.kind());
      for (Literal l : a) g.add(cube ? l : ~l);
      pid = add_axiom(cube ? Rule::GenCuInit : Rule::GenClInit, g, a);
      c = std::move(g);
      reduce_step(c, pid);
    }
  }

  // Resolves c with the reason of pivot literal l when kinds match and the
  // resolvent is not tautological.
  bool resolve_on(Constraint& c, int& pid, Literal l) {
    const int rs = reason_[l.var()];
    if (rs < 0 || db_[static_cast<std::size_t>(rs)].c.kind() != c.kind()) return false;
    auto r = resolve(c, db_[static_cast<std::size_t>(rs)].c, l.var());
    if (!r) return false;
    pid = add_step(Rule::Res, *r, {pid, pid_of(rs)}, l.var());
    c = std::move(*r);
    reduce_step(c, pid);
    return true;
  }

  std::size_t trail_pos(Var v) const {
    // levels are contiguous ranges; search backwards from the end of v's level
    const int lvl = level_[v];
    const std::size_t end = lvl < decision_level() ? trail_lim_[static_cast<std::size_t>(lvl)] : trail_.size();
    for (std::size_t i = end; i-- > 0;)
      if (trail_[i].var() == v) return i;
    return 0;
  }

  // One elimination step for a constraint whose pivots all sit at level 0:
  // resolution with a shared unit derived from the reason chain when one
  // exists, else plain resolution with a reason (latest first). Pivot order
  // is free here; every step trades a pivot for earlier literals.
  bool level_zero_step(Constraint& c, int& pid) {
    const bool cube = c.is_cube();
    const Quantifier own = cube ? Quantifier::Forall : Quantifier::Exists;
    std::vector<Literal> piv;
    for (Literal l : c)
      if (p_.quantifier(l) == own) piv.push_back(l);
    for (Literal l : piv) {
      const int u = unit_of(cube ? l : ~l, cube);
      if (u == 0) continue;
      Constraint r(c.kind());
      for (Literal k : c)
        if (k != l) r.add(k);
      pid = add_step(Rule::Res, r, {pid, u}, l.var());
      c = std::move(r);
      reduce_step(c, pid);
      return true;
    }
    std::sort(piv.begin(), piv.end(), [this](Literal a, Literal b) { return trail_pos(a.var()) > trail_pos(b.var()); });
    for (Literal l : piv)
      if (resolve_on(c, pid, l)) return true;
    return false;
  }

  // Proof id of the unit clause (t) for a level-0 existential trail literal t,
  // or of the unit cube (~t) for a level-0 universal trail literal t; 0 if
  // the reason chain does not provide one.
  int unit_of(Literal t, bool cube) {
    auto it = unit_memo_.find(t.dimacs());
    if (it != unit_memo_.end()) return it->second;
    unit_memo_[t.dimacs()] = 0;  // guards cycles
    const int rs = reason_[t.var()];
    if (rs < 0 || db_[static_cast<std::size_t>(rs)].c.is_cube() != cube) return 0;
    const Quantifier own = cube ? Quantifier::Forall : Quantifier::Exists;
    const Literal keep = cube ? ~t : t;
    Constraint c = db_[static_cast<std::size_t>(rs)].c;
    int pid = pid_of(rs);
    const int tb = p_.block(t.var());
    for (Literal l : db_[static_cast<std::size_t>(rs)].c) {
      if (l == keep) continue;
      if (p_.quantifier(l) == own) {
        const int u = unit_of(cube ? l : ~l, cube);
        if (u == 0) return 0;
        Constraint r(c.kind());
        for (Literal k : c)
          if (k != l) r.add(k);
        pid = add_step(Rule::Res, r, {pid, u}, l.var());
        c = std::move(r);
      } else if (p_.block(l.var()) < tb) {
        return 0;  // would survive reduction
      }
    }
    reduce_step(c, pid);
    if (c.size() != 1) return 0;
    unit_memo_[t.dimacs()] = pid;
    return pid;
  }

  // Stores a learned constraint after backtracking and asserts its unit.
  void learn(const Learned& l) {
    backtrack(l.backtrack);
    const int e = add_entry(l.c, true);
    db_[static_cast<std::size_t>(e)].pid = l.pid;
    const auto chk = check_constraint(p_, l.c, [this](Literal x) { return value(x); });
    if (chk.state == ConstraintState::Unit)
      enqueue(chk.implied, e);
    else
      ++stats_.non_asserting;
  }

  // ---- axioms at propagation fixpoints ----------------------------------

  double timed(CallKind k, const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opts_.injected_latency) secs += opts_.injected_latency(k);
    sched_.record_call(k, secs);
    return secs;
  }

  // Returns a constraint to analyze (with its proof id) if some axiom applied.
  std::optional<std::pair<Constraint, int>> try_axioms() {
    const auto& cfg = opts_.axioms;
    if (cfg.enable_qbce && !sched_.capped()) {
      ++stats_.qbce_tried;
      if (qbce_reduce(f_, trail_).empty) {
        ++stats_.qbce_success;
        return trail_cube();
      }
    }
    const std::uint64_t d = stats_.decisions;
    if (oracle_ && sched_.due(CallKind::Oracle, d)) {
      sched_.mark(CallKind::Oracle, d);
      ++stats_.oracle_tried;
      OracleVerdict ov;
      timed(CallKind::Oracle, [&] { ov = oracle_->decide(f_, trail_); });
      if (ov.verdict == Verdict::Sat) {
        ++stats_.oracle_success;
        return trail_cube();
      }
      if (ov.verdict == Verdict::Unsat) {
        ++stats_.oracle_success;
        Constraint c(ConstraintKind::Clause);
        for (Literal l : trail_) c.add(~l);
        return std::make_pair(c, add_axiom(Rule::GenClInit, c, trail_));
      }
    }
    if ((cfg.enable_trivial_truth || cfg.enable_abs) && sched_.due(CallKind::Sat, d)) {
      sched_.mark(CallKind::Sat, d);
      if (cfg.enable_trivial_truth && !sched_.disabled(CallKind::Sat)) {
        ++stats_.tt_tried;
        bool ok = false;
        timed(CallKind::Sat, [&] { ok = tt_core().check(trail_, cfg.sat_conflict_budget); });
        if (ok) {
          ++stats_.tt_success;
          return trail_cube();
        }
      }
      if (cfg.enable_abs && !sched_.disabled(CallKind::Sat)) {
        if (auto r = abs_attempt(trail_)) return r;
      }
    }
    return std::nullopt;
  }

  std::pair<Constraint, int> trail_cube() {
    Constraint c = Constraint::cube(trail_);
    return {c, add_axiom(Rule::GenCuInit, c, trail_)};
  }

  std::optional<std::pair<Constraint, int>> abs_attempt(const std::vector<Literal>& a) {
    ++stats_.abs_tried;
    std::optional<AbsOutcome> out;
    timed(CallKind::Sat, [&] {
      out = abs_core().refute(a, opts_.axioms.sat_conflict_budget, opts_.axioms.minimize_resolve_budget);
    });
    if (!out) return std::nullopt;
    ++stats_.abs_success;
    if (opts_.on_abs) opts_.on_abs(*out);
    return std::make_pair(out->clause, add_axiom(Rule::AbsClInit, out->clause, out->minimized));
  }

  AbsCore& abs_core() {
    if (!abs_) abs_.emplace(f_);
    return *abs_;
  }
  TrivialTruthCore& tt_core() {
    if (!tt_) tt_.emplace(f_);
    return *tt_;
  }

  // ---- decisions --------------------------------------------------------

  Literal pick_decision() {
    int block = -1;
    for (const auto& b : p_.blocks()) {
      for (Var v : b.vars)
        if (val_[v] == 0) { block = static_cast<int>(&b - p_.blocks().data()); break; }
      if (block >= 0) break;
    }
    if (block < 0) return {};
    while (forced_next_ < opts_.forced_decisions.size()) {
      const Literal f = opts_.forced_decisions[forced_next_++];
      if (p_.contains(f.var()) && val_[f.var()] == 0 && p_.block(f.var()) == block) return f;
    }
    Var best = 0;
    for (Var v : p_.blocks()[static_cast<std::size_t>(block)].vars)
      if (val_[v] == 0 && (best == 0 || activity_[v] > activity_[best] || (activity_[v] == activity_[best] && v < best)))
        best = v;
    return phase_[best] > 0 ? Literal::positive(best) : Literal::negative(best);
  }

  // ---- main loop --------------------------------------------------------

  // Handles an empty-reduced constraint; returns true when search ends.
  bool handle(Constraint c, int pid) {
    Learned l = analyze(std::move(c), pid);
    if (l.backtrack < 0) {
      final_pid_ = l.pid;
      return true;
    }
    learn(l);
    return false;
  }

  // Adds an externally derived clause (abs probe) at the current state.
  bool integrate(Constraint c, int pid) {
    reduce_step(c, pid);
    const auto chk = check_constraint(p_, c, [this](Literal x) { return value(x); });
    if (chk.state == ConstraintState::Empty) return handle(std::move(c), pid);
    const int e = add_entry(c, true);
    db_[static_cast<std::size_t>(e)].pid = pid;
    if (chk.state == ConstraintState::Unit) enqueue(chk.implied, e);
    return false;
  }

  Verdict verdict_of_final() const {
    return proof_.step(final_pid_).kind == ConstraintKind::Clause ? Verdict::Unsat : Verdict::Sat;
  }

  Verdict run() {
    for (int i = 0; i < m_; ++i)
      if (db_[static_cast<std::size_t>(i)].c.empty()) {
        final_pid_ = pid_of(i);
        return Verdict::Unsat;
      }
    bool probed = opts_.abs_probes.empty() || !opts_.axioms.enable_abs;
    for (;;) {
      int which = -1;
      const Event ev = propagate(which);
      if (ev != Event::None) {
        bool done = false;
        if (ev == Event::Conflict) {
          ++stats_.conflicts;
          done = handle(db_[static_cast<std::size_t>(which)].c, pid_of(which));
        } else {
          ++stats_.solutions;
          if (which >= 0) {
            done = handle(db_[static_cast<std::size_t>(which)].c, db_[static_cast<std::size_t>(which)].pid);
          } else {
            Constraint c = Constraint::cube(trail_);
            done = handle(c, add_axiom(Rule::CuInit, c, trail_));
          }
        }
        if (done) return verdict_of_final();
        if (opts_.max_conflicts && stats_.conflicts + stats_.solutions >= opts_.max_conflicts) return Verdict::Unknown;
        continue;
      }
      if (!probed) {
        probed = true;
        bool done = false;
        for (const auto& a : opts_.abs_probes) {
          auto r = abs_attempt(a);
          if (r && integrate(std::move(r->first), r->second)) { done = true; break; }
        }
        if (done) return verdict_of_final();
        continue;
      }
      if (auto ax = try_axioms()) {
        if (handle(std::move(ax->first), ax->second)) return verdict_of_final();
        continue;
      }
      if (opts_.max_decisions && stats_.decisions >= opts_.max_decisions) return Verdict::Unknown;
      const Literal d = pick_decision();
      if (!d.valid()) {
        // every variable assigned without conflict: the matrix is satisfied
        Constraint c = Constraint::cube(trail_);
        if (handle(c, add_axiom(Rule::CuInit, c, trail_))) return verdict_of_final();
        continue;
      }
      ++stats_.decisions;
      if (opts_.on_decision) opts_.on_decision(trail_, d);
      trail_lim_.push_back(trail_.size());
      enqueue(d, kDecision);
      var_inc_ /= opts_.activity_decay;
    }
  }

  const Pcnf& f_;
  const Prefix& p_;
  SolverOptions opts_;
  AxiomScheduler sched_;
  Var nv_ = 0;
  int m_ = 0;
  std::vector<Entry> db_;
  std::vector<std::vector<int>> occ_;
  std::vector<int> sat_count_;
  int unsat_count_ = 0;
  std::vector<int> act_occ_;
  std::vector<signed char> val_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<signed char> phase_;
  double var_inc_ = 1.0;
  std::vector<Literal> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  bool initial_scan_ = true;
  std::size_t forced_next_ = 0;
  std::unordered_map<int, int> unit_memo_;
  ProofBuilder proof_;
  int final_pid_ = 0;
  SolverStats stats_;
  std::unique_ptr<QbfOracle> oracle_;
  std::optional<AbsCore> abs_;
  std::optional<TrivialTruthCore> tt_;
};

inline SolveResult solve(const Pcnf& f, SolverOptions opts = {}) {
  Solver s(f, std::move(opts));
  return s.solve();
}

}  // namespace qrg
