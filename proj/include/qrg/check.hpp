#pragma once

// Independent proof checker for QRES, QRES-abs and QU-resolution traces, and
// the translation of QU-resolution steps into abs-cl-init steps.
//
// Axiom side conditions that are semantic (phi[A] unsat/sat, ea(phi)[A]
// unsat) are re-established here instead of being read from subproofs.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qrg/brute.hpp"
#include "qrg/formula.hpp"
#include "qrg/proof.hpp"
#include "qrg/qbce.hpp"
#include "qrg/sat.hpp"

namespace qrg {

enum class CheckMode { QRes, QResAbs, QuRes };

inline const char* to_string(CheckMode m) {
  switch (m) {
    case CheckMode::QRes: return "qres";
    case CheckMode::QResAbs: return "qres-abs";
    default: return "qu-res";
  }
}

inline std::optional<CheckMode> parse_check_mode(const std::string& s) {
  if (s == "qres") return CheckMode::QRes;
  if (s == "qres-abs") return CheckMode::QResAbs;
  if (s == "qu-res") return CheckMode::QuRes;
  return std::nullopt;
}

struct CheckOptions {
  std::uint64_t brute_budget = 2'000'000;
};

struct CheckResult {
  bool accepted = false;
  int step = 0;  // first violating step id (0: whole proof)
  std::string reason;
  ConstraintKind final_kind = ConstraintKind::Clause;
  explicit operator bool() const { return accepted; }
};

namespace detail {

class Checker {
public:
  Checker(const Pcnf& f, CheckMode mode, CheckOptions opts) : f_(f), mode_(mode), opts_(opts) {
    nv_ = f.prefix.max_var();
    for (const auto& c : f.matrix) {
      matrix_set_.insert(key(c.literals()));
      for (Literal l : c) nv_ = std::max(nv_, l.var());
    }
    occ_clause_.resize(2 * (static_cast<std::size_t>(nv_) + 1));
    occ_cube_.resize(2 * (static_cast<std::size_t>(nv_) + 1));
    for (std::size_t i = 0; i < f.matrix.size(); ++i)
      for (Literal l : f.matrix[i]) occ_clause_[l.index()].push_back(static_cast<int>(i));
  }

  CheckResult run(const Proof& p) {
    if (p.steps.empty()) return fail(0, "empty proof");
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      const auto& s = p.steps[i];
      if (s.id != static_cast<int>(i) + 1) return fail(s.id, "step ids must be consecutive from 1");
      std::string why = check_step(p, s);
      if (!why.empty()) return fail(s.id, why);
      add_derived(s);
    }
    const auto& last = p.steps.back();
    if (!last.literals.empty()) return fail(last.id, "final step is not the empty constraint");
    CheckResult r;
    r.accepted = true;
    r.final_kind = last.kind;
    return r;
  }

private:
  static std::vector<int> key(const std::vector<Literal>& lits) {
    std::vector<int> k;
    for (Literal l : lits) k.push_back(l.dimacs());
    std::sort(k.begin(), k.end());
    return k;
  }

  static CheckResult fail(int id, std::string why) {
    CheckResult r;
    r.step = id;
    r.reason = std::move(why);
    return r;
  }

  bool known(Literal l) const { return l.valid() && f_.prefix.contains(l.var()); }
  bool exists(Literal l) const { return f_.prefix.is_existential(l); }
  int block(Literal l) const { return f_.prefix.block(l.var()); }

  static bool set_equal(const std::vector<Literal>& a, const std::vector<Literal>& b) { return key(a) == key(b); }

  // literals over known variables, no duplicates, no complementary pair
  std::string well_formed(const std::vector<Literal>& lits, const char* what) const {
    std::set<int> seen;
    for (Literal l : lits) {
      if (!known(l)) return std::string(what) + " literal " + to_string(l) + " not in prefix";
      if (!seen.insert(l.dimacs()).second) return std::string(what) + " has duplicate literal";
      if (seen.count(-l.dimacs())) return std::string(what) + " has complementary literals";
    }
    return {};
  }

  bool allowed(Rule r) const {
    switch (r) {
      case Rule::Res: case Rule::Red: case Rule::ClInit: case Rule::CuInit: return true;
      case Rule::GenClInit: case Rule::GenCuInit: case Rule::AbsClInit: return mode_ == CheckMode::QResAbs;
      case Rule::QuRes: return mode_ == CheckMode::QuRes;
    }
    return false;
  }

  std::string check_step(const Proof& p, const ProofStep& s) {
    if (!allowed(s.rule)) return std::string("rule ") + to_string(s.rule) + " not allowed in mode " + to_string(mode_);
    if (auto w = well_formed(s.literals, "derived constraint"); !w.empty()) return w;
    for (int a : s.antecedents)
      if (a < 1 || a >= s.id) return "antecedent " + std::to_string(a) + " does not precede step";
    if (!has_witness(s.rule) && (!s.witness.empty() || !s.decisions.empty())) return "unexpected witness";
    switch (s.rule) {
      case Rule::Res: case Rule::QuRes: return check_res(p, s);
      case Rule::Red: return check_red(p, s);
      case Rule::ClInit:
        if (!s.antecedents.empty()) return "axiom with antecedents";
        if (s.kind != ConstraintKind::Clause) return "cl-init derives a clause";
        if (!matrix_set_.count(key(s.literals))) return "cl-init clause not in matrix";
        return {};
      case Rule::CuInit: return check_cu_init(s);
      case Rule::GenClInit: case Rule::GenCuInit: return check_gen(s);
      case Rule::AbsClInit: return check_abs(s);
    }
    return "unknown rule";
  }

  std::string check_res(const Proof& p, const ProofStep& s) {
    if (s.antecedents.size() != 2) return "resolution needs two antecedents";
    const auto& a = p.steps[static_cast<std::size_t>(s.antecedents[0] - 1)];
    const auto& b = p.steps[static_cast<std::size_t>(s.antecedents[1] - 1)];
    if (a.kind != s.kind || b.kind != s.kind) return "antecedent kind mismatch";
    if (s.rule == Rule::QuRes && s.kind != ConstraintKind::Clause) return "qures resolves clauses only";
    std::vector<Var> clashes;
    for (Literal l : a.literals)
      if (std::find(b.literals.begin(), b.literals.end(), ~l) != b.literals.end()) clashes.push_back(l.var());
    if (clashes.size() != 1) return clashes.empty() ? "no pivot" : "resolvent would be tautological";
    const Var pv = clashes[0];
    if (s.pivot && *s.pivot != pv) return "recorded pivot does not clash";
    const bool pivot_exists = f_.prefix.quantifier(pv) == Quantifier::Exists;
    if (s.rule == Rule::QuRes) {
      if (pivot_exists) return "qures pivot must be universal";
    } else if (s.kind == ConstraintKind::Clause ? !pivot_exists : pivot_exists) {
      return s.kind == ConstraintKind::Clause ? "clause resolution pivot must be existential"
                                              : "cube resolution pivot must be universal";
    }
    std::vector<Literal> r;
    for (const auto* side : {&a.literals, &b.literals})
      for (Literal l : *side)
        if (l.var() != pv && std::find(r.begin(), r.end(), l) == r.end()) r.push_back(l);
    if (!set_equal(r, s.literals)) return "derived constraint is not the resolvent";
    return {};
  }

  std::string check_red(const Proof& p, const ProofStep& s) {
    if (s.antecedents.size() != 1) return "reduction needs one antecedent";
    const auto& a = p.steps[static_cast<std::size_t>(s.antecedents[0] - 1)];
    if (a.kind != s.kind) return "antecedent kind mismatch";
    for (Literal l : s.literals)
      if (std::find(a.literals.begin(), a.literals.end(), l) == a.literals.end())
        return "reduct is not a subset of the antecedent";
    if (s.literals.size() == a.literals.size()) return "reduction removes nothing";
    const Quantifier removable = s.kind == ConstraintKind::Clause ? Quantifier::Forall : Quantifier::Exists;
    for (Literal l : a.literals) {
      if (std::find(s.literals.begin(), s.literals.end(), l) != s.literals.end()) continue;
      if (f_.prefix.quantifier(l) != removable) return "reduced literal " + to_string(l) + " has wrong quantifier";
      for (Literal k : s.literals)
        if (f_.prefix.quantifier(k) != removable && block(k) >= block(l))
          return "reduced literal " + to_string(l) + " precedes " + to_string(k);
    }
    return {};
  }

  std::string check_cu_init(const ProofStep& s) {
    if (!s.antecedents.empty()) return "axiom with antecedents";
    if (s.kind != ConstraintKind::Cube) return "cu-init derives a cube";
    const auto& a = s.witness.empty() ? s.literals : s.witness;
    if (auto w = well_formed(a, "witness"); !w.empty()) return w;
    if (!set_equal(a, s.literals)) return "cu-init cube differs from its assignment";
    auto val = values(a);
    for (const auto& c : f_.matrix) {
      bool sat = false;
      for (Literal l : c)
        if (value(val, l) > 0) { sat = true; break; }
      if (!sat) return "assignment does not satisfy the matrix";
    }
    return {};
  }

  std::string check_abs(const ProofStep& s) {
    if (!s.antecedents.empty()) return "axiom with antecedents";
    if (s.kind != ConstraintKind::Clause) return "abs-cl-init derives a clause";
    if (auto w = well_formed(s.witness, "witness"); !w.empty()) return w;
    if (!set_equal(negated(s.witness), s.literals)) return "abs-cl-init clause is not the negated assignment";
    if (sat().solve(s.witness).verdict != Verdict::Unsat) return "abstraction is satisfiable under the assignment";
    return {};
  }

  std::string check_gen(const ProofStep& s) {
    if (!s.antecedents.empty()) return "axiom with antecedents";
    const bool clause = s.rule == Rule::GenClInit;
    if (s.kind != (clause ? ConstraintKind::Clause : ConstraintKind::Cube)) return "axiom derives wrong kind";
    if (auto w = well_formed(s.witness, "witness"); !w.empty()) return w;
    for (Literal d : s.decisions)
      if (std::find(s.witness.begin(), s.witness.end(), d) == s.witness.end()) return "decision not in witness";
    if (!set_equal(clause ? negated(s.witness) : s.witness, s.literals))
      return "axiom constraint does not match its assignment";
    if (auto w = check_qcdcl_assignment(s); !w.empty()) return w;
    return clause ? verify_unsat(s.witness) : verify_sat(s.witness);
  }

  // Decisions follow the prefix; every other literal is implied by a unit
  // constraint or is pure in the matrix under the literals before it.
  std::string check_qcdcl_assignment(const ProofStep& s) {
    std::vector<signed char> val(static_cast<std::size_t>(nv_) + 1, 0);
    for (Literal w : s.witness) {
      const bool decision = std::find(s.decisions.begin(), s.decisions.end(), w) != s.decisions.end();
      if (decision) {
        for (const auto& b : f_.prefix.blocks()) {
          if (&b - f_.prefix.blocks().data() >= block(w)) break;
          for (Var v : b.vars)
            if (val[v] == 0) return "decision " + to_string(w) + " skips unassigned outer variable " + std::to_string(v);
        }
      } else if (!implied(val, w)) {
        return "witness literal " + to_string(w) + " is neither a decision nor implied";
      }
      val[w.var()] = w.is_positive() ? 1 : -1;
    }
    return {};
  }

  bool implied(const std::vector<signed char>& val, Literal w) const {
    if (exists(w)) {
      for (int ci : occ_clause_[w.index()])
        if (unit_clause(val, clause_lits(ci), w)) return true;
    } else {
      for (int ci : occ_cube_[(~w).index()])
        if (unit_cube(val, cubes_[static_cast<std::size_t>(ci)], ~w)) return true;
    }
    // pure: the opposite occurrence is absent from the active matrix residual
    const Literal bad = exists(w) ? ~w : w;
    for (const auto& c : f_.matrix) {
      bool sat = false, has_bad = false;
      for (Literal l : c) {
        if (value(val, l) > 0) sat = true;
        if (l == bad) has_bad = true;
      }
      if (!sat && has_bad) return false;
    }
    return true;
  }

  // clause is unit with implied existential w
  bool unit_clause(const std::vector<signed char>& val, const std::vector<Literal>& c, Literal w) const {
    for (Literal l : c) {
      const int v = value(val, l);
      if (v > 0) return false;
      if (v == 0 && l != w && (exists(l) || block(l) < block(w))) return false;
    }
    return true;
  }

  // cube is unit on universal u, implying ~u
  bool unit_cube(const std::vector<signed char>& val, const std::vector<Literal>& c, Literal u) const {
    for (Literal l : c) {
      const int v = value(val, l);
      if (v < 0) return false;
      if (v == 0 && l != u && (!exists(l) || block(l) < block(u))) return false;
    }
    return true;
  }

  const std::vector<Literal>& clause_lits(int ci) const {
    const auto m = static_cast<int>(f_.matrix.size());
    return ci < m ? f_.matrix[static_cast<std::size_t>(ci)].literals() : derived_clauses_[static_cast<std::size_t>(ci - m)];
  }

  enum class Closure { Conflict, Solution, Stable };

  // Propagation to fixpoint from `a` over matrix, derived clauses and cubes.
  Closure closure(const std::vector<Literal>& a) const {
    std::vector<signed char> val = values(a);
    const int nclauses = static_cast<int>(f_.matrix.size() + derived_clauses_.size());
    for (;;) {
      Literal next;
      for (int ci = 0; ci < nclauses; ++ci) {
        const auto& c = clause_lits(ci);
        bool sat = false;
        int ecount = 0;
        Literal e;
        for (Literal l : c) {
          const int v = value(val, l);
          if (v > 0) { sat = true; break; }
          if (v == 0 && exists(l)) { ++ecount; e = l; }
        }
        if (sat) continue;
        if (ecount == 0) return Closure::Conflict;
        if (ecount == 1 && !next.valid() && unit_clause(val, c, e)) next = e;
      }
      bool all_sat = true;
      for (const auto& c : f_.matrix) {
        bool sat = false;
        for (Literal l : c)
          if (value(val, l) > 0) { sat = true; break; }
        if (!sat) { all_sat = false; break; }
      }
      if (all_sat) return Closure::Solution;
      for (const auto& c : cubes_) {
        bool dead = false;
        int ucount = 0;
        Literal u;
        for (Literal l : c) {
          const int v = value(val, l);
          if (v < 0) { dead = true; break; }
          if (v == 0 && !exists(l)) { ++ucount; u = l; }
        }
        if (dead) continue;
        if (ucount == 0) return Closure::Solution;
        if (ucount == 1 && !next.valid() && unit_cube(val, c, u)) next = ~u;
      }
      if (!next.valid()) {
        for (Var v = 1; v <= f_.prefix.max_var() && !next.valid(); ++v) {
          if (!f_.prefix.contains(v) || val[v] != 0) continue;
          bool pos = false, neg = false;
          for (const auto& c : f_.matrix) {
            bool sat = false, hp = false, hn = false;
            for (Literal l : c) {
              if (value(val, l) > 0) sat = true;
              if (l.var() == v) (l.is_positive() ? hp : hn) = true;
            }
            if (sat) continue;
            pos |= hp;
            neg |= hn;
          }
          if (pos == neg) continue;
          const Literal pure = pos ? Literal::positive(v) : Literal::negative(v);
          next = f_.prefix.quantifier(v) == Quantifier::Exists ? pure : ~pure;
        }
      }
      if (!next.valid()) return Closure::Stable;
      val[next.var()] = next.is_positive() ? 1 : -1;
    }
  }

  std::string verify_unsat(const std::vector<Literal>& a) {
    if (closure(a) == Closure::Conflict) return {};
    if (sat().solve(a).verdict == Verdict::Unsat) return {};
    BruteOptions o;
    o.node_budget = opts_.brute_budget;
    const Verdict v = evaluate_under(f_, a, o);
    if (v == Verdict::Unsat) return {};
    return v == Verdict::Sat ? "formula under the assignment is satisfiable"
                             : "could not establish unsatisfiability under the assignment";
  }

  std::string verify_sat(const std::vector<Literal>& a) {
    if (closure(a) == Closure::Solution) return {};
    if (tt().solve(existential_part(a)).verdict == Verdict::Sat) return {};
    if (qbce_reduce(f_, a).empty) return {};
    BruteOptions o;
    o.node_budget = opts_.brute_budget;
    const Verdict v = evaluate_under(f_, a, o);
    if (v == Verdict::Sat) return {};
    return v == Verdict::Unsat ? "formula under the assignment is unsatisfiable"
                               : "could not establish satisfiability under the assignment";
  }

  std::vector<Literal> existential_part(const std::vector<Literal>& a) const {
    std::vector<Literal> out;
    for (Literal l : a)
      if (exists(l)) out.push_back(l);
    return out;
  }

  void add_derived(const ProofStep& s) {
    if (s.kind == ConstraintKind::Clause) {
      const int ci = static_cast<int>(f_.matrix.size() + derived_clauses_.size());
      derived_clauses_.push_back(s.literals);
      for (Literal l : s.literals) occ_clause_[l.index()].push_back(ci);
    } else {
      const int ci = static_cast<int>(cubes_.size());
      cubes_.push_back(s.literals);
      for (Literal l : s.literals) occ_cube_[l.index()].push_back(ci);
    }
  }

  std::vector<signed char> values(const std::vector<Literal>& a) const {
    std::vector<signed char> val(static_cast<std::size_t>(nv_) + 1, 0);
    for (Literal l : a) val[l.var()] = l.is_positive() ? 1 : -1;
    return val;
  }
  static int value(const std::vector<signed char>& val, Literal l) {
    const int v = val[l.var()];
    return l.is_positive() ? v : -v;
  }
  static std::vector<Literal> negated(const std::vector<Literal>& a) {
    std::vector<Literal> out;
    for (Literal l : a) out.push_back(~l);
    return out;
  }

  SatSolver& sat() {
    if (!sat_) sat_.emplace(load_matrix(f_.matrix, nv_));
    return *sat_;
  }
  SatSolver& tt() {
    if (!tt_) {
      tt_.emplace();
      tt_->reserve_vars(nv_);
      for (const auto& c : f_.matrix) {
        std::vector<Literal> r;
        for (Literal l : c)
          if (exists(l)) r.push_back(l);
        tt_->add_clause(r);
      }
    }
    return *tt_;
  }

  const Pcnf& f_;
  CheckMode mode_;
  CheckOptions opts_;
  Var nv_ = 0;
  std::set<std::vector<int>> matrix_set_;
  std::vector<std::vector<Literal>> derived_clauses_;
  std::vector<std::vector<Literal>> cubes_;
  std::vector<std::vector<int>> occ_clause_;
  std::vector<std::vector<int>> occ_cube_;
  std::optional<SatSolver> sat_, tt_;
};

}  // namespace detail

/// Accepts iff every step meets its rule's side conditions in `mode` and the
/// last step is the empty constraint.
inline CheckResult check(const Proof& p, const Pcnf& f, CheckMode mode, CheckOptions opts = {}) {
  for (const auto& s : p.steps) {
    for (const auto* v : {&s.literals, &s.witness, &s.decisions})
      for (Literal l : *v)
        if (!l.valid() || !f.prefix.contains(l.var())) {
          CheckResult r;
          r.step = s.id;
          r.reason = "literal over unknown variable";
          return r;
        }
  }
  detail::Checker c(f, mode, opts);
  return c.run(p);
}

class TranslationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Replaces every qures step by an abs-cl-init step whose witness is the
/// negated resolvent; all other steps are copied unchanged.
inline Proof translate_qu_to_abs(const Proof& p, const Pcnf& f) {
  const auto in = check(p, f, CheckMode::QuRes);
  if (!in) throw TranslationError("input is not a QU-resolution proof: step " + std::to_string(in.step) + ": " + in.reason);
  Proof out = p;
  for (auto& s : out.steps) {
    if (s.rule != Rule::QuRes) continue;
    s.rule = Rule::AbsClInit;
    s.witness.clear();
    for (Literal l : s.literals) s.witness.push_back(~l);
    s.antecedents.clear();
    s.pivot.reset();
  }
  return out;
}

}  // namespace qrg
