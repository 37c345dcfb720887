#pragma once

// Axioms of the extended calculus (cl-init, cu-init, gen-cl-init,
// gen-cu-init, abs-cl-init), the trivial-truth test, pluggable incomplete
// QBF oracles and the call scheduling/disable policy.

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qrg/brute.hpp"
#include "qrg/formula.hpp"
#include "qrg/qbce.hpp"
#include "qrg/sat.hpp"

namespace qrg {

enum class OracleKind { None, Qbce, Brute };

struct AxiomConfig {
  bool enable_qbce = true;
  OracleKind oracle = OracleKind::None;
  std::uint64_t brute_budget = 100000;
  bool enable_abs = false;
  bool enable_trivial_truth = false;
  int oracle_interval_log2 = 11;
  int sat_interval_log2 = 10;
  std::size_t max_clauses_for_calls = 500000;
  double oracle_avg_disable_secs = 0.125;
  double sat_avg_disable_secs = 5.0;
  int minimize_resolve_budget = 64;
  std::uint64_t sat_conflict_budget = 100000;

  bool enable_oracle() const { return oracle != OracleKind::None; }

  void validate() const {
    if (oracle_interval_log2 < 0 || sat_interval_log2 < 0 || oracle_interval_log2 > 62 || sat_interval_log2 > 62)
      throw std::invalid_argument("interval exponents must lie in [0, 62]");
    if (!(oracle_avg_disable_secs > 0) || !(sat_avg_disable_secs > 0))
      throw std::invalid_argument("disable thresholds must be positive");
  }
};

/// Applies QRG_* environment overrides (e.g. QRG_ORACLE_INTERVAL_LOG2=3).
inline void apply_env_overrides(AxiomConfig& c) {
  auto get = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v) return std::nullopt;
    return std::string(v);
  };
  auto flag = [&](const char* name, bool& out) {
    if (auto v = get(name)) out = !(*v == "0" || *v == "false" || *v == "off");
  };
  flag("QRG_ENABLE_QBCE", c.enable_qbce);
  flag("QRG_ENABLE_ABS", c.enable_abs);
  flag("QRG_ENABLE_TRIVIAL_TRUTH", c.enable_trivial_truth);
  if (auto v = get("QRG_ORACLE_INTERVAL_LOG2")) c.oracle_interval_log2 = std::stoi(*v);
  if (auto v = get("QRG_SAT_INTERVAL_LOG2")) c.sat_interval_log2 = std::stoi(*v);
  if (auto v = get("QRG_MAX_CLAUSES_FOR_CALLS")) c.max_clauses_for_calls = std::stoull(*v);
  if (auto v = get("QRG_ORACLE_AVG_DISABLE_SECS")) c.oracle_avg_disable_secs = std::stod(*v);
  if (auto v = get("QRG_SAT_AVG_DISABLE_SECS")) c.sat_avg_disable_secs = std::stod(*v);
  c.validate();
}

struct OracleVerdict {
  Verdict verdict = Verdict::Unknown;
};

class QbfOracle {
public:
  virtual ~QbfOracle() = default;
  virtual OracleVerdict decide(const Pcnf& f, const std::vector<Literal>& trail) = 0;
  virtual std::string name() const = 0;
};

/// SAT-side only: succeeds when QBCE empties phi[A].
class QbceOracle : public QbfOracle {
public:
  OracleVerdict decide(const Pcnf& f, const std::vector<Literal>& trail) override {
    return {qbce_reduce(f, trail).empty ? Verdict::Sat : Verdict::Unknown};
  }
  std::string name() const override { return "qbce"; }
};

/// Complete within its node budget.
class BruteOracle : public QbfOracle {
public:
  explicit BruteOracle(std::uint64_t budget) : budget_(budget) {}
  OracleVerdict decide(const Pcnf& f, const std::vector<Literal>& trail) override {
    BruteOptions o;
    o.node_budget = budget_;
    return {evaluate_under(f, trail, o)};
  }
  std::string name() const override { return "brute:" + std::to_string(budget_); }

private:
  std::uint64_t budget_;
};

inline std::unique_ptr<QbfOracle> make_oracle(const AxiomConfig& c) {
  switch (c.oracle) {
    case OracleKind::Qbce: return std::make_unique<QbceOracle>();
    case OracleKind::Brute: return std::make_unique<BruteOracle>(c.brute_budget);
    default: return nullptr;
  }
}

/// Two call families with separate intervals and disable thresholds.
enum class CallKind { Oracle, Sat };

class AxiomScheduler {
public:
  AxiomScheduler(const AxiomConfig& c, std::size_t original_clauses)
      : config_(c), capped_(original_clauses > c.max_clauses_for_calls) {}

  bool capped() const { return capped_; }
  bool disabled(CallKind k) const { return slot(k).disabled; }
  std::uint64_t calls(CallKind k) const { return slot(k).calls; }
  double average_secs(CallKind k) const {
    const auto& s = slot(k);
    return s.calls ? s.total_secs / static_cast<double>(s.calls) : 0.0;
  }

  /// Due at decision counts that are positive multiples of 2^n, at most
  /// once per count.
  bool due(CallKind k, std::uint64_t decisions) const {
    const auto& s = slot(k);
    if (capped_ || s.disabled || decisions == 0) return false;
    const int n = k == CallKind::Oracle ? config_.oracle_interval_log2 : config_.sat_interval_log2;
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    if ((decisions & mask) != 0) return false;
    return !s.last_decisions || *s.last_decisions != decisions;
  }

  void mark(CallKind k, std::uint64_t decisions) { slot(k).last_decisions = decisions; }

  /// Records one call; disables the family once total/count exceeds its threshold.
  void record_call(CallKind k, double secs) {
    auto& s = slot(k);
    ++s.calls;
    s.total_secs += secs;
    const double limit = k == CallKind::Oracle ? config_.oracle_avg_disable_secs : config_.sat_avg_disable_secs;
    if (s.total_secs / static_cast<double>(s.calls) > limit) s.disabled = true;
  }

private:
  struct Slot {
    std::uint64_t calls = 0;
    double total_secs = 0.0;
    bool disabled = false;
    std::optional<std::uint64_t> last_decisions;
  };
  Slot& slot(CallKind k) { return k == CallKind::Oracle ? oracle_ : sat_; }
  const Slot& slot(CallKind k) const { return k == CallKind::Oracle ? oracle_ : sat_; }

  AxiomConfig config_;
  bool capped_;
  Slot oracle_, sat_;
};

// ---------------------------------------------------------------------------
// Axioms as standalone functions over an assignment given as a literal list.

namespace detail {

inline std::vector<signed char> values_of(const Pcnf& f, const std::vector<Literal>& a) {
  Var maxv = f.prefix.max_var();
  for (Literal l : a) maxv = std::max(maxv, l.var());
  std::vector<signed char> val(static_cast<std::size_t>(maxv) + 1, 0);
  for (Literal l : a) val[l.var()] = l.is_positive() ? 1 : -1;
  return val;
}

inline int lit_value(const std::vector<signed char>& val, Literal l) {
  const int v = l.var() < val.size() ? val[l.var()] : 0;
  return l.is_positive() ? v : -v;
}

inline Constraint negated_clause(const std::vector<Literal>& a) {
  Constraint c(ConstraintKind::Clause);
  for (Literal l : a) c.add(~l);
  return c;
}

}  // namespace detail

/// A matrix clause falsified by `a`, verbatim.
inline std::optional<Constraint> axiom_cl_init(const Pcnf& f, const std::vector<Literal>& a) {
  const auto val = detail::values_of(f, a);
  for (const auto& c : f.matrix) {
    bool falsified = true;
    for (Literal l : c)
      if (detail::lit_value(val, l) >= 0) { falsified = false; break; }
    if (falsified) return c;
  }
  return std::nullopt;
}

/// True iff every matrix clause has a true literal under `a`.
inline bool satisfies_matrix(const Pcnf& f, const std::vector<Literal>& a) {
  const auto val = detail::values_of(f, a);
  for (const auto& c : f.matrix) {
    bool sat = false;
    for (Literal l : c)
      if (detail::lit_value(val, l) > 0) { sat = true; break; }
    if (!sat) return false;
  }
  return true;
}

/// The cube of `a` when phi[a] = T.
inline std::optional<Constraint> axiom_cu_init(const Pcnf& f, const std::vector<Literal>& a) {
  if (!satisfies_matrix(f, a)) return std::nullopt;
  return Constraint::cube(a);
}

inline std::optional<Constraint> axiom_gen_cu_init(const Pcnf& f, const std::vector<Literal>& a, QbfOracle& oracle) {
  if (oracle.decide(f, a).verdict != Verdict::Sat) return std::nullopt;
  return Constraint::cube(a);
}

inline std::optional<Constraint> axiom_gen_cl_init(const Pcnf& f, const std::vector<Literal>& a, QbfOracle& oracle) {
  if (oracle.decide(f, a).verdict != Verdict::Unsat) return std::nullopt;
  return detail::negated_clause(a);
}

/// Matrix with every universal literal deleted.
inline std::vector<Constraint> ua_matrix(const Pcnf& f) {
  std::vector<Constraint> out;
  for (const auto& c : f.matrix) {
    Constraint r(ConstraintKind::Clause);
    for (Literal l : c)
      if (f.prefix.is_existential(l)) r.add(l);
    out.push_back(std::move(r));
  }
  return out;
}

struct AbsOutcome {
  Constraint clause;                  // negation of the minimized assumption set
  std::vector<Literal> assumptions;   // A as passed
  std::vector<Literal> failed;        // failed assumptions reported by the SAT core
  std::vector<Literal> minimized;     // after greedy deletion
};

/// SAT instance over the matrix (all variables existential), loaded once.
class AbsCore {
public:
  explicit AbsCore(const Pcnf& f) : solver_(load_matrix(f.matrix, f.prefix.max_var())) {}

  /// Refutes ea(phi)[a] if possible; returns the minimized failed set.
  std::optional<AbsOutcome> refute(const std::vector<Literal>& a, std::uint64_t conflict_budget,
                                   int resolve_budget) {
    auto r = solver_.solve(a, conflict_budget);
    if (r.verdict != Verdict::Unsat) return std::nullopt;
    AbsOutcome out;
    out.assumptions = a;
    out.failed = r.failed_assumptions;
    // keep the original trail order
    std::vector<Literal> cur;
    for (Literal l : a)
      if (std::find(out.failed.begin(), out.failed.end(), l) != out.failed.end()) cur.push_back(l);
    for (std::size_t i = 0; i < cur.size() && resolve_budget > 0;) {
      std::vector<Literal> trial = cur;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      --resolve_budget;
      auto t = solver_.solve(trial, conflict_budget);
      if (t.verdict == Verdict::Unsat) {
        std::vector<Literal> next;
        for (Literal l : trial)
          if (std::find(t.failed_assumptions.begin(), t.failed_assumptions.end(), l) != t.failed_assumptions.end())
            next.push_back(l);
        cur = std::move(next);
        i = std::min(i, cur.size());
      } else {
        ++i;
      }
    }
    out.minimized = cur;
    out.clause = detail::negated_clause(cur);
    return out;
  }

  SatSolver& solver() { return solver_; }

private:
  SatSolver solver_;
};

/// Second SAT instance over ua(phi) for the trivial-truth test.
class TrivialTruthCore {
public:
  explicit TrivialTruthCore(const Pcnf& f) : prefix_(&f.prefix), solver_(load_matrix(ua_matrix(f), f.prefix.max_var())) {}

  /// True only if ua(phi)[a] is propositionally satisfiable.
  bool check(const std::vector<Literal>& a, std::uint64_t conflict_budget) {
    std::vector<Literal> assume;
    for (Literal l : a)
      if (prefix_->contains(l.var()) && prefix_->is_existential(l)) assume.push_back(l);
    return solver_.solve(assume, conflict_budget).verdict == Verdict::Sat;
  }

private:
  const Prefix* prefix_;
  SatSolver solver_;
};

inline std::optional<AbsOutcome> axiom_abs_cl_init(const Pcnf& f, const std::vector<Literal>& a, AbsCore& core,
                                                   const AxiomConfig& c = {}) {
  (void)f;
  return core.refute(a, c.sat_conflict_budget, c.minimize_resolve_budget);
}

inline bool trivial_truth_check(const Pcnf& f, const std::vector<Literal>& a, TrivialTruthCore& core,
                                const AxiomConfig& c = {}) {
  (void)f;
  return core.check(a, c.sat_conflict_budget);
}

}  // namespace qrg
