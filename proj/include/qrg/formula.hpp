#pragma once

// Core QBF types: literals, quantifier prefix, clauses/cubes, PCNF and
// the formula-under-assignment operation.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

namespace qrg {

using Var = std::uint32_t;

/// A literal in DIMACS convention: +v is the variable, -v its negation.
class Literal {
public:
  constexpr Literal() = default;
  constexpr explicit Literal(int dimacs) : value_(dimacs) {}
  static constexpr Literal positive(Var v) { return Literal(static_cast<int>(v)); }
  static constexpr Literal negative(Var v) { return Literal(-static_cast<int>(v)); }

  constexpr Var var() const { return static_cast<Var>(value_ < 0 ? -value_ : value_); }
  constexpr bool is_positive() const { return value_ > 0; }
  constexpr int dimacs() const { return value_; }
  constexpr Literal operator~() const { return Literal(-value_); }

  /// Dense index usable for per-literal tables: 2*var + (negative ? 1 : 0).
  constexpr std::size_t index() const { return 2 * std::size_t(var()) + (value_ < 0 ? 1 : 0); }

  constexpr bool valid() const { return value_ != 0; }

  friend constexpr bool operator==(Literal a, Literal b) = default;
  friend constexpr auto operator<=>(Literal a, Literal b) = default;

private:
  int value_ = 0;
};

inline constexpr Literal negate(Literal l) { return ~l; }

inline std::string to_string(Literal l) { return std::to_string(l.dimacs()); }

enum class Quantifier : std::uint8_t { Exists, Forall };

inline constexpr Quantifier dual(Quantifier q) {
  return q == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
}

struct Block {
  Quantifier quantifier = Quantifier::Exists;
  std::vector<Var> vars;
  friend bool operator==(const Block&, const Block&) = default;
};

enum class Order { Before, SameBlock, After };

class FormulaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Quantifier prefix Q1 X1 ... Qn Xn with alternating quantifiers.
class Prefix {
public:
  Prefix() = default;

  /// Appends a block; merges with the last block when the quantifier repeats.
  void add_block(Quantifier q, const std::vector<Var>& vars) {
    if (vars.empty()) return;
    if (blocks_.empty() || blocks_.back().quantifier != q) blocks_.push_back(Block{q, {}});
    const auto bi = static_cast<int>(blocks_.size() - 1);
    for (Var v : vars) {
      if (v == 0) throw FormulaError("variable id 0 in prefix");
      if (contains(v)) throw FormulaError("variable " + std::to_string(v) + " quantified twice");
      if (v >= block_of_.size()) block_of_.resize(v + 1, -1);
      block_of_[v] = bi;
      blocks_.back().vars.push_back(v);
    }
  }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }

  bool contains(Var v) const { return v < block_of_.size() && block_of_[v] >= 0; }

  /// Block index of v; throws for unknown variables.
  int block(Var v) const {
    if (!contains(v)) throw FormulaError("variable " + std::to_string(v) + " not in prefix");
    return block_of_[v];
  }

  Quantifier quantifier(Var v) const { return blocks_[static_cast<std::size_t>(block(v))].quantifier; }
  Quantifier quantifier(Literal l) const { return quantifier(l.var()); }
  bool is_universal(Literal l) const { return quantifier(l) == Quantifier::Forall; }
  bool is_existential(Literal l) const { return quantifier(l) == Quantifier::Exists; }

  Order order(Literal a, Literal b) const {
    const int ba = block(a.var());
    const int bb = block(b.var());
    if (ba < bb) return Order::Before;
    if (ba == bb) return Order::SameBlock;
    return Order::After;
  }

  /// a <_Pi b: a sits in a strictly outer block.
  bool less(Literal a, Literal b) const { return block(a.var()) < block(b.var()); }

  std::size_t num_vars() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.vars.size();
    return n;
  }

  Var max_var() const { return block_of_.empty() ? 0 : static_cast<Var>(block_of_.size() - 1); }

  friend bool operator==(const Prefix& a, const Prefix& b) { return a.blocks_ == b.blocks_; }

private:
  std::vector<Block> blocks_;
  std::vector<int> block_of_;
};

inline Order prefix_order(const Prefix& p, Literal a, Literal b) { return p.order(a, b); }

enum class ConstraintKind : std::uint8_t { Clause, Cube };

/// A clause (disjunction) or cube (conjunction). Literals are kept in
/// insertion order, deduplicated, and never contain a complementary pair.
class Constraint {
public:
  Constraint() = default;
  explicit Constraint(ConstraintKind kind) : kind_(kind) {}
  Constraint(ConstraintKind kind, std::vector<Literal> lits) : kind_(kind) {
    for (Literal l : lits) add(l);
  }
  static Constraint clause(std::vector<Literal> lits) { return {ConstraintKind::Clause, std::move(lits)}; }
  static Constraint cube(std::vector<Literal> lits) { return {ConstraintKind::Cube, std::move(lits)}; }

  /// Adds l unless present. Throws on a complementary pair.
  void add(Literal l) {
    if (contains(l)) return;
    if (contains(~l)) throw FormulaError("complementary literals " + to_string(l) + " in constraint");
    lits_.push_back(l);
  }

  bool contains(Literal l) const { return std::find(lits_.begin(), lits_.end(), l) != lits_.end(); }
  bool is_clause() const { return kind_ == ConstraintKind::Clause; }
  bool is_cube() const { return kind_ == ConstraintKind::Cube; }
  ConstraintKind kind() const { return kind_; }
  const std::vector<Literal>& literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  /// Set equality on literals plus kind.
  bool same_as(const Constraint& o) const {
    if (kind_ != o.kind_ || lits_.size() != o.lits_.size()) return false;
    for (Literal l : lits_)
      if (!o.contains(l)) return false;
    return true;
  }

  std::vector<Literal> sorted() const {
    auto s = lits_;
    std::sort(s.begin(), s.end(), [](Literal a, Literal b) {
      return a.var() != b.var() ? a.var() < b.var() : a.dimacs() > b.dimacs();
    });
    return s;
  }

  /// Sorted DIMACS literals; equal keys mean equal literal sets.
  std::vector<int> key() const {
    std::vector<int> k;
    for (Literal l : lits_) k.push_back(l.dimacs());
    std::sort(k.begin(), k.end());
    return k;
  }

  friend bool operator==(const Constraint&, const Constraint&) = default;

private:
  ConstraintKind kind_ = ConstraintKind::Clause;
  std::vector<Literal> lits_;
};

inline bool has_complementary_pair(const std::vector<Literal>& lits) {
  std::unordered_set<int> seen;
  for (Literal l : lits) seen.insert(l.dimacs());
  for (Literal l : lits)
    if (seen.count(-l.dimacs())) return true;
  return false;
}

/// Closed prenex CNF: every matrix variable is quantified.
struct Pcnf {
  Var num_vars = 0;
  Prefix prefix;
  std::vector<Constraint> matrix;

  bool has_empty_clause() const {
    return std::any_of(matrix.begin(), matrix.end(), [](const Constraint& c) { return c.empty(); });
  }

  /// Throws FormulaError when a matrix variable is missing from the prefix.
  void validate() const {
    for (const auto& c : matrix) {
      if (!c.is_clause()) throw FormulaError("matrix must contain clauses only");
      for (Literal l : c)
        if (!prefix.contains(l.var()))
          throw FormulaError("free variable " + std::to_string(l.var()));
    }
  }

  friend bool operator==(const Pcnf& a, const Pcnf& b) {
    return a.num_vars == b.num_vars && a.prefix == b.prefix && a.matrix == b.matrix;
  }
};

enum class ReasonKind : std::uint8_t { Decision, Unit, Pure, Assumption };

struct AssignedLiteral {
  Literal literal;
  ReasonKind reason = ReasonKind::Decision;
  int antecedent = -1;  // constraint id for unit implications
};

/// Ordered assignment with reasons. At most one polarity per variable.
class Assignment {
public:
  Assignment() = default;
  Assignment(std::initializer_list<Literal> lits) {
    for (Literal l : lits) push(l, ReasonKind::Decision);
  }
  static Assignment from_literals(const std::vector<Literal>& lits, ReasonKind r = ReasonKind::Decision) {
    Assignment a;
    for (Literal l : lits) a.push(l, r);
    return a;
  }

  void push(Literal l, ReasonKind reason, int antecedent = -1) {
    if (value(l) != 0) throw FormulaError("variable " + std::to_string(l.var()) + " assigned twice");
    if (l.var() >= values_.size()) values_.resize(l.var() + 1, 0);
    values_[l.var()] = l.is_positive() ? 1 : -1;
    items_.push_back({l, reason, antecedent});
  }

  /// +1 if l is true, -1 if false, 0 if unassigned.
  int value(Literal l) const {
    if (l.var() >= values_.size()) return 0;
    const int v = values_[l.var()];
    return l.is_positive() ? v : -v;
  }
  bool assigned(Var v) const { return v < values_.size() && values_[v] != 0; }

  const std::vector<AssignedLiteral>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  std::vector<Literal> literals() const {
    std::vector<Literal> out;
    out.reserve(items_.size());
    for (const auto& i : items_) out.push_back(i.literal);
    return out;
  }
  std::vector<Literal> decisions() const {
    std::vector<Literal> out;
    for (const auto& i : items_)
      if (i.reason == ReasonKind::Decision) out.push_back(i.literal);
    return out;
  }

private:
  std::vector<AssignedLiteral> items_;
  std::vector<signed char> values_;
};

enum class Truth { True, False };

enum class Verdict { Sat, Unsat, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    default: return "UNKNOWN";
  }
}

using Residual = std::variant<Pcnf, Truth>;

/// phi[A]: drop satisfied clauses, delete false literals, merge clauses that
/// became equal, remove assigned variables from the prefix (dropping emptied
/// blocks). Returns F if a clause
/// became empty, T if the matrix became empty.
inline Residual apply_assignment(const Pcnf& f, const Assignment& a) {
  Pcnf out;
  out.num_vars = f.num_vars;
  std::vector<Constraint> matrix;
  std::set<std::vector<int>> seen;
  for (const auto& c : f.matrix) {
    bool sat = false;
    Constraint r(ConstraintKind::Clause);
    for (Literal l : c) {
      const int v = a.value(l);
      if (v > 0) { sat = true; break; }
      if (v == 0) r.add(l);
    }
    if (sat) continue;
    if (r.empty()) return Truth::False;
    if (!seen.insert(r.key()).second) continue;
    matrix.push_back(std::move(r));
  }
  if (matrix.empty()) return Truth::True;
  for (const auto& b : f.prefix.blocks()) {
    std::vector<Var> vars;
    for (Var v : b.vars)
      if (!a.assigned(v)) vars.push_back(v);
    out.prefix.add_block(b.quantifier, vars);
  }
  out.matrix = std::move(matrix);
  return out;
}

/// Universal reduction UR(C): drop universal literals l such that every
/// existential literal of C lies in a strictly outer block than l.
inline Constraint universal_reduce(const Prefix& p, const Constraint& c) {
  int max_exist = -1;
  for (Literal l : c)
    if (p.is_existential(l)) max_exist = std::max(max_exist, p.block(l.var()));
  Constraint out(c.kind());
  for (Literal l : c)
    if (p.is_existential(l) || p.block(l.var()) < max_exist) out.add(l);
  return out;
}

/// Existential reduction ER(C), the dual of universal_reduce for cubes.
inline Constraint existential_reduce(const Prefix& p, const Constraint& c) {
  int max_univ = -1;
  for (Literal l : c)
    if (p.is_universal(l)) max_univ = std::max(max_univ, p.block(l.var()));
  Constraint out(c.kind());
  for (Literal l : c)
    if (p.is_universal(l) || p.block(l.var()) < max_univ) out.add(l);
  return out;
}

/// UR for clauses, ER for cubes.
inline Constraint reduce(const Prefix& p, const Constraint& c) {
  return c.is_clause() ? universal_reduce(p, c) : existential_reduce(p, c);
}

}  // namespace qrg

template <>
struct std::hash<qrg::Literal> {
  std::size_t operator()(qrg::Literal l) const noexcept { return std::hash<int>{}(l.dimacs()); }
};
