#pragma once

// Proof traces: steps of the extended Q-resolution calculus, the text trace
// format, and a builder that trims a derivation to the cone of its final step.
//
// Trace format:
//   p qrgp <#vars> <#steps>
//   <id> <rule> <C|U> <lit...> 0 <antecedent id...> 0 [a <lit...> 0 [d <lit...> 0]]
// C marks a clause, U a cube. The "a" section is the axiom witness assignment
// in assignment order; "d" lists which of its literals were decisions.

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrg/formula.hpp"

namespace qrg {

enum class Rule { Res, Red, ClInit, CuInit, GenClInit, GenCuInit, AbsClInit, QuRes };

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::Res: return "res";
    case Rule::Red: return "red";
    case Rule::ClInit: return "cl-init";
    case Rule::CuInit: return "cu-init";
    case Rule::GenClInit: return "gen-cl-init";
    case Rule::GenCuInit: return "gen-cu-init";
    case Rule::AbsClInit: return "abs-cl-init";
    case Rule::QuRes: return "qures";
  }
  return "?";
}

inline std::optional<Rule> parse_rule(const std::string& s) {
  for (Rule r : {Rule::Res, Rule::Red, Rule::ClInit, Rule::CuInit, Rule::GenClInit, Rule::GenCuInit,
                 Rule::AbsClInit, Rule::QuRes})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

/// Axiom rules carry a witness assignment.
inline bool has_witness(Rule r) {
  return r == Rule::CuInit || r == Rule::GenClInit || r == Rule::GenCuInit || r == Rule::AbsClInit;
}

struct ProofStep {
  int id = 0;
  Rule rule = Rule::ClInit;
  ConstraintKind kind = ConstraintKind::Clause;
  std::vector<Literal> literals;
  std::vector<int> antecedents;
  std::vector<Literal> witness;
  std::vector<Literal> decisions;
  std::optional<Var> pivot;  // in-memory only; the trace infers it

  Constraint constraint() const { return Constraint(kind, literals); }
  friend bool operator==(const ProofStep& a, const ProofStep& b) {
    return a.id == b.id && a.rule == b.rule && a.kind == b.kind && a.literals == b.literals &&
           a.antecedents == b.antecedents && a.witness == b.witness && a.decisions == b.decisions;
  }
};

struct Proof {
  Var num_vars = 0;
  std::vector<ProofStep> steps;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  const ProofStep& final_step() const { return steps.back(); }
  std::size_t count(Rule r) const {
    std::size_t n = 0;
    for (const auto& s : steps) n += s.rule == r;
    return n;
  }
};

class ProofFormatError : public std::runtime_error {
public:
  ProofFormatError(int line, const std::string& msg)
      : std::runtime_error("proof line " + std::to_string(line) + ": " + msg) {}
};

inline void write_proof(std::ostream& out, const Proof& p) {
  out << "p qrgp " << p.num_vars << ' ' << p.steps.size() << '\n';
  for (const auto& s : p.steps) {
    out << s.id << ' ' << to_string(s.rule) << ' ' << (s.kind == ConstraintKind::Clause ? 'C' : 'U');
    for (Literal l : s.literals) out << ' ' << l.dimacs();
    out << " 0";
    for (int a : s.antecedents) out << ' ' << a;
    out << " 0";
    if (has_witness(s.rule)) {
      out << " a";
      for (Literal l : s.witness) out << ' ' << l.dimacs();
      out << " 0";
      if (!s.decisions.empty()) {
        out << " d";
        for (Literal l : s.decisions) out << ' ' << l.dimacs();
        out << " 0";
      }
    }
    out << '\n';
  }
}

inline std::string write_proof(const Proof& p) {
  std::ostringstream out;
  write_proof(out, p);
  return out.str();
}

inline Proof read_proof(std::istream& in) {
  Proof p;
  std::string line;
  int lineno = 0;
  bool header = false;
  long long declared = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (header || tok.size() != 4 || tok[1] != "qrgp") throw ProofFormatError(lineno, "bad header");
      p.num_vars = static_cast<Var>(std::stoul(tok[2]));
      declared = std::stoll(tok[3]);
      header = true;
      continue;
    }
    if (!header) throw ProofFormatError(lineno, "missing header");
    std::size_t i = 0;
    auto next = [&]() -> const std::string& {
      if (i >= tok.size()) throw ProofFormatError(lineno, "truncated step");
      return tok[i++];
    };
    auto num = [&](const std::string& t) -> long long {
      std::size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(t, &pos);
      } catch (...) {
        throw ProofFormatError(lineno, "bad number '" + t + "'");
      }
      if (pos != t.size()) throw ProofFormatError(lineno, "bad number '" + t + "'");
      return v;
    };
    auto lits = [&](std::vector<Literal>& out) {
      for (;;) {
        const long long v = num(next());
        if (v == 0) return;
        out.push_back(Literal(static_cast<int>(v)));
      }
    };
    ProofStep s;
    s.id = static_cast<int>(num(next()));
    if (s.id != static_cast<int>(p.steps.size()) + 1) throw ProofFormatError(lineno, "step ids must count up from 1");
    const auto rule = parse_rule(next());
    if (!rule) throw ProofFormatError(lineno, "unknown rule");
    s.rule = *rule;
    const std::string& k = next();
    if (k != "C" && k != "U") throw ProofFormatError(lineno, "kind must be C or U");
    s.kind = k == "C" ? ConstraintKind::Clause : ConstraintKind::Cube;
    lits(s.literals);
    for (;;) {
      const long long v = num(next());
      if (v == 0) break;
      s.antecedents.push_back(static_cast<int>(v));
    }
    if (i < tok.size() && tok[i] == "a") {
      ++i;
      lits(s.witness);
      if (i < tok.size() && tok[i] == "d") {
        ++i;
        lits(s.decisions);
      }
    }
    if (i != tok.size()) throw ProofFormatError(lineno, "trailing tokens");
    p.steps.push_back(std::move(s));
  }
  if (!header) throw ProofFormatError(lineno, "missing header");
  if (declared != static_cast<long long>(p.steps.size()))
    throw ProofFormatError(lineno, "header declares " + std::to_string(declared) + " steps");
  return p;
}

inline Proof read_proof(const std::string& text) {
  std::istringstream in(text);
  return read_proof(in);
}

/// Collects every derived constraint of a run. `deps` are extra,
/// unprinted dependencies (e.g. reasons behind an axiom witness) that must
/// survive trimming.
class ProofBuilder {
public:
  int add(ProofStep s, std::vector<int> deps = {}) {
    s.id = static_cast<int>(steps_.size()) + 1;
    steps_.push_back(std::move(s));
    deps_.push_back(std::move(deps));
    return steps_.back().id;
  }

  const ProofStep& step(int id) const { return steps_[static_cast<std::size_t>(id - 1)]; }
  std::size_t size() const { return steps_.size(); }

  /// Steps in the cone of `final_id`, renumbered consecutively.
  Proof trim(int final_id, Var num_vars) const {
    std::vector<char> keep(steps_.size() + 1, 0);
    std::vector<int> stack{final_id};
    keep[static_cast<std::size_t>(final_id)] = 1;
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      const auto& s = steps_[static_cast<std::size_t>(id - 1)];
      auto visit = [&](int a) {
        if (a > 0 && !keep[static_cast<std::size_t>(a)]) {
          keep[static_cast<std::size_t>(a)] = 1;
          stack.push_back(a);
        }
      };
      for (int a : s.antecedents) visit(a);
      for (int a : deps_[static_cast<std::size_t>(id - 1)]) visit(a);
    }
    Proof p;
    p.num_vars = num_vars;
    std::vector<int> remap(steps_.size() + 1, 0);
    for (std::size_t id = 1; id <= steps_.size(); ++id) {
      if (!keep[id]) continue;
      ProofStep s = steps_[id - 1];
      s.id = static_cast<int>(p.steps.size()) + 1;
      remap[id] = s.id;
      for (int& a : s.antecedents) a = remap[static_cast<std::size_t>(a)];
      p.steps.push_back(std::move(s));
    }
    return p;
  }

private:
  std::vector<ProofStep> steps_;
  std::vector<std::vector<int>> deps_;
};

}  // namespace qrg
