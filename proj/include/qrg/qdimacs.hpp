#pragma once

// QDIMACS reader/writer.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrg/formula.hpp"

namespace qrg {

struct ParseDiagnostics {
  int line = 1;
  std::string message;
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), diag_{line, msg} {}
  const ParseDiagnostics& diagnostics() const { return diag_; }

private:
  ParseDiagnostics diag_;
};

struct ParseResult {
  Pcnf formula;
  std::vector<ParseDiagnostics> warnings;
};

namespace detail {

inline bool parse_int(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(tok, &pos);
  } catch (...) {
    return false;
  }
  return pos == tok.size();
}

}  // namespace detail

/// Parses QDIMACS. Tautological clauses are dropped, duplicate literals
/// merged, and consecutive blocks with the same quantifier merged.
inline ParseResult parse_qdimacs_with_warnings(std::istream& in) {
  ParseResult res;
  Pcnf& f = res.formula;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  bool in_matrix = false;
  long long declared_clauses = 0;
  long long clauses_read = 0;
  std::vector<Literal> current;
  int clause_start_line = 0;

  auto check_var = [&](long long v, int ln) {
    if (v > static_cast<long long>(f.num_vars))
      throw ParseError(ln, "variable " + std::to_string(v) + " exceeds header maximum " +
                               std::to_string(f.num_vars));
  };

  auto finish_clause = [&](int ln) {
    ++clauses_read;
    if (has_complementary_pair(current)) {
      current.clear();
      return;
    }
    Constraint c(ConstraintKind::Clause);
    for (Literal l : current) {
      if (!f.prefix.contains(l.var()))
        throw ParseError(ln, "free variable " + std::to_string(l.var()));
      c.add(l);
    }
    f.matrix.push_back(std::move(c));
    current.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      std::string fmt, sv, sc, extra;
      long long nv = 0, nc = 0;
      if (!(ls >> fmt >> sv >> sc) || fmt != "cnf" || !detail::parse_int(sv, nv) ||
          !detail::parse_int(sc, nc) || nv < 0 || nc < 0 || (ls >> extra))
        throw ParseError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
      f.num_vars = static_cast<Var>(nv);
      declared_clauses = nc;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "missing 'p cnf' header");
    if (first == "e" || first == "a") {
      if (in_matrix) throw ParseError(lineno, "quantifier line after clauses");
      const Quantifier q = first == "e" ? Quantifier::Exists : Quantifier::Forall;
      std::vector<Var> vars;
      std::string tok;
      bool terminated = false;
      while (ls >> tok) {
        long long v = 0;
        if (!detail::parse_int(tok, v)) throw ParseError(lineno, "bad token '" + tok + "'");
        if (terminated) throw ParseError(lineno, "tokens after terminating 0");
        if (v == 0) {
          terminated = true;
          continue;
        }
        if (v < 0) throw ParseError(lineno, "negative variable in quantifier line");
        check_var(v, lineno);
        for (Var w : vars)
          if (w == static_cast<Var>(v))
            throw ParseError(lineno, "duplicate quantification of variable " + std::to_string(v));
        if (f.prefix.contains(static_cast<Var>(v)))
          throw ParseError(lineno, "duplicate quantification of variable " + std::to_string(v));
        vars.push_back(static_cast<Var>(v));
      }
      if (!terminated) throw ParseError(lineno, "quantifier line not terminated by 0");
      if (vars.empty()) throw ParseError(lineno, "empty quantifier block");
      f.prefix.add_block(q, vars);
      continue;
    }
    // clause tokens; a clause may span several lines
    in_matrix = true;
    std::istringstream cs(line);
    std::string tok;
    while (cs >> tok) {
      long long v = 0;
      if (!detail::parse_int(tok, v)) throw ParseError(lineno, "bad token '" + tok + "'");
      if (current.empty()) clause_start_line = lineno;
      if (v == 0) {
        finish_clause(lineno);
        continue;
      }
      check_var(v < 0 ? -v : v, lineno);
      current.push_back(Literal(static_cast<int>(v)));
    }
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(clause_start_line, "clause not terminated by 0");
  if (clauses_read != declared_clauses)
    res.warnings.push_back({lineno == 0 ? 1 : lineno,
                            "header declares " + std::to_string(declared_clauses) + " clauses, read " +
                                std::to_string(clauses_read)});
  return res;
}

inline Pcnf parse_qdimacs(std::istream& in) { return parse_qdimacs_with_warnings(in).formula; }

inline Pcnf parse_qdimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_qdimacs(in);
}

inline void write_qdimacs(std::ostream& out, const Pcnf& f) {
  out << "p cnf " << f.num_vars << ' ' << f.matrix.size() << '\n';
  for (const auto& b : f.prefix.blocks()) {
    out << (b.quantifier == Quantifier::Exists ? 'e' : 'a');
    for (Var v : b.vars) out << ' ' << v;
    out << " 0\n";
  }
  for (const auto& c : f.matrix) {
    for (Literal l : c) out << l.dimacs() << ' ';
    out << "0\n";
  }
}

inline std::string write_qdimacs(const Pcnf& f) {
  std::ostringstream out;
  write_qdimacs(out, f);
  return out.str();
}

}  // namespace qrg
