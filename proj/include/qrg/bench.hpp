#pragma once

// Configuration letter codes, ablation runs and CSV reports.
//
// Codes follow the DQ-{nQ|B|A|T} scheme: "DQ" alone has dynamic QBCE on and
// nothing else; after a dash, "nQ" turns QBCE off, "B" adds the bounded
// brute-force oracle, "A" the abstraction axiom, "T" the trivial-truth test.
// "plain" is an alias for DQ-nQ.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrg/qdimacs.hpp"
#include "qrg/solver.hpp"

namespace qrg {

inline SolverOptions config_from_code(const std::string& code) {
  SolverOptions o;
  if (code == "plain") {
    o.axioms.enable_qbce = false;
    return o;
  }
  if (code.rfind("DQ", 0) != 0) throw std::invalid_argument("unknown configuration '" + code + "'");
  std::string rest = code.substr(2);
  if (rest.empty()) return o;
  if (rest[0] != '-') throw std::invalid_argument("unknown configuration '" + code + "'");
  rest = rest.substr(1);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest.compare(i, 2, "nQ") == 0) {
      o.axioms.enable_qbce = false;
      ++i;
    } else if (rest[i] == 'B') {
      o.axioms.oracle = OracleKind::Brute;
    } else if (rest[i] == 'A') {
      o.axioms.enable_abs = true;
    } else if (rest[i] == 'T') {
      o.axioms.enable_trivial_truth = true;
    } else {
      throw std::invalid_argument("unknown configuration '" + code + "'");
    }
  }
  return o;
}

struct BenchRow {
  std::string instance;
  std::string config;
  SolveResult result;
  double wall_ms = 0;
};

inline const char* csv_header() {
  return "instance,config,verdict,decisions,conflicts,learned_clauses,learned_cubes,"
         "Q_tried,Q_success,B_tried,B_success,A_tried,A_success,T_tried,T_success,proof_steps,wall_ms";
}

inline std::string csv_row(const BenchRow& r) {
  const auto& s = r.result.stats;
  std::ostringstream out;
  out << r.instance << ',' << r.config << ',' << to_string(r.result.verdict) << ',' << s.decisions << ','
      << s.conflicts << ',' << s.learned_clauses << ',' << s.learned_cubes << ',' << s.qbce_tried << ','
      << s.qbce_success << ',' << s.oracle_tried << ',' << s.oracle_success << ',' << s.abs_tried << ','
      << s.abs_success << ',' << s.tt_tried << ',' << s.tt_success << ','
      << (r.result.proof ? r.result.proof->size() : 0) << ',' << static_cast<long long>(r.wall_ms + 0.5);
  return out.str();
}

inline BenchRow run_cell(const std::string& instance, const Pcnf& f, const std::string& config,
                         const SolverOptions& opts) {
  BenchRow row{instance, config, {}, 0};
  const auto t0 = std::chrono::steady_clock::now();
  row.result = solve(f, opts);
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

struct BenchInstance {
  std::string name;
  Pcnf formula;
};

struct BenchConfig {
  std::string name;
  SolverOptions options;
};

inline std::vector<BenchRow> run_ablation(const std::vector<BenchInstance>& instances,
                                          const std::vector<BenchConfig>& configs) {
  std::vector<BenchRow> rows;
  for (const auto& i : instances)
    for (const auto& c : configs) rows.push_back(run_cell(i.name, i.formula, c.name, c.options));
  return rows;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

struct ManifestEntry {
  std::string file;
  std::string config;
};

/// One "<file> <config>" pair per line; '#' starts a comment. Relative
/// paths are resolved against the manifest's directory.
inline std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<ManifestEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string file, config, extra;
    if (!(ls >> file)) continue;
    if (!(ls >> config) || (ls >> extra))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected '<file> <config>'");
    std::filesystem::path p(file);
    if (p.is_relative()) p = base / p;
    out.push_back({p.string(), config});
  }
  return out;
}

inline std::vector<BenchRow> run_manifest(const std::string& path) {
  std::vector<BenchRow> rows;
  for (const auto& e : read_manifest(path)) {
    std::ifstream in(e.file);
    if (!in) throw std::runtime_error("cannot open instance " + e.file);
    const Pcnf f = parse_qdimacs(in);
    rows.push_back(run_cell(std::filesystem::path(e.file).filename().string(), f, e.config, config_from_code(e.config)));
  }
  return rows;
}

}  // namespace qrg
