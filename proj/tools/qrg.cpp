// qrg: solve, generate, benchmark and check.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qrg/bench.hpp"
#include "qrg/check.hpp"
#include "qrg/generators.hpp"
#include "qrg/qdimacs.hpp"
#include "qrg/solver.hpp"

namespace {

qrg::Pcnf load(const std::string& path) {
  if (path == "-") return qrg::parse_qdimacs(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto r = qrg::parse_qdimacs_with_warnings(in);
  for (const auto& w : r.warnings) std::cerr << "c warning: line " << w.line << ": " << w.message << '\n';
  return r.formula;
}

void parse_oracle(const std::string& s, qrg::AxiomConfig& c) {
  if (s == "none") {
    c.oracle = qrg::OracleKind::None;
  } else if (s == "qbce") {
    c.oracle = qrg::OracleKind::Qbce;
  } else if (s.rfind("brute", 0) == 0) {
    c.oracle = qrg::OracleKind::Brute;
    if (s.size() > 5) {
      if (s[5] != ':') throw CLI::ValidationError("--oracle", "expected brute:<budget>");
      c.brute_budget = std::stoull(s.substr(6));
    }
  } else {
    throw CLI::ValidationError("--oracle", "expected none, qbce or brute:<budget>");
  }
}

void print_stats(const qrg::SolverStats& s) {
  std::cout << "c decisions " << s.decisions << "\nc conflicts " << s.conflicts << "\nc solutions " << s.solutions
            << "\nc learned_clauses " << s.learned_clauses << "\nc learned_cubes " << s.learned_cubes
            << "\nc Q tried/success " << s.qbce_tried << '/' << s.qbce_success << "\nc B tried/success "
            << s.oracle_tried << '/' << s.oracle_success << "\nc A tried/success " << s.abs_tried << '/'
            << s.abs_success << "\nc T tried/success " << s.tt_tried << '/' << s.tt_success << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QCDCL solver with generalized and abstraction-based axioms"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve a QDIMACS instance");
  std::string file, proof_path, oracle = "none";
  bool no_qbce = false, abs = false, tt = false, stats = false, check_proof = false;
  qrg::SolverOptions opts;
  qrg::apply_env_overrides(opts.axioms);
  solve_cmd->add_option("file", file, "QDIMACS file ('-' for stdin)")->required();
  solve_cmd->add_flag("--no-qbce", no_qbce, "disable dynamic QBCE");
  solve_cmd->add_flag("--abs", abs, "enable the abstraction-based clause axiom");
  solve_cmd->add_flag("--trivial-truth", tt, "enable the trivial-truth test");
  solve_cmd->add_option("--oracle", oracle, "incomplete QBF oracle: none, qbce, brute:<budget>");
  solve_cmd->add_option("--oracle-interval-log2", opts.axioms.oracle_interval_log2);
  solve_cmd->add_option("--sat-interval-log2", opts.axioms.sat_interval_log2);
  solve_cmd->add_option("--max-clauses-for-calls", opts.axioms.max_clauses_for_calls);
  solve_cmd->add_option("--oracle-avg-disable-secs", opts.axioms.oracle_avg_disable_secs);
  solve_cmd->add_option("--sat-avg-disable-secs", opts.axioms.sat_avg_disable_secs);
  solve_cmd->add_option("--max-decisions", opts.max_decisions, "decision limit (0: none)");
  solve_cmd->add_option("--max-conflicts", opts.max_conflicts, "conflict+solution limit (0: none)");
  solve_cmd->add_option("--proof", proof_path, "write the proof trace here");
  solve_cmd->add_flag("--check-proof", check_proof, "re-check the emitted proof");
  solve_cmd->add_flag("--stats", stats, "print statistics");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate instances");
  gen_cmd->require_subcommand(1);
  std::string out_path;
  auto* phi_cmd = gen_cmd->add_subcommand("phi-t", "the phi_t family");
  int t = 1;
  phi_cmd->add_option("t", t)->required()->check(CLI::PositiveNumber);
  phi_cmd->add_option("-o,--output", out_path);
  auto* rnd_cmd = gen_cmd->add_subcommand("random", "seeded random PCNF");
  qrg::RandomSpec rnd;
  bool forall_first = false;
  rnd_cmd->add_option("--seed", rnd.seed);
  rnd_cmd->add_option("--vars", rnd.vars);
  rnd_cmd->add_option("--clauses", rnd.clauses);
  rnd_cmd->add_option("--blocks", rnd.blocks);
  rnd_cmd->add_option("--len", rnd.clause_len);
  rnd_cmd->add_option("--min-existential", rnd.min_existential);
  rnd_cmd->add_flag("--forall-first", forall_first);
  rnd_cmd->add_option("-o,--output", out_path);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run a manifest of (file, config) pairs");
  std::string manifest;
  bench_cmd->add_option("manifest", manifest)->required();
  bench_cmd->add_option("-o,--output", out_path, "CSV output (default stdout)");

  // check
  auto* check_cmd = app.add_subcommand("check", "check a proof trace");
  std::string check_proof_path, check_file, mode = "qres-abs";
  check_cmd->add_option("proof", check_proof_path)->required();
  check_cmd->add_option("qdimacs", check_file)->required();
  check_cmd->add_option("--mode", mode, "qres, qres-abs or qu-res");

  // translate
  auto* tr_cmd = app.add_subcommand("translate", "rewrite a QU-resolution proof into QRES-abs");
  tr_cmd->add_option("proof", check_proof_path)->required();
  tr_cmd->add_option("qdimacs", check_file)->required();
  tr_cmd->add_option("-o,--output", out_path);

  CLI11_PARSE(app, argc, argv);

  auto emit = [&](const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream o(out_path);
      o << text;
    }
  };

  try {
    if (*solve_cmd) {
      opts.axioms.enable_qbce = !no_qbce && opts.axioms.enable_qbce;
      opts.axioms.enable_abs = abs || opts.axioms.enable_abs;
      opts.axioms.enable_trivial_truth = tt || opts.axioms.enable_trivial_truth;
      parse_oracle(oracle, opts.axioms);
      opts.axioms.validate();
      const qrg::Pcnf f = load(file);
      const auto r = qrg::solve(f, opts);
      std::cout << "s " << qrg::to_string(r.verdict) << '\n';
      if (stats) print_stats(r.stats);
      if (r.proof) {
        if (!proof_path.empty()) {
          std::ofstream o(proof_path);
          qrg::write_proof(o, *r.proof);
        }
        if (check_proof) {
          const auto c = qrg::check(*r.proof, f, qrg::CheckMode::QResAbs);
          std::cout << "c proof " << (c ? "accepted" : "rejected at step " + std::to_string(c.step) + ": " + c.reason)
                    << " (" << r.proof->size() << " steps)\n";
        }
      } else if (!proof_path.empty()) {
        std::ofstream o(proof_path);
        o << "c no proof: verdict UNKNOWN\n";
      }
      return r.verdict == qrg::Verdict::Sat ? 10 : r.verdict == qrg::Verdict::Unsat ? 20 : 0;
    }
    if (*gen_cmd) {
      if (*phi_cmd) {
        emit(qrg::write_qdimacs(qrg::generate_phi_t(t)));
      } else {
        rnd.first = forall_first ? qrg::Quantifier::Forall : qrg::Quantifier::Exists;
        emit(qrg::write_qdimacs(qrg::generate_random(rnd)));
      }
      return 0;
    }
    if (*bench_cmd) {
      const auto rows = qrg::run_manifest(manifest);
      std::ostringstream o;
      qrg::write_csv(o, rows);
      emit(o.str());
      return 0;
    }
    if (*check_cmd || *tr_cmd) {
      const qrg::Pcnf f = load(check_file);
      std::ifstream pin(check_proof_path);
      if (!pin) throw std::runtime_error("cannot open " + check_proof_path);
      const qrg::Proof p = qrg::read_proof(pin);
      if (*tr_cmd) {
        std::ostringstream o;
        qrg::write_proof(o, qrg::translate_qu_to_abs(p, f));
        emit(o.str());
        return 0;
      }
      const auto m = qrg::parse_check_mode(mode);
      if (!m) throw std::runtime_error("unknown mode " + mode);
      const auto c = qrg::check(p, f, *m);
      if (c) {
        std::cout << "s ACCEPT " << (c.final_kind == qrg::ConstraintKind::Clause ? "UNSAT" : "SAT") << '\n';
        return 0;
      }
      std::cout << "s REJECT step " << c.step << ": " << c.reason << '\n';
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
