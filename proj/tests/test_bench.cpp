#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qrg/bench.hpp"
#include "qrg/generators.hpp"

using namespace qrg;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

TEST(Codes, Letters) {
  const auto dq = config_from_code("DQ");
  EXPECT_TRUE(dq.axioms.enable_qbce);
  EXPECT_FALSE(dq.axioms.enable_abs);
  EXPECT_EQ(dq.axioms.oracle, OracleKind::None);

  const auto plain = config_from_code("plain");
  EXPECT_FALSE(plain.axioms.enable_qbce);
  EXPECT_FALSE(plain.axioms.enable_abs);
  EXPECT_FALSE(plain.axioms.enable_trivial_truth);
  const auto nq = config_from_code("DQ-nQ");
  EXPECT_EQ(nq.axioms.enable_qbce, plain.axioms.enable_qbce);

  const auto all = config_from_code("DQ-BAT");
  EXPECT_TRUE(all.axioms.enable_qbce);
  EXPECT_EQ(all.axioms.oracle, OracleKind::Brute);
  EXPECT_TRUE(all.axioms.enable_abs);
  EXPECT_TRUE(all.axioms.enable_trivial_truth);

  const auto na = config_from_code("DQ-nQA");
  EXPECT_FALSE(na.axioms.enable_qbce);
  EXPECT_TRUE(na.axioms.enable_abs);

  for (const char* bad : {"", "DQX", "DQ-Z", "XQ-A", "DQ-n"}) EXPECT_THROW(config_from_code(bad), std::invalid_argument) << bad;
}

TEST(Csv, HeaderAndRowAgree) {
  const auto header = split(csv_header(), ',');
  EXPECT_EQ(header.front(), "instance");
  EXPECT_EQ(header.back(), "wall_ms");
  const auto row = run_cell("phi_3", generate_phi_t(3), "plain", config_from_code("plain"));
  const auto cells = split(csv_row(row), ',');
  ASSERT_EQ(cells.size(), header.size());
  EXPECT_EQ(cells[0], "phi_3");
  EXPECT_EQ(cells[1], "plain");
  EXPECT_EQ(cells[2], "UNSAT");
  EXPECT_EQ(cells[3], std::to_string(row.result.stats.decisions));
  EXPECT_EQ(cells[15], std::to_string(row.result.proof->size()));
}

TEST(Csv, AblationOverPhiFamily) {
  std::vector<BenchInstance> inst;
  for (int t = 1; t <= 5; ++t) inst.push_back({"phi_" + std::to_string(t), generate_phi_t(t)});
  std::vector<BenchConfig> cfg{{"plain", config_from_code("plain")}, {"DQ-nQA", config_from_code("DQ-nQA")}};
  for (auto& c : cfg) c.options.axioms.sat_interval_log2 = 0;
  const auto rows = run_ablation(inst, cfg);
  ASSERT_EQ(rows.size(), 10u);
  std::ostringstream out;
  write_csv(out, rows);
  const auto lines = split(out.str(), '\n');
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], csv_header());
  for (const auto& r : rows) {
    EXPECT_EQ(r.result.verdict, Verdict::Unsat);
    const auto& s = r.result.stats;
    EXPECT_GE(s.qbce_tried, s.qbce_success);
    EXPECT_GE(s.oracle_tried, s.oracle_success);
    EXPECT_GE(s.abs_tried, s.abs_success);
    EXPECT_GE(s.tt_tried, s.tt_success);
    if (r.config == "plain") {
      EXPECT_EQ(s.abs_tried, 0u);
    }
  }
}

TEST(Manifest, ParsesAndRuns) {
  const std::string path = std::string(QRG_TEST_DATA) + "/smoke.manifest";
  const auto entries = read_manifest(path);
  ASSERT_EQ(entries.size(), 4u);
  EXPECT_EQ(entries[1].config, "DQ-nQA");
  const auto rows = run_manifest(path);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].instance, "phi_1.qdimacs");
  EXPECT_EQ(rows[0].result.verdict, Verdict::Unsat);
  EXPECT_EQ(rows[1].result.verdict, Verdict::Unsat);
  EXPECT_EQ(rows[2].result.verdict, Verdict::Sat);
  EXPECT_EQ(rows[3].result.verdict, Verdict::Sat);
}

TEST(Manifest, Errors) {
  const std::string dir = ::testing::TempDir();
  const std::string bad = dir + "/bad.manifest";
  std::ofstream(bad) << "only_one_field\n";
  EXPECT_THROW(read_manifest(bad), std::runtime_error);
  EXPECT_THROW(read_manifest(dir + "/missing.manifest"), std::runtime_error);
  const std::string gone = dir + "/gone.manifest";
  std::ofstream(gone) << "nowhere.qdimacs plain\n";
  EXPECT_THROW(run_manifest(gone), std::runtime_error);
}
