#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>

#include "aasum/errors.hpp"
#include "aasum/verifier.hpp"

namespace aasum {
namespace {

std::vector<std::string> manifest() {
  std::ifstream in(std::string(AASUM_TEST_DATA_DIR) + "/suite_manifest.txt");
  std::vector<std::string> ids;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

TEST(Verifier, CatalogMatchesManifest) {
  std::vector<std::string> ids;
  for (const auto& s : suite_catalog()) ids.push_back(s.id);
  EXPECT_EQ(ids, manifest());
  EXPECT_GE(ids.size(), 20u);
  EXPECT_EQ(resolve_suites({"all"}), ids);
}

TEST(Verifier, SelectionErrors) {
  EXPECT_THROW(resolve_suites({}), ConfigError);
  EXPECT_THROW(resolve_suites({"nosuch"}), ConfigError);
  VerifyConfig cfg;
  cfg.suites = {};
  EXPECT_THROW(run_all(cfg), ConfigError);
  cfg.suites = {"lemma_pool"};
  cfg.workers = 0;
  EXPECT_THROW(run_all(cfg), ConfigError);
}

TEST(Verifier, PrintedRegressionWitness) {
  VerifyConfig cfg;
  const auto cases = run_suite("cor_eq18_printed_regression", cfg);
  ASSERT_FALSE(cases.empty());
  bool saw_witness = false;
  for (const auto& c : cases) {
    EXPECT_EQ(c.status, CaseStatus::pass);
    if (c.lhs == "3/1" && c.rhs == "5/2") saw_witness = true;
  }
  EXPECT_TRUE(saw_witness);
}

TEST(Verifier, SmallSuitesPassAndAreDeterministic) {
  VerifyConfig cfg;
  cfg.suites = {"e_integrality", "toth_s1", "lemma_pool", "cor_eq18_printed_regression"};
  cfg.max_k = 6;
  const auto a = run_all(cfg);
  cfg.workers = 3;
  const auto b = run_all(cfg);
  EXPECT_EQ(a.failures(), 0u);
  ASSERT_EQ(a.cases.size(), b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    EXPECT_EQ(a.cases[i].params, b.cases[i].params);
    EXPECT_EQ(a.cases[i].lhs, b.cases[i].lhs);
    EXPECT_EQ(a.cases[i].rhs, b.cases[i].rhs);
    EXPECT_EQ(a.cases[i].status, b.cases[i].status);
  }
}

TEST(Verifier, EIntegralityMinimumIsZero) {
  VerifyConfig cfg;
  cfg.max_k = 10;
  const auto cases = run_suite("e_integrality", cfg);
  bool saw_zero = false;
  for (const auto& c : cases) {
    EXPECT_NE(c.status, CaseStatus::fail);
    if (c.lhs == "0/1") saw_zero = true;
  }
  EXPECT_TRUE(saw_zero);
}

TEST(Verifier, BudgetSkipsInsteadOfFailing) {
  VerifyConfig cfg;
  cfg.suites = {"thm3_eq15"};
  cfg.budget = 10;
  cfg.max_k = 4;
  const auto r = run_all(cfg);
  EXPECT_EQ(r.failures(), 0u);
  EXPECT_GT(r.summaries.at(0).skipped, 0u);
}

TEST(Verifier, JsonReportShape) {
  VerifyConfig cfg;
  cfg.suites = {"toth_s1"};
  cfg.max_k = 4;
  const auto r = run_all(cfg);
  const auto j = nlohmann::json::parse(render_report(r, ReportFormat::json));
  EXPECT_EQ(j.at("schema"), kReportSchema);
  EXPECT_TRUE(j.contains("timestamp"));
  EXPECT_EQ(j.at("summary").at("failed"), 0);
  const auto& suite = j.at("suites").at(0);
  EXPECT_EQ(suite.at("id"), "toth_s1");
  const auto& c = suite.at("cases").at(0);
  for (const char* key : {"params", "lhs", "rhs", "error", "pass", "extras"}) {
    EXPECT_TRUE(c.contains(key)) << key;
  }
  // Exact values are always written as p/q.
  EXPECT_NE(c.at("lhs").get<std::string>().find('/'), std::string::npos);
  const std::string csv = render_report(r, ReportFormat::csv);
  EXPECT_EQ(csv.rfind("suite,", 0), 0u);
  EXPECT_NE(render_report(r, ReportFormat::plain).find("toth_s1"), std::string::npos);
}

TEST(Verifier, SummaryCounts) {
  std::vector<CaseResult> cases(4);
  for (auto& c : cases) c.suite = "x";
  cases[1].status = CaseStatus::fail;
  cases[1].error = 0.5;
  cases[2].status = CaseStatus::skipped;
  cases[3].status = CaseStatus::recorded;
  cases[3].error = 9.0;
  const auto s = summarize("x", cases);
  EXPECT_EQ(s.cases, 4u);
  EXPECT_EQ(s.passed, 1u);
  EXPECT_EQ(s.failed, 1u);
  EXPECT_EQ(s.skipped, 1u);
  EXPECT_EQ(s.recorded, 1u);
  EXPECT_EQ(s.max_error, 0.5);
}

}  // namespace
}  // namespace aasum
