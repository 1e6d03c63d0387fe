#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "aasum/cli.hpp"

namespace aasum {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "aasum");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ComputeValues) {
  EXPECT_EQ(run_cli({"compute", "E", "--ks", "2,2"}).out, "1\n");
  EXPECT_EQ(run_cli({"compute", "E", "--ks", "2,3"}).out, "0\n");
  EXPECT_EQ(run_cli({"compute", "ramanujan", "--k", "1", "--j", "7"}).out, "1\n");
  EXPECT_EQ(run_cli({"compute", "ramanujan", "--k", "6", "--j", "4"}).out, "-1\n");
  EXPECT_EQ(run_cli({"compute", "gen-aa", "--a", "2", "--f", "phi", "--g", "one", "--h", "one", "--k", "2",
                     "--j", "4"})
                .out,
            "2\n");
  const auto u = run_cli({"compute", "U", "--a", "1", "--ks", "2", "--f", "phi", "--g", "one", "--w", "id"});
  EXPECT_EQ(u.code, cli::kExitOk);
  EXPECT_EQ(u.out, "5\n");
}

TEST(Cli, UsageErrors) {
  const auto bad_fn = run_cli({"compute", "fn", "--f", "phi*nosuch", "--n", "3"});
  EXPECT_EQ(bad_fn.code, cli::kExitUsage);
  EXPECT_NE(bad_fn.err.find('^'), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--suite", "nosuch"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"verify", "--format", "xml"}).code, cli::kExitUsage);
}

TEST(Cli, BudgetExit) {
  const auto r = run_cli({"compute", "U", "--a", "2", "--ks", "30,7", "--f", "phi", "--g", "one", "--budget", "10"});
  EXPECT_EQ(r.code, cli::kExitBudget);
}

TEST(Cli, VerifyWritesReport) {
  const auto path = std::filesystem::temp_directory_path() / "aasum_cli_report.json";
  const auto r = run_cli({"verify", "--suite", "cor_eq18_printed_regression,toth_s1", "--max-k", "4", "--out",
                          path.string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("suites").size(), 2u);
  EXPECT_EQ(j.at("summary").at("failed"), 0);
  std::filesystem::remove(path);
}

TEST(Cli, Bench) {
  const auto r = run_cli({"bench", "--ks", "4,6", "--a", "1", "--r", "2"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("power_weight_lattice"), std::string::npos);
}

}  // namespace
}  // namespace aasum
