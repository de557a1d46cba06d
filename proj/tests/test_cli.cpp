#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <tuple>

#include "dtower/towers.hpp"
#include "json.hpp"

#ifndef DTOWER_CLI_PATH
#error "DTOWER_CLI_PATH must point at the dtower executable"
#endif

using namespace dtower;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

/// Runs the CLI with `args`; stderr is folded into the output when `merge` is set.
CliRun cli(const std::string& args, bool merge = false, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(DTOWER_CLI_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST(Cli, PointsLevelTwoOverF4) {
  CliRun r = cli("points --p 2 --e 1 --m 2 --j 1 --n 2 --variant F");
  ASSERT_EQ(r.status, 0);
  auto js = nlohmann::json::parse(r.out);
  ASSERT_EQ(js.size(), 6u);
  auto [got, want] = count_supersingular(TowerParams::make(2, 1, 2, 1), 2);
  EXPECT_EQ(js.size(), got);
  for (const auto& rec : js) {
    TowerParams t;
    TowerPoint pt = read_point_record(rec, t);
    EXPECT_EQ(pt.coords().size(), 2u);
    EXPECT_EQ(rec["supersingular"], true);
  }
}

TEST(Cli, PointsLevelOneCountsUnits) {
  for (auto [p, m, j, units] : {std::tuple{2, 2, 1, 3}, std::tuple{3, 2, 1, 8}, std::tuple{2, 3, 2, 7}}) {
    CliRun r = cli("points --p " + std::to_string(p) + " --m " + std::to_string(m) + " --j " + std::to_string(j) + " --n 1");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).size(), static_cast<std::size_t>(units));
  }
}

TEST(Cli, CsvHasHeader) {
  CliRun r = cli("points --p 2 --m 2 --j 1 --n 2 --format csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "variant,p,e,m,j,n,c1,c2,supersingular");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
}

TEST(Cli, ValidationErrorsExitTwo) {
  CliRun bad_j = cli("points --p 2 --m 2 --j 2 --n 1", true);
  EXPECT_EQ(bad_j.status, 2);
  EXPECT_NE(bad_j.out.find("BadRankPair"), std::string::npos);
  EXPECT_EQ(cli("verify --suite lemma_1_6").status, 2);
  EXPECT_EQ(cli("bound --p 4 --m 1").status, 2);
  EXPECT_EQ(cli("points --p 2 --m 2 --j 1 --variant Z").status, 2);
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("fibers --p 2 --m 2 --j 1 --x [0,7]").status, 2);
}

TEST(Cli, CapExceededExitsThree) {
  CliRun r = cli("points --p 5 --m 2 --j 1 --n 1", true, "DTOWER_MAX_ELEMENTS=10");
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.out.find("SizeCapExceeded"), std::string::npos);
}

TEST(Cli, VerifyEtaSuite) {
  CliRun r = cli("verify --suite lemma1_6 --p 2 --e 1 --m 2 --j 1");
  ASSERT_EQ(r.status, 0);
  auto js = nlohmann::json::parse(r.out);
  ASSERT_EQ(js["results"].size(), 1u);
  EXPECT_EQ(js["results"][0]["cases_run"], 3);
  EXPECT_TRUE(js["results"][0]["failures"].empty());
  EXPECT_EQ(js["config"]["suite"], "lemma1_6");
  EXPECT_FALSE(js["config"].contains("threads"));
}

TEST(Cli, BoundValues) {
  EXPECT_EQ(cli("bound --p 2 --m 1").out, "3/2\n");
  EXPECT_EQ(cli("bound --p 3 --m 1").out, "16/5\n");
  EXPECT_EQ(cli("bound --p 2 --m 2").out, "21/5\n");
}

TEST(Cli, FibersAndCounts) {
  CliRun r = cli("fibers --p 2 --m 2 --j 1 --x [0,1]");
  ASSERT_EQ(r.status, 0);
  auto js = nlohmann::json::parse(r.out);
  EXPECT_EQ(js["solutions"].size(), 2u);
  CliRun c = cli("ss-count --p 3 --m 2 --j 1 --n 3");
  ASSERT_EQ(c.status, 0);
  auto cj = nlohmann::json::parse(c.out);
  EXPECT_EQ(cj["enumerated"], 72);
  EXPECT_EQ(cj["formula"], 72);
}

TEST(Cli, OutputIndependentOfThreads) {
  for (const std::string args : {"points --p 3 --m 3 --j 2 --n 3", "verify --suite thm1_7 --p 3 --m 2 --j 1"}) {
    CliRun a = cli(args + " --threads 1"), b = cli(args + " --threads 4");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
  }
}
