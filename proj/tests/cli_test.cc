#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct Result {
  int exit_code = -1;
  std::string out;
};

Result Cli(const std::string& args) {
  const std::string cmd = std::string(FRLP_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Temp(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

TEST(CliFrlpTest, TableOneRow) {
  const Result r = Cli("frlp --table 1 --kmax 10");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("a1-lower,10,,2.5726"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("a1-upper,10,,3.1816"), std::string::npos) << r.out;
}

TEST(CliFrlpTest, BifactorFamily) {
  const Result r = Cli("frlp --family a2-bifactor-upper --k 10 --gamma-f 1.45");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find(",1.45000,4.0293"), std::string::npos) << r.out;
}

TEST(CliFrlpTest, CsvMatchesJson) {
  const Result csv = Cli("frlp --family a1-upper --k 4,6");
  const Result json = Cli("frlp --family a1-upper --k 4,6 --format json");
  ASSERT_EQ(json.exit_code, 0);
  const auto rows = nlohmann::json::parse(json.out);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    char bound[64];
    std::snprintf(bound, sizeof bound, ",%.5f,", row["bound"].get<double>());
    EXPECT_NE(csv.out.find(bound), std::string::npos) << csv.out;
  }
}

TEST(CliFrlpTest, UsageErrors) {
  EXPECT_EQ(Cli("frlp --family a1-lower --k 0").exit_code, 2);
  EXPECT_EQ(Cli("frlp --family nope --k 3").exit_code, 2);
  EXPECT_EQ(Cli("frlp --table 7").exit_code, 2);
  EXPECT_EQ(Cli("frlp --bogus").exit_code, 2);
  EXPECT_EQ(Cli("frlp --family a1-lower --k 3 -o /nonexistent/dir/x.csv").exit_code, 2);
}

TEST(CliFrlpTest, RoundLimitExitsOne) {
  EXPECT_EQ(Cli("frlp --family a1-lower --k 8 --max-rounds 1").exit_code, 1);
}

TEST(CliFaclocTest, RunA1ReportsIdentity) {
  const Result r =
      Cli("facloc run --alg a1 --gen sq-euclidean --n 6 --m 4 --seed 7 --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["sum_alpha"].get<double>(), j["solution"]["total"].get<double>(),
              1e-9);
}

TEST(CliFaclocTest, CsIsDeterministicForSeed) {
  const std::string path = Temp("inst.json");
  ASSERT_EQ(Cli("facloc gen --gen sq-euclidean --n 6 --m 4 --seed 3 -o " + path)
                .exit_code,
            0);
  const Result a = Cli("facloc run --alg cs --gamma 2.04011 --instance " + path + " --seed 3");
  const Result b = Cli("facloc run --alg cs --gamma 2.04011 --instance " + path + " --seed 3");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliFaclocTest, RatioWithinCertifiedBound) {
  const Result r = Cli(
      "facloc ratio --alg a3 --delta 2.0543 --trials 200 --n 8 --m 5 --seed 1 "
      "--gen sq-euclidean --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["trials"].size(), 200u);
  EXPECT_LE(j["max_ratio"].get<double>(), j["bound"].get<double>());
  EXPECT_GE(j["max_ratio"].get<double>(), 1.0);
}

TEST(CliFaclocTest, RatioUsesCachedResult) {
  const std::string path = Temp("a1_upper.json");
  ASSERT_EQ(Cli("frlp --family a1-upper --k 10 --format json -o " + path).exit_code, 0);
  const Result r = Cli(
      "facloc ratio --alg a1 --trials 20 --n 6 --m 4 --seed 2 --gen sq-euclidean "
      "--format json --frlp-result " + path);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["bound"].get<double>(), 3.18162, 1e-4);
  // An impossible bound is reported as a violation.
  EXPECT_EQ(Cli("facloc ratio --alg a1 --trials 20 --n 6 --m 4 --seed 2 "
                "--gen sq-euclidean --bound 0.5").exit_code,
            1);
}

TEST(CliFaclocTest, MonteCarlo) {
  const Result r = Cli("facloc mc --gen sq-euclidean --n 8 --m 4 --trials 2000 --seed 4");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("trials,gamma,mean_facility"), std::string::npos);
}

TEST(CliFaclocTest, IoErrors) {
  EXPECT_EQ(Cli("facloc run --alg a1 --instance /nonexistent.json").exit_code, 2);
  const std::string bad = Temp("bad.json");
  std::ofstream(bad) << "{\"costs\": [[1, 2]]}";
  EXPECT_EQ(Cli("facloc run --alg a1 --instance " + bad).exit_code, 2);
  EXPECT_EQ(Cli("facloc run --alg zz --gen metric").exit_code, 2);
}

TEST(CliBoundsTest, Values) {
  EXPECT_NE(Cli("bounds alpha --tau 3").out.find("2.04011,2.00492"), std::string::npos);
  EXPECT_NE(Cli("bounds balance --gf 1.45 --gc 3.40339").out.find("2.05430,2.16993"),
            std::string::npos);
  EXPECT_NE(Cli("bounds alpha --tau 1").out.find("1.463"), std::string::npos);
  EXPECT_EQ(Cli("bounds alpha --tau 0.5").exit_code, 2);
  EXPECT_EQ(Cli("bounds balance --gf 0.5 --gc 2").exit_code, 2);
}

TEST(CliBoundsTest, CurveAndConfigFile) {
  const Result curve = Cli("bounds curve --tau 3 --from 1.5 --to 3 --steps 4");
  EXPECT_EQ(curve.exit_code, 0);
  EXPECT_EQ(std::count(curve.out.begin(), curve.out.end(), '\n'), 5);
  const std::string cfg = Temp("cfg.ini");
  std::ofstream(cfg) << "bounds.alpha.tau=1\n";
  EXPECT_NE(Cli("--config " + cfg + " bounds alpha").out.find("1.46306"),
            std::string::npos);
  EXPECT_NE(Cli("--config " + cfg + " bounds alpha --tau 3").out.find("2.04011"),
            std::string::npos);
}

}  // namespace
