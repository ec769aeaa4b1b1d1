#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "tiling/report.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(TILE_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  Result r;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(Cli, Cyclo) {
  const auto r = run("cyclo 12");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 - X^2 + X^4\n");
  EXPECT_EQ(run("cyclo 0").code, 1);
}

TEST(Cli, Signature) {
  const auto r = run("sig 12 0,1,2,3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{2,4}\n");
  EXPECT_EQ(run("sig 12 0,12").code, 1);
}

TEST(Cli, Cm) {
  auto r = run("cm 0,1,2,5,6,7");
  EXPECT_EQ(r.code, 0);
  const auto j = tiling::Json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "DoesNotTile");
  EXPECT_EQ(j.at("t1"), true);
  EXPECT_EQ(j.at("t2"), false);
  EXPECT_EQ(run("cm 0,1,2,5,6,7 --strict").code, 2);
  EXPECT_EQ(run("cm 0,1,2,3 --strict").code, 0);
  r = run("cm 0,1,2,3 --mod 8");
  EXPECT_EQ(tiling::Json::parse(r.out).at("modulus"), 8);
  EXPECT_EQ(run("cm 0,2,1").code, 1);
  EXPECT_EQ(run("cm 0,a").code, 1);
}

TEST(Cli, Verify) {
  const std::string t1 = "0,17,20,23,28,29,40,48,53,59,65,68,76,88,89,95,96,101,116,124,125,131,136,137";
  auto r = run("verify 144 " + t1 + " 0,32,58,90,112,122");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "TILING\n");
  r = run("verify 4 0,1 0,1");
  EXPECT_EQ(r.out, "NOT A TILING\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run("verify 4 0,1 0,1 --strict").code, 2);
}

TEST(Cli, Fillout) {
  auto r = run("fillout 8 0,1,4,5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0,2\n0,6\n");
  r = run("fillout 144 0,32,58,90,112,122 --nonperiodic --threads 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 36);
  EXPECT_EQ(run("fillout 8 0,1,2").code, 1);
  EXPECT_EQ(run("fillout 8 1,2").code, 1);
  EXPECT_EQ(run("fillout 8 0,1 --memo-cap 10").code, 1);
}

TEST(Cli, ClassifyWritesReport) {
  const std::string path = testing::TempDir() + "tile_report_48.json";
  auto r = run("classify 48 --out " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Z_48"), std::string::npos);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto rep = tiling::parse_report_json(ss.str());
  EXPECT_EQ(rep.n, 48);
  EXPECT_EQ(rep.partitions.size(), 16U);
  EXPECT_EQ(run("classify 48 --format json").out, ss.str());
  EXPECT_EQ(run("classify 900").code, 1);
  EXPECT_EQ(run("classify 48 --skip-list /nonexistent/file").code, 1);
}

TEST(Cli, Lowerbound) {
  const auto a = run("lowerbound 7 11 --samples 3 --seed 5");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 6);
  EXPECT_EQ(run("lowerbound 7 11 --samples 3 --seed 5").out, a.out);
  EXPECT_EQ(run("lowerbound 5 11").code, 1);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("bogus").code, 1);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("cyclo 3", "TILE_THREADS=0").code, 1);
  EXPECT_EQ(run("cyclo 3", "TILE_THREADS=2").code, 0);
}

}  // namespace
