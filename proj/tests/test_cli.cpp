#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(MOMAP_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(MOMAP_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Cli, VerifyPasses) {
  CliRun r = run("verify --example heisenberg --json --threads 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"status\": \"pass\""), std::string::npos);
}

TEST(Cli, ZeroToleranceExitsTwo) {
  CliRun r = run("verify --example heisenberg --tol 0 --json");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("\"status\": \"invalid-tolerance\""), std::string::npos);
  EXPECT_EQ(r.out.find("\"pass\": true"), std::string::npos);
}

TEST(Cli, BrokenJacobiLocatesTriple) {
  CliRun r = run("verify --algebra " + data("broken_jacobi.yaml") + " --json");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("(0, 1, 2)"), std::string::npos) << r.out;
}

TEST(Cli, ShippedAlgebraFilePasses) {
  EXPECT_EQ(run("verify --algebra " + data("so3.yaml")).code, 0);
}

TEST(Cli, RefusalExitsThree) {
  EXPECT_EQ(run("decompose --example virasoro").code, 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("verify --example nowhere").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --config " + data("missing.yaml")).code, 2);
  EXPECT_EQ(run("verify --tol -1").code, 2);
}

TEST(Cli, JsonIsByteIdentical) {
  CliRun a = run("cocycle --example galilean --seed 11 --json --threads 1");
  CliRun b = run("cocycle --example galilean --seed 11 --json --threads 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, WritesOutputs) {
  std::filesystem::path dir = std::string(MOMAP_TEST_TMP) + "/critical";
  std::filesystem::remove_all(dir);
  CliRun r = run("critical --example galilean --svg --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "critical.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "critical_trajectory.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "trajectory.svg"));
}
