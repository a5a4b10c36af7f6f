#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <qmcdisc/io.hpp>

using namespace qmc;

namespace {

struct CliRun {
  int rc;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(QMCDISC_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qmcdisc_cli_" + std::to_string(::getpid()) + "_" + name)).string();
}

}  // namespace

TEST(Cli, GenVdc) {
  CliRun r = run("gen --family vdc --base 2 --count 4");
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out, "x\n0/1\n1/2\n1/4\n3/4\n");
}

TEST(Cli, DiscOfVdcPrefix) {
  const std::string f = tmp("vdc.csv");
  ASSERT_EQ(run("gen --family vdc --count 4 --out " + f).rc, 0);
  CliRun r = run("disc --in " + f);
  ASSERT_EQ(r.rc, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["report"]["dstar"], "1/1");
  EXPECT_EQ(j["run_config"]["subcommand"], "disc");
  EXPECT_EQ(j["run_config"]["options"]["in"], f);
  std::filesystem::remove(f);
}

TEST(Cli, FormulaAgreesWithOracle) {
  const std::string fam = "--family nut --base 3 --sigma 2,0,1 --c 0:1=1,1:3=2 --count 40";
  json a = json::parse(run("disc --method formula " + fam).out);
  json b = json::parse(run("disc " + fam).out);
  EXPECT_EQ(a["report"]["dstar"], b["report"]["dstar"]);
  EXPECT_EQ(a["report"]["dextreme"], b["report"]["dextreme"]);
}

TEST(Cli, CheckNetHammersley) {
  const std::string f = tmp("ham.csv");
  ASSERT_EQ(run("gen --family hammersley --base 2 --m 3 --out " + f).rc, 0);
  CliRun r = run("check-net --base 2 --expect-t 0 --in " + f);
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(json::parse(r.out)["t"], 0);
  EXPECT_EQ(run("check-net --base 2 --expect-t 1 --in " + f).rc, 1);
  std::filesystem::remove(f);
}

TEST(Cli, AlphaBase3) {
  CliRun r = run("alpha --base 3 --sigma id --nmax 6");
  ASSERT_EQ(r.rc, 0);
  json j = json::parse(r.out);
  Rational e = rational_from_json(j["alpha"]["estimate"]);
  EXPECT_GE(e, Rational(1, 2));
  EXPECT_LE(e, Rational(55, 100));
  EXPECT_EQ(j["alpha"]["a"].size(), 6u);
}

TEST(Cli, RoundTripIsByteIdentical) {
  const std::string a = "gen --family gvdc --base 5 --sigma 1,3,0,4,2 --count 200";
  CliRun g1 = run(a), g2 = run(a);
  EXPECT_EQ(g1.out, g2.out);
  const std::string f = tmp("rt.csv"), o = tmp("o.json");
  ASSERT_EQ(run(a + " --out " + f).rc, 0);
  ASSERT_EQ(run("disc --in " + f + " --out " + o).rc, 0);
  const std::string first = read_file(o);
  ASSERT_EQ(run(a + " --out " + f).rc, 0);
  ASSERT_EQ(run("disc --in " + f + " --out " + o).rc, 0);
  EXPECT_EQ(first, read_file(o));
  for (const auto& p : {f, o}) std::filesystem::remove(p);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("gen --no-such-flag").rc, 2);
  EXPECT_EQ(run("gen --family vdc --base 1 --count 3").rc, 2);
  EXPECT_EQ(run("gen --family vdc --count 10 --max-points 5").rc, 3);
  EXPECT_EQ(run("alpha --base 7 --nmax 8 --budget 1000").rc, 3);
  EXPECT_EQ(run("suite --select no_such_check").rc, 2);
  EXPECT_EQ(run("suite --select eqnied --time-budget 0.000001").rc, 3);
  EXPECT_EQ(run("--help").rc, 0);
}

TEST(Cli, WalshWitness) {
  CliRun r = run("walsh --preset pascal --m 8 --witness");
  ASSERT_EQ(r.rc, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["witness"]["value"], "1/4");
  EXPECT_TRUE(j["witness"]["pass"]);
  const std::string f = tmp("c2.txt");
  atomic_write(f, "# reversal, m = 3\n001\n0x2\n100\n");
  CliRun t = run("walsh --table --c2 " + f);
  ASSERT_EQ(t.rc, 0);
  EXPECT_EQ(json::parse(t.out)["table"]["rows"].size(), 64u);
  std::filesystem::remove(f);
}

TEST(Cli, SuiteConfigFileAndOverride) {
  const std::string cfg = tmp("cfg.toml");
  atomic_write(cfg, "[suite]\nselect = [\"thm2\"]\nm-max = 4\nn-max = 16\n");
  CliRun r = run("--config " + cfg + " --seed 9 suite --n-max 32");
  ASSERT_EQ(r.rc, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["config"]["n_max"], 32);
  EXPECT_EQ(j["config"]["m_max"], 4);
  EXPECT_EQ(j["config"]["seed"], 9);
  EXPECT_TRUE(j["pass"]);
  std::filesystem::remove(cfg);
}

TEST(Cli, PsiTable) {
  CliRun r = run("psi --base 2 --sigma id --grid 4");
  ASSERT_EQ(r.rc, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "x,phi_0,phi_1,psi_plus,psi_minus,psi");
}
