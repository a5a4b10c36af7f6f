#include <gtest/gtest.h>

#include <qmcdisc/harness.hpp>

using namespace qmc;

namespace {
SuiteConfig small() {
  SuiteConfig c;
  c.m_max = 5;
  c.n_max = 64;
  c.samples = 10;
  return c;
}
}  // namespace

TEST(Suite, EmptySelection) {
  SuiteConfig c = small();
  c.select = {};
  SuiteReport r = run_suite(c);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.to_json()["checks"].empty());
}

TEST(Suite, UnknownCheckIsRejected) {
  SuiteConfig c = small();
  c.select = {"no_such_check"};
  EXPECT_THROW(run_suite(c), InvalidInput);
}

TEST(Suite, Thm2Only) {
  SuiteConfig c = small();
  c.select = {"thm2"};
  SuiteReport r = run_suite(c);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].name, "thm2");
  EXPECT_TRUE(r.pass());
  json j = r.to_json();
  ASSERT_EQ(j["checks"][0]["instances"].size(), 5u);
  for (const auto& inst : j["checks"][0]["instances"])
    for (const char* key : {"check", "params", "computed", "bound", "pass"}) EXPECT_TRUE(inst.contains(key)) << key;
  EXPECT_EQ(j["config"]["seed"], c.seed);
}

TEST(Suite, AllChecksPassAtSmallCaps) {
  SuiteReport r = run_suite(small());
  EXPECT_EQ(r.checks.size(), suite_check_names().size());
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.pass()) << c.name;
    EXPECT_FALSE(c.skipped) << c.name;
    EXPECT_FALSE(c.instances.empty()) << c.name;
  }
  // Catalog order is preserved.
  for (std::size_t i = 0; i < r.checks.size(); ++i) EXPECT_EQ(r.checks[i].name, suite_check_names()[i]);
}

TEST(Suite, Deterministic) {
  SuiteConfig c = small();
  c.select = {"eqlarpil", "worst_sequence", "thmnew"};
  c.m_max = 6;
  EXPECT_EQ(run_suite(c).to_json().dump(), run_suite(c).to_json().dump());
  SuiteConfig d = c;
  d.seed = c.seed + 1;
  EXPECT_NE(run_suite(c).to_json().dump(), run_suite(d).to_json().dump());
}

TEST(Suite, TimeBudgetProducesSkipMarkers) {
  SuiteConfig c = small();
  c.select = {"eqnied"};
  c.time_budget_s = 1e-9;
  SuiteReport r = run_suite(c);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_TRUE(r.checks[0].skipped);
  EXPECT_TRUE(r.any_skipped());
  EXPECT_TRUE(r.to_json()["checks"][0].contains("skipped"));
}

TEST(Suite, ReportOnlyConstants) {
  SuiteConfig c = small();
  c.select = {"thmup02seq", "lowbd_sob", "all_ones", "lowbd_family"};
  SuiteReport r = run_suite(c);
  json j = r.to_json();
  EXPECT_EQ(j["checks"][0]["notes"]["constant"], "0.1734");
  EXPECT_EQ(j["checks"][1]["notes"]["constant"], "0.0867");
  EXPECT_EQ(j["checks"][2]["notes"]["window"]["lower"], "0.2885");
  EXPECT_EQ(j["checks"][2]["notes"]["window"]["upper"], "0.3265");
  EXPECT_EQ(j["checks"][3]["notes"]["rho_traces_report_only"][0]["constant"], "0.2276");
  EXPECT_EQ(j["checks"][3]["notes"]["rho_traces_report_only"][1]["constant"], "0.2404");
  EXPECT_EQ(j["checks"][0]["kind"], "report-only");
  EXPECT_EQ(j["checks"][3]["kind"], "assert");
}
