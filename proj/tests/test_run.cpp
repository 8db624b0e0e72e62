#include <gtest/gtest.h>

#include "cliffq/run.hpp"

using namespace cliffq;

namespace {

RunConfig config(int m, int n, int k, int l, BackendChoice b = BackendChoice::exact) {
  RunConfig c;
  c.point = {m, n, k, l};
  c.backend = b;
  return c;
}

const CheckEntry* find_entry(const VerificationReport& r, const std::string& relation) {
  for (const auto& e : r.entries())
    if (e.relation == relation) return &e;
  return nullptr;
}

}  // namespace

TEST(Validate, UsageErrors) {
  EXPECT_THROW(validate(config(1, 1, 4, 2)), UsageError);
  EXPECT_THROW(validate(config(1, 1, 1, 1)), UsageError);
  EXPECT_THROW(validate(config(0, 0, 3, 1)), UsageError);
  EXPECT_THROW(validate(config(-1, 2, 3, 1)), UsageError);
  RunConfig c = config(1, 1, 3, 1);
  c.tolerance = 0;
  EXPECT_THROW(validate(c), UsageError);
  c = config(1, 1, 3, 1);
  c.suites = parse_suites("clifford,bogus");
  EXPECT_THROW(validate(c), UsageError);
  c.suites = parse_suites("");
  EXPECT_THROW(validate(c), UsageError);
  EXPECT_NO_THROW(validate(config(1, 1, 3, 2)));
  EXPECT_THROW(parse_backend("gpu"), UsageError);
}

TEST(Parse, SuitesAndGrid) {
  EXPECT_EQ(parse_suites("all").size(), all_suites().size());
  EXPECT_EQ(parse_suites("gram, sl"), (std::set<std::string>{"gram", "sl"}));
  const auto g = parse_grid("1,1,2,1; (2,1,3,1);\n");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[1], (PointParams{2, 1, 3, 1}));
  EXPECT_TRUE(parse_grid("").empty());
  EXPECT_THROW(parse_grid("1,2,3"), UsageError);
  EXPECT_THROW(parse_grid("1,2,3,4,5"), UsageError);
}

TEST(Run, AllSuitesPassBothBackends) {
  for (auto [m, n, k, l] : {std::array{1, 1, 2, 1}, {2, 1, 3, 1}, {1, 1, 5, 2}, {0, 2, 2, 1}}) {
    const RunResult r = run(config(m, n, k, l, BackendChoice::both));
    EXPECT_TRUE(r.ok()) << m << n << k << l << (r.report.failed() ? " " + r.report.failures().front().id() : "");
    std::set<std::string> backends;
    for (const auto& e : r.report.entries()) backends.insert(e.backend);
    EXPECT_TRUE(backends.count("exact"));
    EXPECT_TRUE(backends.count("float"));
    EXPECT_EQ(backends.count("float-ladder") > 0, l == 1 && m + n >= 2);
  }
}

TEST(Run, DichotomyAtBothKindsOfRoot) {
  const RunResult a = run(config(2, 1, 3, 1));
  const auto* da = find_entry(a.report, "gram.dichotomy");
  ASSERT_NE(da, nullptr);
  EXPECT_TRUE(da->passed());
  EXPECT_EQ(da->note, "positive definite");
  EXPECT_EQ(a.extras["positivity"]["positive_definite"], true);

  const RunResult b = run(config(1, 0, 5, 2));
  const auto* db = find_entry(b.report, "gram.dichotomy");
  ASSERT_NE(db, nullptr);
  EXPECT_TRUE(db->passed());
  EXPECT_EQ(db->note, "indefinite, first negative |3>");
  EXPECT_EQ(b.extras["decomposition"]["count"], 5);
}

TEST(Run, SuiteSelection) {
  RunConfig c = config(1, 1, 3, 1);
  c.suites = parse_suites("gram");
  const RunResult r = run(c);
  for (const auto& e : r.report.entries()) {
    EXPECT_EQ(e.relation.rfind("gram.", 0), 0u) << e.relation;
    EXPECT_EQ(e.suite, "gram") << e.relation;
  }
}

TEST(Sweep, UsageErrorRowDoesNotStopTheSweep) {
  const auto rows = sweep(parse_grid("1,1,2,1; 1,1,4,2; 1,0,4,3"), config(1, 1, 2, 1), 1);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].status, "pass");
  EXPECT_EQ(rows[1].status, "usage_error");
  EXPECT_NE(rows[1].message.find("inadmissible"), std::string::npos);
  EXPECT_EQ(rows[2].status, "pass");
  EXPECT_TRUE(sweep_ok(rows));
  const json j = sweep_json(rows);
  EXPECT_EQ(j["summary"]["usage_error"], 1);
  EXPECT_EQ(j["summary"]["pass"], 2);
  EXPECT_EQ(j["rows"][1]["status"], "usage_error");
}

TEST(Sweep, EmptyGrid) {
  const auto rows = sweep({}, config(1, 1, 2, 1), 4);
  EXPECT_TRUE(rows.empty());
  EXPECT_TRUE(sweep_ok(rows));
  EXPECT_EQ(sweep_json(rows)["summary"]["points"], 0);
  EXPECT_EQ(sweep_csv(rows), "m,n,k,l,status,passed,failed,error\n");
}

TEST(Sweep, ParallelMatchesSerial) {
  const auto grid = parse_grid("1,1,2,1; 2,1,3,1; 1,2,3,1; 2,2,2,1; 1,1,5,2; 1,0,4,3; 0,2,2,1; 1,1,4,2");
  RunConfig base = config(1, 1, 2, 1, BackendChoice::both);
  const std::string serial = sweep_json(sweep(grid, base, 1)).dump();
  const std::string parallel = sweep_json(sweep(grid, base, 4)).dump();
  EXPECT_EQ(serial, parallel);
  EXPECT_EQ(sweep_csv(sweep(grid, base, 1)), sweep_csv(sweep(grid, base, 3)));
}
