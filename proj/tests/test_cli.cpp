#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "gu22cli/run.hpp"
#include "json.hpp"

using namespace gu22::cli;

TEST(Cli, ValidationRejectsBadConfigs) {
  RunConfig c;
  c.p = 9;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.p = 2;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.precision = 3;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.link_case = "nonneutral";
  c.link_type = 5;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.rings = "zp";
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.threads = 0;
  EXPECT_THROW(c.validate(), UsageError);
  EXPECT_THROW(run("frobnicate", RunConfig{}), UsageError);
  EXPECT_NO_THROW(RunConfig{}.validate());
}

TEST(Cli, KottwitzReport) {
  RunConfig c;
  c.p = 5;
  auto r = run("kottwitz", c);
  EXPECT_EQ(r.exit_code(), 0);
  auto j = nlohmann::json::parse(render_json(r));
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["frame"]["p"], 5);
  EXPECT_EQ(j["frame"]["pi_squared"], 5);
  EXPECT_EQ(j["checks"][0]["id"], "kottwitz.b0");
  EXPECT_EQ(j["checks"][0]["actual"], "(1,0)");
  EXPECT_EQ(j["checks"][1]["actual"], "(1,1)");
  EXPECT_FALSE(j["checks"][0].contains("runtime_ms"));
  EXPECT_EQ(j["summary"]["fail"], 0);
}

TEST(Cli, ReportsAreIdenticalAcrossThreads) {
  RunConfig a, b;
  b.threads = 3;
  for (const char* sub : {"local-model", "dl-strata"}) EXPECT_EQ(render(run(sub, a)), render(run(sub, b))) << sub;
  a.link_case = b.link_case = "nonneutral";
  EXPECT_EQ(render(run("links", a)), render(run("links", b)));
}

TEST(Cli, SameSeedSameReport) {
  RunConfig a, b;
  b.seed = 99;
  a.only = b.only = {"clifford.star-involution", "clifford.adjoint", "witt.frobenius"};
  EXPECT_EQ(render(run("clifford", a)), render(run("clifford", a)));
  auto rb = run("clifford", b);
  EXPECT_EQ(rb.checks.size(), 3u);
  EXPECT_EQ(rb.failures(), 0);
}

TEST(Cli, CsvIsFlatProjection) {
  RunConfig c;
  c.format = Format::Csv;
  auto r = run("kottwitz", c);
  auto csv = render(r);
  long lines = std::count(csv.begin(), csv.end(), '\n');
  EXPECT_EQ(lines, static_cast<long>(r.checks.size()) + 1);
  EXPECT_NE(csv.find("\"(1,0)\""), std::string::npos);
  c.timings = true;
  auto timed = render(run("kottwitz", c));
  EXPECT_NE(timed.find(",runtime_ms"), std::string::npos);
}

TEST(Cli, NonNeutralLinkTable) {
  RunConfig c;
  c.link_case = "nonneutral";
  auto r = run("links", c);
  EXPECT_EQ(r.exit_code(), 0);
  bool found = false;
  for (auto& ch : r.checks)
    if (ch.id == "links.nonneutral.incidence") found = ch.actual == "30";
  EXPECT_TRUE(found);
}

TEST(Cli, CeilingSkipsInsteadOfFailing) {
  RunConfig c;
  c.ceiling = 10;
  auto r = run("local-model", c);
  EXPECT_EQ(r.checks.front().status, Status::Skipped);
}

TEST(Cli, SubspaceCache) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "gu22-cache-test";
  fs::remove_all(dir);
  ::setenv("GU22_CACHE_DIR", dir.c_str(), 1);
  int calls = 0;
  auto compute = [&] {
    ++calls;
    const auto& F = gu22::FField::get(3, 1);
    return std::vector<gu22::Subspace>{gu22::make_subspace(F, {{1, 2, 0}}), gu22::make_subspace(F, {{0, 0, 1}})};
  };
  auto a = cached_subspaces("test-key", compute);
  auto b = cached_subspaces("test-key", compute);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(fs::exists(dir / cache_file_name("test-key")));
  EXPECT_NE(cache_file_name("test-key"), cache_file_name("test-key2"));
  cached_subspaces("test-key2", compute);
  EXPECT_EQ(calls, 2);
  ::unsetenv("GU22_CACHE_DIR");
  fs::remove_all(dir);
}
