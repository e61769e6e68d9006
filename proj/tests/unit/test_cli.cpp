#include <gtest/gtest.h>

#include <sstream>

#include "bldg/cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  json report;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = bldg::cli::dispatch(args, out, err);
  return {code, json::parse(out.str())};
}

}  // namespace

TEST(Cli, BuildingVerify) {
  const auto r = run({"building", "verify", "--geometry", "PG2:q=2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_GE(r.report["checks"]["run"].get<int>(), 3);
  EXPECT_EQ(r.report["checks"]["failed"], 0);
  EXPECT_EQ(r.report["results"]["chambers"], 21);
  EXPECT_EQ(r.report["schema_version"], bldg::cli::kSchemaVersion);
  for (const char* key : {"command", "seed", "checks", "failures", "wall_time_ms", "results"})
    EXPECT_TRUE(r.report.contains(key)) << key;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"building", "verify", "--geometry", "PG2:q=2", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"building", "verify", "--geometry", "PG7:q=2"}).code, 2);
  EXPECT_EQ(run({"field", "eval", "--field", "F7", "--x", "zz"}).code, 2);
  const auto r = run({"bt", "tree", "--field", "Q2", "--radius", "x"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.report.contains("error"));
}

TEST(Cli, ProjlineRecover) {
  const auto r = run({"projline", "recover", "--field", "F7", "--samples", "100", "--seed", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.report["results"]["failures"].empty());
  EXPECT_EQ(r.report["results"]["checked"], 100);
  EXPECT_EQ(r.report["seed"], 1);
}

TEST(Cli, FieldAndHua) {
  const auto e = run({"field", "eval", "--field", "F7", "--op", "mul", "--x", "3", "--y", "5"});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.report["results"]["value"], "1");
  const auto c = run({"field", "classify", "--field", "Laurent:q=4,prec=6"});
  EXPECT_EQ(c.report["results"]["characteristic"], 2);
  const auto h = run({"projline", "hua", "--field", "F5", "--x", "2", "--y", "3"});
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(h.report["results"]["value"], "2");  // 2*3*2 = 12 = 2
}

TEST(Cli, TreeAndMoufang) {
  const auto t = run({"bt", "tree", "--field", "Q2", "--radius", "2"});
  EXPECT_EQ(t.report["results"]["vertices"], 10);
  const auto m = run({"moufang", "check", "--geometry", "PG2:q=2", "--mu", "--commutators"});
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(m.report["results"]["orbit_counts"]["2"], 84);
  EXPECT_TRUE(m.report["results"]["mu_unique"].get<bool>());
  const auto f = run({"moufang", "filtration", "--field", "Q5", "--from", "-1", "--to", "2"});
  EXPECT_EQ(f.report["results"]["indices"].size(), 3u);
  EXPECT_EQ(f.code, 0);
}

TEST(Cli, SameSeedSameReport) {
  auto a = run({"bt", "iwasawa", "--field", "Q5", "--samples", "50", "--seed", "9"}).report;
  auto b = run({"bt", "iwasawa", "--field", "Q5", "--samples", "50", "--seed", "9"}).report;
  a.erase("wall_time_ms");
  b.erase("wall_time_ms");
  EXPECT_EQ(a, b);
}
