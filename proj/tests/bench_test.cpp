#include <gtest/gtest.h>

#include "pground/bench.hpp"
#include "pground/error.hpp"

namespace pground {
namespace {

TEST(BenchMath, MeanAndStddev) {
  std::vector<double> same{4, 4, 4, 4, 4};
  EXPECT_DOUBLE_EQ(mean(same), 4);
  EXPECT_DOUBLE_EQ(stddev(same), 0);
  std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(mean(v), 5);
  EXPECT_DOUBLE_EQ(stddev(v), 2);
}

TEST(BenchMath, Efficiency) {
  EXPECT_DOUBLE_EQ(efficiency(10, 10, 1), 1.0);
  EXPECT_DOUBLE_EQ(efficiency(8, 2.5, 4), 0.8);
  EXPECT_THROW(efficiency(1, 0, 1), InvalidParams);
}

TEST(RunBench, ReachGrid) {
  BenchConfig c;
  c.problem = "reach";
  c.params.siblings = 2;
  c.sizes = {1, 8};
  c.threads = {1, 4};
  c.runs = 5;
  auto report = run_bench(c);
  ASSERT_EQ(report.entries.size(), 4u);
  for (const auto& e : report.entries) {
    EXPECT_EQ(e.times_ms.size(), 5u);
    ASSERT_TRUE(e.efficiency.has_value());
    if (e.threads == 1) EXPECT_DOUBLE_EQ(*e.efficiency, 1.0);
  }
  EXPECT_EQ(report.entries[0].size, 1u);
  EXPECT_EQ(report.entries[0].ground_rules, 0u);
  EXPECT_EQ(report.entries[3].size, 8u);
  EXPECT_GT(report.entries[3].ground_rules, 0u);

  auto json = bench_to_json(report);
  EXPECT_EQ(json["entries"].size(), 4u);
  EXPECT_EQ(json["runs"], 5);
  EXPECT_NE(render_bench_table(report).find("efficiency"), std::string::npos);
}

TEST(RunBench, NoSerialRunMeansNoEfficiency) {
  BenchConfig c;
  c.problem = "threecol";
  c.params.n = 3;
  c.threads = {2};
  c.runs = 2;
  auto report = run_bench(c);
  ASSERT_EQ(report.entries.size(), 1u);
  EXPECT_FALSE(report.entries[0].efficiency.has_value());
}

TEST(RunBench, InvalidParams) {
  BenchConfig c;
  c.problem = "reach";
  c.runs = 0;
  EXPECT_THROW(run_bench(c), InvalidParams);
}

}  // namespace
}  // namespace pground
