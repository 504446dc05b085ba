#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pground/generators.hpp"
#include "pground/grounder.hpp"

namespace pground {

double mean(std::span<const double> values);
// Population standard deviation.
double stddev(std::span<const double> values);
// T_serial / (workers * T_parallel).
double efficiency(double serial, double parallel, std::size_t workers);

struct BenchConfig {
  std::string problem;
  InstanceParams params;
  // Instance sizes to run: tree levels for reach, n otherwise. Empty: params as given.
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> threads{1};
  std::size_t runs = 5;
  SchedulerConfig scheduler;
};

struct BenchEntry {
  std::size_t size = 0;
  std::size_t threads = 1;
  std::vector<double> times_ms;
  double mean_ms = 0;
  double stddev_ms = 0;
  std::optional<double> efficiency;  // needs a 1-thread entry of the same size
  std::size_t ground_rules = 0;
};

struct BenchReport {
  std::string problem;
  InstanceParams params;
  std::size_t runs = 0;
  Levels levels;
  std::vector<BenchEntry> entries;
};

// Grounds every (size, threads) configuration once and throws std::runtime_error
// unless all outputs of one size are identical; then times `runs` groundings each.
BenchReport run_bench(const BenchConfig& config);

nlohmann::json bench_to_json(const BenchReport& report);
std::string render_bench_table(const BenchReport& report);

}  // namespace pground
