#include "pground/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "pground/error.hpp"
#include "pground/parser.hpp"

namespace pground {

double mean(std::span<const double> values) {
  if (values.empty()) return 0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
  if (values.empty()) return 0;
  const double m = mean(values);
  double sq = 0;
  for (double v : values) sq += (v - m) * (v - m);
  return std::sqrt(sq / static_cast<double>(values.size()));
}

double efficiency(double serial, double parallel, std::size_t workers) {
  if (workers == 0 || parallel <= 0) throw InvalidParams("efficiency needs workers > 0 and a positive time");
  return serial / (static_cast<double>(workers) * parallel);
}

namespace {

InstanceParams with_size(const BenchConfig& config, std::size_t size) {
  InstanceParams p = config.params;
  if (config.problem == "reach") {
    p.tree_levels = size;
  } else {
    p.n = size;
  }
  return p;
}

std::size_t size_of(const BenchConfig& config) {
  return config.problem == "reach" ? config.params.tree_levels : config.params.n;
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  if (config.runs == 0) throw InvalidParams("runs must be at least 1");
  if (config.threads.empty()) throw InvalidParams("threads list is empty");
  std::vector<std::size_t> sizes = config.sizes;
  if (sizes.empty()) sizes.push_back(size_of(config));

  BenchReport report;
  report.problem = config.problem;
  report.params = config.params;
  report.runs = config.runs;
  report.levels = config.scheduler.levels;

  for (std::size_t size : sizes) {
    const Program program = parse_program(generate_instance(config.problem, with_size(config, size)));

    std::optional<std::string> reference;
    for (std::size_t threads : config.threads) {
      SchedulerConfig sc = config.scheduler;
      sc.workers = threads;
      auto result = ground_program(program, sc);
      auto text = render_ground_program(result.program, program.vocabulary);
      if (!reference) {
        reference = std::move(text);
      } else if (*reference != text) {
        throw std::runtime_error("ground output differs between thread counts for " + config.problem +
                                 " size " + std::to_string(size));
      }
    }

    std::optional<double> serial;
    const std::size_t first = report.entries.size();
    for (std::size_t threads : config.threads) {
      SchedulerConfig sc = config.scheduler;
      sc.workers = threads;
      BenchEntry entry;
      entry.size = size;
      entry.threads = threads;
      for (std::size_t r = 0; r < config.runs; ++r) {
        const auto start = std::chrono::steady_clock::now();
        auto result = ground_program(program, sc);
        entry.times_ms.push_back(
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
        entry.ground_rules = result.program.size();
      }
      entry.mean_ms = mean(entry.times_ms);
      entry.stddev_ms = stddev(entry.times_ms);
      if (threads == 1) serial = entry.mean_ms;
      report.entries.push_back(std::move(entry));
    }
    if (serial) {
      for (std::size_t i = first; i < report.entries.size(); ++i) {
        auto& e = report.entries[i];
        if (e.mean_ms > 0) e.efficiency = efficiency(*serial, e.mean_ms, e.threads);
      }
    }
  }
  return report;
}

nlohmann::json bench_to_json(const BenchReport& report) {
  nlohmann::json out;
  out["problem"] = report.problem;
  out["params"] = {{"n", report.params.n},
                   {"tree_levels", report.params.tree_levels},
                   {"siblings", report.params.siblings},
                   {"seed", report.params.seed}};
  out["runs"] = report.runs;
  out["levels"] = report.levels.to_string();
  auto& entries = out["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"size", e.size},
                       {"threads", e.threads},
                       {"times_ms", e.times_ms},
                       {"mean_ms", e.mean_ms},
                       {"stddev_ms", e.stddev_ms},
                       {"efficiency", e.efficiency ? nlohmann::json(*e.efficiency) : nlohmann::json(nullptr)},
                       {"ground_rules", e.ground_rules}});
  }
  return out;
}

std::string render_bench_table(const BenchReport& report) {
  std::string out = report.problem + " (levels " + report.levels.to_string() + ", " +
                    std::to_string(report.runs) + " runs)\n";
  out += "    size  threads     mean_ms   stddev_ms  efficiency  ground_rules\n";
  char line[160];
  for (const auto& e : report.entries) {
    char eff[32] = "-";
    if (e.efficiency) std::snprintf(eff, sizeof eff, "%.3f", *e.efficiency);
    std::snprintf(line, sizeof line, "%8zu %8zu %11.3f %11.3f %11s %13zu\n", e.size, e.threads, e.mean_ms,
                  e.stddev_ms, eff, e.ground_rules);
    out += line;
  }
  return out;
}

}  // namespace pground
