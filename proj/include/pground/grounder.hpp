#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pground/costmodel.hpp"
#include "pground/depgraph.hpp"
#include "pground/instantiate.hpp"
#include "pground/model.hpp"
#include "pground/split.hpp"
#include "pground/store.hpp"

namespace pground {

// Which of the three levels of parallelism are active.
struct Levels {
  bool components = true;
  bool rules = true;
  bool single_rule = true;

  // Parses a comma-separated subset of {c, r, s}; "" and "none" disable all.
  static Levels parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Levels&, const Levels&) = default;
};

struct SchedulerConfig {
  std::size_t workers = 1;
  Levels levels;
  Count w_seq = 50'000;
  Count w_hard = 5'000'000;
  std::size_t split_factor = 4;
  std::size_t max_ground = 10'000'000;
  // Verifies store role disjointness at every barrier (slow; for tests).
  bool check_invariants = false;

  // Throws InvalidParams unless workers >= 1, w_hard >= w_seq, split_factor >= 1.
  void validate() const;
};

struct RuleWeight {
  RuleId rule = 0;
  Count w = 0;
};

// Splits requested for a rule of weight w: 1 when w <= w_seq or single-rule
// parallelism is off, split_factor * workers otherwise.
std::size_t requested_splits(Count w, const SchedulerConfig& config);

// Splits for a literal allowing `splits` partitions of an extension with
// s_size atoms in S and delta_size atoms in ΔS. For w > w_hard the atoms that
// equal partitioning gives to the splits after the first `workers` ones are
// emitted as one-atom splits instead.
std::vector<VirtualSplit> plan_splits(Count w, std::size_t splits, std::size_t s_size, std::size_t delta_size,
                                      const SchedulerConfig& config);

// Greedy batching in input order: a batch is closed as soon as its total weight
// exceeds w_seq. Returns indices into weights.
std::vector<std::vector<std::size_t>> batch_rules(std::span<const RuleWeight> weights, Count w_seq);

struct LiteralSnapshot {
  std::size_t body_index = 0;
  Source source = Source::all;
  RelationStats stats;
};

// How one rule (or one differential pass of it) was evaluated in one iteration.
struct RuleDecision {
  RuleId rule = 0;
  ComponentId component = 0;
  std::size_t iteration = 0;  // 0 = exit-rule phase
  int pass = -1;              // body index forced to ΔS, -1 for non-recursive evaluation
  std::vector<std::size_t> order;
  std::vector<LiteralSnapshot> literals;  // in join order
  CostVector costs;
  Count weight = 0;
  std::size_t requested_splits = 1;
  std::optional<SplitChoice> choice;
  std::size_t split_count = 1;
  std::size_t split_body_index = 0;
};

struct ComponentReport {
  ComponentId id = 0;
  std::vector<std::string> predicates;
  bool constraint = false;
  double wall_ms = 0;
  std::size_t iterations = 0;
  std::size_t exit_rules = 0;
  std::size_t recursive_rules = 0;
};

struct GroundingStats {
  std::size_t workers = 1;
  Levels levels;
  double wall_ms = 0;
  std::size_t ground_rules = 0;
  std::vector<ComponentReport> components;
  std::vector<RuleDecision> decisions;
};

struct GroundingResult {
  GroundProgram program;
  GroundingStats stats;
  ExtensionStore store;
  std::vector<Component> components;
};

class WorkerPool;

// Runs the component / rule / single-rule levels of parallel instantiation
// over one program. Not reusable: run() or the per-component calls consume it.
class Grounder {
 public:
  Grounder(const Program& program, SchedulerConfig config);
  ~Grounder();
  Grounder(const Grounder&) = delete;
  Grounder& operator=(const Grounder&) = delete;

  const std::vector<Component>& components() const { return components_; }
  const ExtensionStore& store() const { return store_; }

  // Evaluates one component whose dependencies are complete: exit rules once,
  // then the semi-naive loop over the recursive rules until no new atom appears.
  ComponentReport evaluate_component(ComponentId id);

  // Evaluates every component, respecting dependencies.
  GroundingResult run();

 private:
  struct Unit;
  class ProgramSink;
  class TaskSink;

  ComponentReport evaluate_component_task(ComponentId id);
  void run_phase(const Component& component, std::vector<Unit>& units);
  void process_units(std::span<Unit* const> units);
  std::optional<Unit> prepare_unit(const Component& component, const Rule& rule, std::size_t iteration, int pass);
  void record(const Component& component, const Unit& unit);
  void check_barrier(const Component& component) const;

  const Program& program_;
  SchedulerConfig config_;
  std::vector<Component> components_;
  ExtensionStore store_;
  std::unique_ptr<ProgramSink> sink_;
  std::unique_ptr<WorkerPool> pool_;
  std::vector<ComponentReport> reports_;
  std::vector<RuleDecision> decisions_;
  std::mutex record_mutex_;
};

// Builds the ground program: for every rule, exactly the ground instances whose
// positive body atoms are derivable. Throws ResourceExhausted once more than
// config.max_ground distinct ground rules are produced.
GroundingResult ground_program(const Program& program, const SchedulerConfig& config);

}  // namespace pground
