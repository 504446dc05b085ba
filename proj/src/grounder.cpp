#include "pground/grounder.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <set>
#include <tuple>
#include <stdexcept>

#include "pground/error.hpp"
#include "pground/worker_pool.hpp"

namespace pground {

Levels Levels::parse(std::string_view text) {
  Levels levels{false, false, false};
  if (text.empty() || text == "none") return levels;
  if (text == "all") return Levels{};
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (token == "c") {
      levels.components = true;
    } else if (token == "r") {
      levels.rules = true;
    } else if (token == "s") {
      levels.single_rule = true;
    } else {
      throw InvalidParams("unknown parallelism level '" + std::string(token) + "' (expected c, r or s)");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return levels;
}

std::string Levels::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(components, "c");
  add(rules, "r");
  add(single_rule, "s");
  return out.empty() ? "none" : out;
}

void SchedulerConfig::validate() const {
  if (workers < 1) throw InvalidParams("workers must be at least 1");
  if (w_hard < w_seq) throw InvalidParams("w_hard must not be smaller than w_seq");
  if (split_factor < 1) throw InvalidParams("split factor must be at least 1");
}

std::size_t requested_splits(Count w, const SchedulerConfig& config) {
  if (!config.levels.single_rule || w <= config.w_seq) return 1;
  return config.split_factor * config.workers;
}

std::vector<VirtualSplit> plan_splits(Count w, std::size_t splits, std::size_t s_size, std::size_t delta_size,
                                      const SchedulerConfig& config) {
  auto base = split_extension(splits, s_size, delta_size);
  if (w <= config.w_hard || base.size() <= config.workers) return base;
  std::vector<VirtualSplit> out(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(config.workers));
  for (std::size_t i = config.workers; i < base.size(); ++i) {
    const auto& sp = base[i];
    for (std::size_t a = sp.s_begin; a < sp.s_end; ++a) out.push_back({a, a + 1, 0, 0});
    for (std::size_t a = sp.delta_begin; a < sp.delta_end; ++a) out.push_back({s_size, s_size, a, a + 1});
  }
  return out;
}

std::vector<std::vector<std::size_t>> batch_rules(std::span<const RuleWeight> weights, Count w_seq) {
  std::vector<std::vector<std::size_t>> batches;
  std::vector<std::size_t> current;
  Count total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    current.push_back(i);
    total = saturating_add(total, weights[i].w);
    if (total > w_seq) {
      batches.push_back(std::move(current));
      current.clear();
      total = 0;
    }
  }
  if (!current.empty()) batches.push_back(std::move(current));
  return batches;
}

struct Grounder::Unit {
  RulePlan plan;
  RuleDecision decision;
  std::vector<VirtualSplit> splits;  // empty: evaluate over the whole extensions
};

// Π, sharded by hash so concurrent flushes rarely contend.
class Grounder::ProgramSink {
 public:
  explicit ProgramSink(std::size_t cap) : cap_(cap) {}

  void insert(GroundRule&& rule) {
    std::size_t h = GroundRuleHash{}(rule);
    Shard& shard = shards_[h % shards_.size()];
    bool added;
    {
      std::lock_guard lock(shard.mutex);
      added = shard.rules.insert(std::move(rule)).second;
    }
    if (added && count_.fetch_add(1, std::memory_order_relaxed) + 1 > cap_)
      throw ResourceExhausted("ground program exceeds " + std::to_string(cap_) + " rules");
  }

  GroundProgram take() {
    GroundProgram out;
    out.reserve(count_.load());
    for (auto& shard : shards_) {
      out.merge(shard.rules);
      shard.rules.clear();
    }
    return out;
  }

 private:
  struct Shard {
    std::mutex mutex;
    GroundProgram rules;
  };
  std::array<Shard, 64> shards_;
  std::atomic<std::size_t> count_{0};
  std::size_t cap_;
};

// Per-task buffer: head atoms go to NS, rules to Π, in chunks. Call flush()
// once the task is done.
class Grounder::TaskSink : public RuleSink {
 public:
  TaskSink(ExtensionStore& store, ProgramSink& program) : store_(store), program_(program) {}
  void add(GroundRule&& rule) override {
    buffer_.push_back(std::move(rule));
    if (buffer_.size() >= 1024) flush();
  }

  void flush() {
    for (auto& rule : buffer_) {
      rule.visit([&](PredicateId p, std::span<const Symbol> args) { store_.at(p).add_fresh(args); },
                 [](bool, PredicateId, std::span<const Symbol>) {});
      program_.insert(std::move(rule));
    }
    buffer_.clear();
  }

 private:
  ExtensionStore& store_;
  ProgramSink& program_;
  std::vector<GroundRule> buffer_;
};

Grounder::Grounder(const Program& program, SchedulerConfig config)
    : program_(program), config_(config), store_(program.vocabulary.predicates) {
  config_.validate();
  components_ = compute_components(build_dependency_graph(program), program);
  store_.load(program.edb);
  sink_ = std::make_unique<ProgramSink>(config_.max_ground);
  pool_ = std::make_unique<WorkerPool>(config_.workers);
}

Grounder::~Grounder() = default;

std::optional<Grounder::Unit> Grounder::prepare_unit(const Component& component, const Rule& rule,
                                                     std::size_t iteration, int pass) {
  const std::size_t n = rule.body.size();
  std::vector<Source> sources(n, Source::all);
  if (pass >= 0) {
    const auto forced = static_cast<std::size_t>(pass);
    if (store_.at(rule.body[forced].atom.predicate).delta().empty()) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& lit = rule.body[i];
      if (lit.negative || !component.predicates.count(lit.atom.predicate)) continue;
      sources[i] = i < forced ? Source::accumulated : (i == forced ? Source::delta : Source::all);
    }
  }

  std::vector<RelationStats> stats(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rule.body[i].negative) continue;
    stats[i] = collect_stats(rule.body[i].atom, store_.at(rule.body[i].atom.predicate), sources[i]);
  }

  Unit unit;
  unit.plan.rule = &rule;
  auto& d = unit.decision;
  d.rule = rule.id;
  d.component = component.id;
  d.iteration = iteration;
  d.pass = pass;
  d.order = order_body(rule, stats);

  std::vector<RelationStats> ordered;
  std::vector<Count> sizes;
  for (std::size_t body_index : d.order) {
    if (rule.body[body_index].negative) continue;
    unit.plan.positives.push_back({body_index, sources[body_index]});
    ordered.push_back(stats[body_index]);
    sizes.push_back(stats[body_index].size);
    d.literals.push_back({body_index, sources[body_index], stats[body_index]});
  }
  d.costs = body_cost(ordered);
  d.weight = d.costs.total();
  d.requested_splits = requested_splits(d.weight, config_);

  if (d.requested_splits > 1 && !sizes.empty()) {
    d.choice = select_split_literal(d.requested_splits, d.costs, sizes);
    const auto& lit = unit.plan.positives[d.choice->literal_index];
    auto [s_size, delta_size] = split_domain(store_.at(rule.body[lit.body_index].atom.predicate), lit.source);
    auto splits = plan_splits(d.weight, d.choice->allowed_splits, s_size, delta_size, config_);
    if (splits.size() > 1) {
      unit.plan.split_position = d.choice->literal_index;
      unit.splits = std::move(splits);
      d.split_body_index = lit.body_index;
    }
  }
  d.split_count = std::max<std::size_t>(1, unit.splits.size());
  return unit;
}

void Grounder::process_units(std::span<Unit* const> units) {
  TaskGroup group;
  const auto* cancel = &pool_->cancel_flag();
  for (Unit* unit : units) {
    for (const auto& split : unit->splits) {
      pool_->submit(TaskLevel::split, group, [this, unit, split, cancel] {
        TaskSink sink(store_, *sink_);
        instantiate_rule(unit->plan, store_, &split, sink, cancel);
        sink.flush();
      });
    }
  }
  std::exception_ptr error;
  try {
    for (Unit* unit : units) {
      if (!unit->splits.empty()) continue;
      TaskSink sink(store_, *sink_);
      instantiate_rule(unit->plan, store_, nullptr, sink, cancel);
      sink.flush();
    }
  } catch (...) {
    error = std::current_exception();
    pool_->cancel();
  }
  pool_->wait(group, TaskLevel::split);
  if (error) std::rethrow_exception(error);
}

void Grounder::run_phase(const Component& component, std::vector<Unit>& units) {
  if (units.empty()) return;
  std::vector<Unit*> all;
  for (auto& u : units) all.push_back(&u);

  if (config_.levels.rules && units.size() > 1) {
    std::vector<RuleWeight> weights;
    for (const auto& u : units) weights.push_back({u.decision.rule, u.decision.weight});
    TaskGroup group;
    std::exception_ptr error;
    for (const auto& batch : batch_rules(weights, config_.w_seq)) {
      std::vector<Unit*> members;
      for (std::size_t i : batch) members.push_back(all[i]);
      pool_->submit(TaskLevel::rules, group, [this, members = std::move(members)] { process_units(members); });
    }
    pool_->wait(group, TaskLevel::rules);
  } else {
    process_units(all);
  }
  for (const auto& u : units) record(component, u);
}

void Grounder::record(const Component&, const Unit& unit) {
  std::lock_guard lock(record_mutex_);
  decisions_.push_back(unit.decision);
}

void Grounder::check_barrier(const Component& component) const {
  if (!config_.check_invariants) return;
  if (!store_.roles_disjoint())
    throw std::logic_error("extension roles overlap at a barrier of component " + std::to_string(component.id));
}

ComponentReport Grounder::evaluate_component_task(ComponentId id) {
  const auto start = std::chrono::steady_clock::now();
  const Component& component = components_.at(id);
  ComponentReport report;
  report.id = id;
  report.constraint = component.is_constraint;
  report.exit_rules = component.exit_rules.size();
  report.recursive_rules = component.recursive_rules.size();
  for (PredicateId p : component.predicates)
    report.predicates.push_back(program_.vocabulary.predicates.info(p).name);

  std::vector<Unit> units;
  for (RuleId r : component.exit_rules)
    if (auto u = prepare_unit(component, program_.rules[r], 0, -1)) units.push_back(std::move(*u));
  run_phase(component, units);
  check_barrier(component);

  if (component.recursive_rules.empty()) {
    for (PredicateId p : component.predicates) store_.at(p).absorb_fresh();
  } else {
    std::size_t iteration = 0;
    bool more = false;
    do {
      for (PredicateId p : component.predicates) store_.at(p).promote_fresh();
      ++iteration;
      units.clear();
      for (RuleId r : component.recursive_rules) {
        const Rule& rule = program_.rules[r];
        for (std::size_t j = 0; j < rule.body.size(); ++j) {
          const auto& lit = rule.body[j];
          if (lit.negative || !component.predicates.count(lit.atom.predicate)) continue;
          if (auto u = prepare_unit(component, rule, iteration, static_cast<int>(j))) units.push_back(std::move(*u));
        }
      }
      run_phase(component, units);
      check_barrier(component);
      more = false;
      for (PredicateId p : component.predicates) {
        store_.at(p).merge_delta();
        more = more || !store_.at(p).fresh().empty();
      }
    } while (more);
    report.iterations = iteration;
  }
  check_barrier(component);

  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::lock_guard lock(record_mutex_);
  reports_.push_back(report);
  return report;
}

ComponentReport Grounder::evaluate_component(ComponentId id) {
  ComponentReport report;
  TaskGroup group;
  pool_->submit(TaskLevel::component, group, [&] { report = evaluate_component_task(id); });
  pool_->wait_passive(group);
  return report;
}

GroundingResult Grounder::run() {
  const auto start = std::chrono::steady_clock::now();
  if (config_.levels.components) {
    TaskGroup group;
    std::mutex scheduler_mutex;
    std::set<ComponentId> done;
    std::set<ComponentId> submitted;
    std::function<void()> submit_ready = [&] {
      for (ComponentId id : ready_components(components_, done)) {
        if (!submitted.insert(id).second) continue;
        pool_->submit(TaskLevel::component, group, [&, id] {
          evaluate_component_task(id);
          std::lock_guard lock(scheduler_mutex);
          done.insert(id);
          submit_ready();
        });
      }
    };
    {
      std::lock_guard lock(scheduler_mutex);
      submit_ready();
    }
    pool_->wait_passive(group);
  } else {
    for (const auto& c : components_) evaluate_component(c.id);
  }

  GroundingResult result;
  result.program = sink_->take();
  result.stats.workers = config_.workers;
  result.stats.levels = config_.levels;
  result.stats.ground_rules = result.program.size();
  result.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  result.stats.components = std::move(reports_);
  std::sort(result.stats.components.begin(), result.stats.components.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  result.stats.decisions = std::move(decisions_);
  std::sort(result.stats.decisions.begin(), result.stats.decisions.end(), [](const auto& a, const auto& b) {
    return std::tie(a.component, a.iteration, a.rule, a.pass) < std::tie(b.component, b.iteration, b.rule, b.pass);
  });
  result.store = std::move(store_);
  result.components = components_;
  return result;
}

GroundingResult ground_program(const Program& program, const SchedulerConfig& config) {
  return Grounder(program, config).run();
}

}  // namespace pground
