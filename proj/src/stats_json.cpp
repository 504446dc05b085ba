#include "pground/stats_json.hpp"

namespace pground {

namespace {

nlohmann::json selectivity_json(const RelationStats& stats, const Rule& rule) {
  nlohmann::json v = nlohmann::json::object();
  for (const auto& [var, count] : stats.selectivity) v[rule.variables.at(var)] = count;
  return v;
}

nlohmann::json decision_json(const RuleDecision& d, const Program& program) {
  const Rule& rule = program.rules.at(d.rule);
  nlohmann::json out;
  out["rule"] = d.rule;
  out["text"] = render_rule(rule, program.vocabulary);
  out["component"] = d.component;
  out["iteration"] = d.iteration;
  out["pass"] = d.pass < 0 ? nlohmann::json(nullptr) : nlohmann::json(d.pass);
  out["order"] = d.order;
  auto& literals = out["literals"] = nlohmann::json::array();
  for (const auto& lit : d.literals) {
    literals.push_back({{"body_index", lit.body_index},
                        {"source", to_string(lit.source)},
                        {"size", lit.stats.size},
                        {"selectivity", selectivity_json(lit.stats, rule)}});
  }
  out["costs"] = d.costs.prefix_costs;
  out["prefix_sizes"] = d.costs.prefix_sizes;
  out["weight"] = d.weight;
  out["requested_splits"] = d.requested_splits;
  if (d.choice) {
    nlohmann::json choice;
    choice["literal_index"] = d.choice->literal_index;
    choice["allowed_splits"] = d.choice->allowed_splits;
    choice["cost"] = d.choice->cost;
    choice["shortcut"] = d.choice->shortcut_used;
    auto& table = choice["evaluated"] = nlohmann::json::array();
    for (const auto& c : d.choice->evaluated) table.push_back({{"allowed", c.allowed}, {"cost", c.cost}});
    out["split"] = std::move(choice);
  } else {
    out["split"] = nullptr;
  }
  out["split_count"] = d.split_count;
  if (d.split_count > 1) out["split_body_index"] = d.split_body_index;
  return out;
}

}  // namespace

nlohmann::json stats_to_json(const GroundingStats& stats, const Program& program) {
  nlohmann::json out;
  out["workers"] = stats.workers;
  out["levels"] = stats.levels.to_string();
  out["wall_ms"] = stats.wall_ms;
  out["ground_rules"] = stats.ground_rules;
  auto& components = out["components"] = nlohmann::json::array();
  for (const auto& c : stats.components) {
    components.push_back({{"id", c.id},
                          {"predicates", c.predicates},
                          {"constraint", c.constraint},
                          {"wall_ms", c.wall_ms},
                          {"iterations", c.iterations},
                          {"exit_rules", c.exit_rules},
                          {"recursive_rules", c.recursive_rules}});
  }
  auto& decisions = out["rules"] = nlohmann::json::array();
  for (const auto& d : stats.decisions) decisions.push_back(decision_json(d, program));
  return out;
}

}  // namespace pground
