#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pground/model.hpp"

namespace pground {

using ComponentId = std::size_t;

// Graph over IDB predicates: (p, q) when p occurs in a positive body literal of
// a rule whose head mentions q.
struct DependencyGraph {
  std::set<PredicateId> nodes;
  std::set<std::pair<PredicateId, PredicateId>> edges;
};

struct Component {
  ComponentId id = 0;
  std::set<PredicateId> predicates;  // empty for a constraint component
  bool is_constraint = false;
  std::vector<RuleId> module_rules;
  std::vector<RuleId> exit_rules;
  std::vector<RuleId> recursive_rules;
  std::set<ComponentId> depends_on;
};

DependencyGraph build_dependency_graph(const Program& program);

// SCCs of the graph (with the head predicates of each disjunctive rule merged),
// numbered in a topological order of the condensation, followed by one
// component per constraint. Throws MultiHeadSpan if a rule's head mixes IDB
// predicates with predicates that cannot be placed in one component.
std::vector<Component> compute_components(const DependencyGraph& graph, const Program& program);

// Components not yet done whose dependencies are all done.
std::set<ComponentId> ready_components(const std::vector<Component>& components,
                                       const std::set<ComponentId>& done);

// Position of each predicate's component (only for IDB predicates).
std::vector<ComponentId> component_of_predicates(const std::vector<Component>& components,
                                                 std::size_t predicate_count);

// DOT rendering of the component condensation.
std::string components_to_dot(const std::vector<Component>& components, const Vocabulary& vocabulary);

}  // namespace pground
