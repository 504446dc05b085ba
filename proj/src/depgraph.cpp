#include "pground/depgraph.hpp"

#include <algorithm>
#include <map>

namespace pground {

DependencyGraph build_dependency_graph(const Program& program) {
  DependencyGraph graph;
  graph.nodes = program.idb_predicates;
  for (const auto& rule : program.rules) {
    for (const auto& head : rule.head) {
      if (!graph.nodes.count(head.predicate)) continue;
      for (const auto& lit : rule.body) {
        if (lit.negative || !graph.nodes.count(lit.atom.predicate)) continue;
        graph.edges.emplace(lit.atom.predicate, head.predicate);
      }
    }
  }
  return graph;
}

namespace {

// Iterative Tarjan. Emits SCCs in reverse topological order.
class Tarjan {
 public:
  explicit Tarjan(const std::map<PredicateId, std::vector<PredicateId>>& adjacency)
      : adjacency_(adjacency) {}

  std::vector<std::vector<PredicateId>> run() {
    for (const auto& [node, _] : adjacency_)
      if (!index_.count(node)) visit(node);
    return std::move(sccs_);
  }

 private:
  struct Frame {
    PredicateId node;
    std::size_t next_edge;
  };

  void visit(PredicateId root) {
    std::vector<Frame> call;
    open(root);
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& frame = call.back();
      const auto& succ = adjacency_.at(frame.node);
      if (frame.next_edge < succ.size()) {
        PredicateId w = succ[frame.next_edge++];
        if (!index_.count(w)) {
          open(w);
          call.push_back({w, 0});
        } else if (on_stack_.count(w)) {
          low_[frame.node] = std::min(low_[frame.node], index_[w]);
        }
        continue;
      }
      PredicateId v = frame.node;
      call.pop_back();
      if (!call.empty()) low_[call.back().node] = std::min(low_[call.back().node], low_[v]);
      if (low_[v] == index_[v]) {
        std::vector<PredicateId> scc;
        PredicateId w;
        do {
          w = stack_.back();
          stack_.pop_back();
          on_stack_.erase(w);
          scc.push_back(w);
        } while (w != v);
        std::sort(scc.begin(), scc.end());
        sccs_.push_back(std::move(scc));
      }
    }
  }

  void open(PredicateId v) {
    index_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    on_stack_.insert(v);
  }

  const std::map<PredicateId, std::vector<PredicateId>>& adjacency_;
  std::map<PredicateId, std::size_t> index_;
  std::map<PredicateId, std::size_t> low_;
  std::vector<PredicateId> stack_;
  std::set<PredicateId> on_stack_;
  std::vector<std::vector<PredicateId>> sccs_;
  std::size_t counter_ = 0;
};

}  // namespace

std::vector<Component> compute_components(const DependencyGraph& graph, const Program& program) {
  std::map<PredicateId, std::vector<PredicateId>> adjacency;
  for (PredicateId p : graph.nodes) adjacency[p];
  for (const auto& [p, q] : graph.edges) adjacency[p].push_back(q);
  // Head predicates of one rule must share a component.
  for (const auto& rule : program.rules) {
    for (const auto& a : rule.head) {
      if (!graph.nodes.count(a.predicate))
        throw MultiHeadSpan("rule " + std::to_string(rule.id) + " has head predicate " +
                            program.vocabulary.predicates.info(a.predicate).name +
                            " outside the dependency graph");
    }
    for (std::size_t i = 1; i < rule.head.size(); ++i) {
      PredicateId a = rule.head[0].predicate;
      PredicateId b = rule.head[i].predicate;
      if (a == b) continue;
      adjacency[a].push_back(b);
      adjacency[b].push_back(a);
    }
  }
  for (auto& [_, succ] : adjacency) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }

  auto sccs = Tarjan(adjacency).run();
  std::reverse(sccs.begin(), sccs.end());

  std::vector<Component> components;
  std::map<PredicateId, ComponentId> owner;
  for (auto& scc : sccs) {
    Component c;
    c.id = components.size();
    for (PredicateId p : scc) {
      c.predicates.insert(p);
      owner[p] = c.id;
    }
    components.push_back(std::move(c));
  }
  for (const auto& [p, q] : graph.edges) {
    if (owner[p] != owner[q]) components[owner[q]].depends_on.insert(owner[p]);
  }

  for (const auto& rule : program.rules) {
    if (rule.is_constraint()) continue;
    Component& c = components[owner.at(rule.head[0].predicate)];
    c.module_rules.push_back(rule.id);
    bool recursive = std::any_of(rule.body.begin(), rule.body.end(), [&](const Literal& l) {
      return !l.negative && c.predicates.count(l.atom.predicate);
    });
    (recursive ? c.recursive_rules : c.exit_rules).push_back(rule.id);
  }

  for (const auto& rule : program.rules) {
    if (!rule.is_constraint()) continue;
    Component c;
    c.id = components.size();
    c.is_constraint = true;
    c.module_rules.push_back(rule.id);
    c.exit_rules.push_back(rule.id);
    for (const auto& l : rule.body) {
      if (l.negative) continue;
      if (auto it = owner.find(l.atom.predicate); it != owner.end()) c.depends_on.insert(it->second);
    }
    components.push_back(std::move(c));
  }
  return components;
}

std::set<ComponentId> ready_components(const std::vector<Component>& components,
                                       const std::set<ComponentId>& done) {
  std::set<ComponentId> ready;
  for (const auto& c : components) {
    if (done.count(c.id)) continue;
    if (std::includes(done.begin(), done.end(), c.depends_on.begin(), c.depends_on.end()))
      ready.insert(c.id);
  }
  return ready;
}

std::vector<ComponentId> component_of_predicates(const std::vector<Component>& components,
                                                 std::size_t predicate_count) {
  std::vector<ComponentId> owner(predicate_count, ~ComponentId{0});
  for (const auto& c : components)
    for (PredicateId p : c.predicates) owner[p] = c.id;
  return owner;
}

std::string components_to_dot(const std::vector<Component>& components, const Vocabulary& vocabulary) {
  auto label = [&](const Component& c) {
    if (c.is_constraint) return "constraint_" + std::to_string(c.id);
    std::string name;
    for (PredicateId p : c.predicates) {
      if (!name.empty()) name += "_";
      name += vocabulary.predicates.info(p).name;
    }
    return name;
  };
  std::string out = "digraph components {\n";
  for (const auto& c : components) out += "  \"" + label(c) + "\";\n";
  for (const auto& c : components)
    for (ComponentId d : c.depends_on)
      out += "  \"" + label(components[d]) + "\" -> \"" + label(c) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace pground
