#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <vector>

#include "pground/model.hpp"
#include "pground/split.hpp"
#include "pground/store.hpp"

namespace pground {

struct LiteralPlan {
  std::size_t body_index = 0;
  Source source = Source::all;
};

// Evaluation plan of one rule (or one differential pass of a recursive rule):
// the positive body literals in join order, each with the part of its
// extension it ranges over.
struct RulePlan {
  const Rule* rule = nullptr;
  std::vector<LiteralPlan> positives;
  // Index into positives of the literal restricted by a VirtualSplit.
  std::optional<std::size_t> split_position;
};

class RuleSink {
 public:
  virtual ~RuleSink() = default;
  virtual void add(GroundRule&& rule) = 0;
};

class VectorSink : public RuleSink {
 public:
  void add(GroundRule&& rule) override { rules.push_back(std::move(rule)); }
  std::vector<GroundRule> rules;
};

// The role segments (S and/or ΔS) a literal with this source ranges over.
std::vector<Segment> source_segments(const PredicateExtension& extension, Source source);

// S-part and ΔS-part sizes a split of a literal with this source partitions.
std::pair<std::size_t, std::size_t> split_domain(const PredicateExtension& extension, Source source);

// Emits every ground instance of plan.rule whose positive body atoms match the
// planned sources. When split is given, the split literal only takes the atoms
// inside its ranges. Ground rules keep the rule's original literal order.
// Returns early (with partial output) once cancel becomes true.
void instantiate_rule(const RulePlan& plan, const ExtensionStore& store, const VirtualSplit* split,
                      RuleSink& sink, const std::atomic<bool>* cancel = nullptr);

}  // namespace pground
