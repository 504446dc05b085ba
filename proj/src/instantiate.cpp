#include "pground/instantiate.hpp"

#include <algorithm>
#include <array>

namespace pground {

std::vector<Segment> source_segments(const PredicateExtension& extension, Source source) {
  std::vector<Segment> out;
  if (source != Source::delta) out.push_back({&extension.accumulated(), 0, extension.accumulated().size()});
  if (source != Source::accumulated) out.push_back({&extension.delta(), 0, extension.delta().size()});
  return out;
}

std::pair<std::size_t, std::size_t> split_domain(const PredicateExtension& extension, Source source) {
  std::size_t s = source == Source::delta ? 0 : extension.accumulated().size();
  std::size_t d = source == Source::accumulated ? 0 : extension.delta().size();
  return {s, d};
}

namespace {

class Joiner {
 public:
  Joiner(const RulePlan& plan, const ExtensionStore& store, const VirtualSplit* split, RuleSink& sink,
         const std::atomic<bool>* cancel)
      : plan_(plan), sink_(sink), cancel_(cancel), values_(plan.rule->variables.size(), kUnbound) {
    const std::size_t n = plan.positives.size();
    segments_.resize(n);
    probes_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& lit = plan.positives[k];
      const Atom& atom = plan.rule->body[lit.body_index].atom;
      const auto& ext = store.at(atom.predicate);
      probes_[k].resize(atom.terms.size());
      auto& segs = segments_[k];
      if (split && plan.split_position == k) {
        if (lit.source != Source::delta) segs.push_back({&ext.accumulated(), split->s_begin, split->s_end});
        if (lit.source != Source::accumulated) segs.push_back({&ext.delta(), split->delta_begin, split->delta_end});
      } else {
        segs = source_segments(ext, lit.source);
      }
    }
  }

  void run() { step(0); }

 private:
  void step(std::size_t k) {
    if (stopped_) return;
    if (k == plan_.positives.size()) {
      emit();
      return;
    }
    const Atom& atom = plan_.rule->body[plan_.positives[k].body_index].atom;
    auto& probe = probes_[k];
    bool all_bound = true;
    std::size_t key_column = atom.terms.size();
    for (std::size_t c = 0; c < atom.terms.size(); ++c) {
      const Term& t = atom.terms[c];
      Symbol v = t.is_variable() ? values_[t.value] : t.value;
      probe[c] = v;
      if (v == kUnbound) {
        all_bound = false;
      } else if (key_column == atom.terms.size()) {
        key_column = c;
      }
    }

    for (const Segment& seg : segments_[k]) {
      if (seg.begin >= seg.end) continue;
      const Relation& rel = *seg.relation;
      if (all_bound) {
        auto idx = rel.find(probe);
        if (idx && *idx >= seg.begin && *idx < seg.end) step(k + 1);
        continue;
      }
      if (key_column < atom.terms.size()) {
        const auto* list = rel.postings(key_column, probe[key_column]);
        if (!list) continue;
        auto it = std::lower_bound(list->begin(), list->end(), static_cast<std::uint32_t>(seg.begin));
        for (; it != list->end() && *it < seg.end; ++it) match(atom, rel.tuple(*it), k);
      } else {
        for (std::size_t i = seg.begin; i < seg.end; ++i) match(atom, rel.tuple(i), k);
      }
    }
  }

  void match(const Atom& atom, std::span<const Symbol> tuple, std::size_t k) {
    std::array<VarId, 16> local_bound;
    std::vector<VarId> overflow;
    std::size_t bound_count = 0;
    bool ok = true;
    for (std::size_t c = 0; c < atom.terms.size(); ++c) {
      const Term& t = atom.terms[c];
      if (!t.is_variable()) {
        if (tuple[c] != t.value) {
          ok = false;
          break;
        }
        continue;
      }
      Symbol& slot = values_[t.value];
      if (slot == kUnbound) {
        slot = tuple[c];
        if (bound_count < local_bound.size()) {
          local_bound[bound_count] = t.value;
        } else {
          overflow.push_back(t.value);
        }
        ++bound_count;
      } else if (slot != tuple[c]) {
        ok = false;
        break;
      }
    }
    if (ok) step(k + 1);
    for (std::size_t i = 0; i < std::min(bound_count, local_bound.size()); ++i) values_[local_bound[i]] = kUnbound;
    for (VarId v : overflow) values_[v] = kUnbound;
  }

  void emit() {
    sink_.add(substitute(*plan_.rule, values_));
    if (cancel_ && (++emitted_ & 0x3ff) == 0 && cancel_->load(std::memory_order_relaxed)) stopped_ = true;
  }

  const RulePlan& plan_;
  RuleSink& sink_;
  const std::atomic<bool>* cancel_;
  std::vector<Symbol> values_;
  std::vector<std::vector<Segment>> segments_;
  std::vector<std::vector<Symbol>> probes_;
  std::size_t emitted_ = 0;
  bool stopped_ = false;
};

}  // namespace

void instantiate_rule(const RulePlan& plan, const ExtensionStore& store, const VirtualSplit* split,
                      RuleSink& sink, const std::atomic<bool>* cancel) {
  Joiner(plan, store, split, sink, cancel).run();
}

}  // namespace pground
