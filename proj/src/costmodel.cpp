#include "pground/costmodel.hpp"

#include <algorithm>
#include <unordered_set>

namespace pground {

namespace {

bool distinct_variables_only(const Atom& atom) {
  std::vector<VarId> seen;
  for (const auto& t : atom.terms) {
    if (!t.is_variable()) return false;
    if (std::find(seen.begin(), seen.end(), t.value) != seen.end()) return false;
    seen.push_back(t.value);
  }
  return true;
}

}  // namespace

RelationStats collect_stats(const Atom& atom, std::span<const Segment> segments) {
  RelationStats stats;
  for (const auto& t : atom.terms)
    if (t.is_variable()) stats.selectivity[t.value] = 0;

  const bool simple = distinct_variables_only(atom);
  std::size_t nonempty = 0;
  const Segment* only = nullptr;
  for (const auto& seg : segments) {
    if (seg.size() == 0) continue;
    ++nonempty;
    only = &seg;
  }
  if (nonempty == 0) return stats;
  if (simple && nonempty == 1 && only->begin == 0 && only->end == only->relation->size()) {
    stats.size = only->size();
    for (std::size_t c = 0; c < atom.terms.size(); ++c)
      stats.selectivity[atom.terms[c].value] = only->relation->distinct(c);
    return stats;
  }

  std::map<VarId, std::unordered_set<Symbol>> values;
  std::vector<Symbol> binding;
  for (const auto& seg : segments) {
    for (std::size_t i = seg.begin; i < seg.end; ++i) {
      auto tuple = seg.relation->tuple(i);
      std::map<VarId, Symbol> local;
      bool match = true;
      for (std::size_t c = 0; c < atom.terms.size() && match; ++c) {
        const Term& t = atom.terms[c];
        if (!t.is_variable()) {
          match = tuple[c] == t.value;
        } else if (auto [it, fresh] = local.try_emplace(t.value, tuple[c]); !fresh) {
          match = it->second == tuple[c];
        }
      }
      if (!match) continue;
      ++stats.size;
      for (const auto& [v, value] : local) values[v].insert(value);
    }
  }
  for (auto& [v, count] : stats.selectivity) count = values[v].size();
  return stats;
}

RelationStats collect_stats(const Atom& atom, const PredicateExtension& extension, Source source) {
  std::vector<Segment> segments;
  if (source != Source::delta)
    segments.push_back({&extension.accumulated(), 0, extension.accumulated().size()});
  if (source != Source::accumulated)
    segments.push_back({&extension.delta(), 0, extension.delta().size()});
  return collect_stats(atom, segments);
}

Count estimate_join_size(const RelationStats& left, const RelationStats& right) {
  if (left.size == 0 || right.size == 0) return 0;
  Count numerator = saturating_mul(left.size, right.size);
  Count denominator = 1;
  for (const auto& [var, v_left] : left.selectivity) {
    auto it = right.selectivity.find(var);
    if (it == right.selectivity.end()) continue;
    denominator = saturating_mul(denominator, std::max<Count>({v_left, it->second, 1}));
  }
  return std::max<Count>(1, numerator / denominator);
}

RelationStats join_stats(const RelationStats& left, const RelationStats& right) {
  RelationStats out;
  out.size = estimate_join_size(left, right);
  out.selectivity = left.selectivity;
  for (const auto& [var, v] : right.selectivity) {
    auto [it, fresh] = out.selectivity.try_emplace(var, v);
    if (!fresh) it->second = std::min(it->second, v);
  }
  for (auto& [_, v] : out.selectivity) v = std::min(v, out.size);
  return out;
}

CostVector body_cost(std::span<const RelationStats> ordered) {
  std::vector<Count> sizes;
  std::vector<Count> prefix;
  RelationStats acc;
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    sizes.push_back(ordered[k].size);
    acc = k == 0 ? ordered[0] : join_stats(acc, ordered[k]);
    prefix.push_back(acc.size);
  }
  CostVector costs = cost_chain(sizes, prefix);
  costs.prefix_sizes = std::move(prefix);
  return costs;
}

CostVector cost_chain(std::span<const Count> literal_sizes, std::span<const Count> prefix_sizes) {
  CostVector costs;
  const std::size_t n = literal_sizes.size();
  costs.prefix_sizes.assign(prefix_sizes.begin(), prefix_sizes.end());
  for (std::size_t k = 1; k <= n; ++k) {
    Count c = 0;
    if (k == 2) {
      c = saturating_mul(literal_sizes[0], literal_sizes[1]);
    } else if (k > 2) {
      c = saturating_add(costs.prefix_costs[k - 2], saturating_mul(prefix_sizes[k - 2], literal_sizes[k - 1]));
    }
    costs.prefix_costs.push_back(c);
  }
  return costs;
}

std::vector<std::size_t> order_body(const Rule& rule, std::span<const RelationStats> stats) {
  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < rule.body.size(); ++i)
    if (!rule.body[i].negative) remaining.push_back(i);

  std::vector<std::size_t> order;
  std::vector<bool> bound(rule.variables.size(), false);
  RelationStats prefix;

  auto take = [&](std::size_t pos) {
    std::size_t body_index = remaining[pos];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
    prefix = order.empty() ? stats[body_index] : join_stats(prefix, stats[body_index]);
    order.push_back(body_index);
    for (const auto& t : rule.body[body_index].atom.terms)
      if (t.is_variable()) bound[t.value] = true;
  };

  if (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < remaining.size(); ++j)
      if (stats[remaining[j]].size < stats[remaining[best]].size) best = j;
    take(best);
  }
  while (!remaining.empty()) {
    auto shares = [&](std::size_t body_index) {
      for (const auto& t : rule.body[body_index].atom.terms)
        if (t.is_variable() && bound[t.value]) return true;
      return false;
    };
    bool any_shared = std::any_of(remaining.begin(), remaining.end(), shares);
    std::size_t best = remaining.size();
    Count best_size = kCountMax;
    for (std::size_t j = 0; j < remaining.size(); ++j) {
      if (any_shared && !shares(remaining[j])) continue;
      Count size = estimate_join_size(prefix, stats[remaining[j]]);
      if (best == remaining.size() || size < best_size) {
        best = j;
        best_size = size;
      }
    }
    take(best);
  }
  for (std::size_t i = 0; i < rule.body.size(); ++i)
    if (rule.body[i].negative) order.push_back(i);
  return order;
}

}  // namespace pground
