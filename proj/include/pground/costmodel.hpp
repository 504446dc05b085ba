#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "pground/model.hpp"
#include "pground/store.hpp"

namespace pground {

using Count = std::uint64_t;

inline constexpr Count kCountMax = std::numeric_limits<Count>::max();

inline Count saturating_add(Count a, Count b) { return a > kCountMax - b ? kCountMax : a + b; }
inline Count saturating_mul(Count a, Count b) {
  if (a == 0 || b == 0) return 0;
  return a > kCountMax / b ? kCountMax : a * b;
}

// T(R) and V(X, R) for one body literal (or a join of several). Every variable
// of the relation has an entry; the entries are 0 when size is 0.
struct RelationStats {
  Count size = 0;
  std::map<VarId, Count> selectivity;
};

// prefix_costs[k-1] = C(k), prefix_sizes[k-1] = T(L1 ⋈ ... ⋈ Lk).
struct CostVector {
  std::vector<Count> prefix_costs;
  std::vector<Count> prefix_sizes;

  Count total() const { return prefix_costs.empty() ? 0 : prefix_costs.back(); }
  // C(k) with C(0) = 0.
  Count at(std::size_t k) const { return k == 0 ? 0 : prefix_costs[k - 1]; }
};

// Exact counts over the tuples of the given segments that match the literal
// (constants and repeated variables are honoured).
RelationStats collect_stats(const Atom& atom, std::span<const Segment> segments);
RelationStats collect_stats(const Atom& atom, const PredicateExtension& extension, Source source);

// T(L)·T(R) / Π_{shared X} max(V(X,L), V(X,R)), floored, and at least 1 when
// both sides are non-empty.
Count estimate_join_size(const RelationStats& left, const RelationStats& right);

// Statistics of L ⋈ R: the estimated size, V(X) = min over the sides sharing X,
// clamped to the size.
RelationStats join_stats(const RelationStats& left, const RelationStats& right);

// C(1..n) over an ordered body, deriving prefix sizes with join_stats.
CostVector body_cost(std::span<const RelationStats> ordered);

// C(1..n) from literal sizes and known prefix join sizes
// (prefix_sizes[k-1] = T(L1 ⋈ ... ⋈ Lk); only the first n-1 entries are used).
CostVector cost_chain(std::span<const Count> literal_sizes, std::span<const Count> prefix_sizes);

// Greedy join order. stats is indexed by body position (entries of negative
// literals are ignored). Positive literals come first: the smallest one, then
// repeatedly the literal with the smallest estimated join with the prefix,
// restricted to literals sharing a variable with it whenever one exists. Ties
// go to the earlier body position. Negative literals follow in body order.
std::vector<std::size_t> order_body(const Rule& rule, std::span<const RelationStats> stats);

}  // namespace pground
