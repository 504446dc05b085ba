#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pground/costmodel.hpp"

namespace pground {

struct SplitCost {
  Count cost = 0;           // C^i
  std::size_t allowed = 1;  // s^i
};

struct SplitChoice {
  std::size_t literal_index = 0;  // position in the ordered positive body
  std::size_t allowed_splits = 1;
  Count cost = 0;
  bool shortcut_used = false;
  // C^i for every position examined before the scan stopped (empty on shortcut).
  std::vector<SplitCost> evaluated;
};

// Cost of splitting the literal at 0-based position (i = position + 1):
//   C^i = (C(n) - C(i-1)) / s^i + C(i-1),  s^i = min(s, T(L_i)) (at least 1),
// with the division rounded to nearest.
SplitCost split_cost(std::size_t position, std::size_t requested, const CostVector& costs, Count literal_size);

// Picks the split literal among the ordered positive literals whose sizes are
// literal_sizes. Position 0 is taken without computing costs when it allows
// `requested` splits; otherwise costs are evaluated left to right up to the
// first literal allowing `requested` splits, and the cheapest wins (earliest on
// ties). Throws NoPositiveLiteral when literal_sizes is empty.
SplitChoice select_split_literal(std::size_t requested, const CostVector& costs,
                                 std::span<const Count> literal_sizes);

// Index ranges over the S part and the ΔS part of one literal's extension.
struct VirtualSplit {
  std::size_t s_begin = 0;
  std::size_t s_end = 0;
  std::size_t delta_begin = 0;
  std::size_t delta_end = 0;

  std::size_t size() const { return (s_end - s_begin) + (delta_end - delta_begin); }
  friend bool operator==(const VirtualSplit&, const VirtualSplit&) = default;
};

// Partitions an extension of s_size atoms in S followed by delta_size atoms in
// ΔS into splits of floor(total / n) atoms: whole splits from S, at most one
// split mixing the S remainder with a ΔS prefix, whole splits from ΔS, and a
// final short split for what is left. n is clamped to [1, total].
std::vector<VirtualSplit> split_extension(std::size_t n, std::size_t s_size, std::size_t delta_size);

}  // namespace pground
