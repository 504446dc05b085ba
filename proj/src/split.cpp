#include "pground/split.hpp"

#include <algorithm>

#include "pground/error.hpp"

namespace pground {

SplitCost split_cost(std::size_t position, std::size_t requested, const CostVector& costs, Count literal_size) {
  SplitCost out;
  out.allowed = static_cast<std::size_t>(std::max<Count>(1, std::min<Count>(requested, literal_size)));
  const Count before = costs.at(position);
  const Count rest = costs.total() - before;
  const Count s = out.allowed;
  out.cost = saturating_add((rest / s) + ((rest % s) * 2 >= s ? 1 : 0), before);
  return out;
}

SplitChoice select_split_literal(std::size_t requested, const CostVector& costs,
                                 std::span<const Count> literal_sizes) {
  if (literal_sizes.empty()) throw NoPositiveLiteral("rule body has no positive literal to split");
  requested = std::max<std::size_t>(requested, 1);

  SplitChoice choice;
  if (literal_sizes[0] >= requested) {
    choice.literal_index = 0;
    choice.allowed_splits = requested;
    choice.shortcut_used = true;
    choice.cost = split_cost(0, requested, costs, literal_sizes[0]).cost;
    return choice;
  }
  for (std::size_t i = 0; i < literal_sizes.size(); ++i) {
    SplitCost c = split_cost(i, requested, costs, literal_sizes[i]);
    choice.evaluated.push_back(c);
    if (i == 0 || c.cost < choice.cost) {
      choice.literal_index = i;
      choice.allowed_splits = c.allowed;
      choice.cost = c.cost;
    }
    if (c.allowed == requested) break;
  }
  return choice;
}

std::vector<VirtualSplit> split_extension(std::size_t n, std::size_t s_size, std::size_t delta_size) {
  const std::size_t total = s_size + delta_size;
  n = std::max<std::size_t>(1, std::min(n, total));
  if (total == 0) return {VirtualSplit{}};

  const std::size_t size = total / n;
  std::vector<VirtualSplit> splits;
  std::size_t it = 0;

  // Whole splits from S.
  while (splits.size() < s_size / size) {
    splits.push_back({it, it + size, 0, 0});
    it += size;
  }
  std::size_t delta_it = 0;
  if (it < s_size) {
    // One split mixing the end of S with the beginning of ΔS.
    VirtualSplit mixed{it, s_size, 0, 0};
    const std::size_t k = size - (s_size - it);
    if (delta_size < k) {
      mixed.delta_end = delta_size;
      delta_it = delta_size;
    } else {
      mixed.delta_end = k;
      delta_it = k;
    }
    splits.push_back(mixed);
  }
  // Whole splits from ΔS.
  while (splits.size() < total / size && delta_it + size <= delta_size) {
    splits.push_back({s_size, s_size, delta_it, delta_it + size});
    delta_it += size;
  }
  if (delta_it < delta_size) splits.push_back({s_size, s_size, delta_it, delta_size});
  return splits;
}

}  // namespace pground
