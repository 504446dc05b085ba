#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pground {

struct InstanceParams {
  std::size_t n = 5;            // threecol grid size, nqueens board size, hampath node count
  std::size_t tree_levels = 4;  // reach
  std::size_t siblings = 2;     // reach
  std::uint64_t seed = 1;       // hampath
};

// 3-colorability over a triangular grid with nodes (i,j), i + j <= n.
std::string threecol_instance(std::size_t n);
// n-queens: one guess rule and four constraints over rows 1..n.
std::string nqueens_instance(std::size_t n);
// Reachability over a complete tree, nodes numbered breadth-first from 1.
std::string reach_instance(std::size_t levels, std::size_t siblings);
// Hamiltonian path over a seeded random digraph with start node 1.
std::string hampath_instance(std::size_t n, std::uint64_t seed);

// Dispatch by problem name: threecol, nqueens, reach, hampath.
// Throws InvalidParams on an unknown problem or out-of-range parameters.
std::string generate_instance(std::string_view problem, const InstanceParams& params);

}  // namespace pground
