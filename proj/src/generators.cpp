#include "pground/generators.hpp"

#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "pground/error.hpp"

namespace pground {

namespace {

std::string vertex(std::size_t i, std::size_t j) { return "v" + std::to_string(i) + "_" + std::to_string(j); }

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParams(message);
}

}  // namespace

std::string threecol_instance(std::size_t n) {
  require(n >= 1 && n <= 2000, "threecol: n must be in [1, 2000]");
  std::ostringstream out;
  out << "% 3-colorability, triangular grid of size " << n << "\n";
  out << "col(X,red) | col(X,yellow) | col(X,green) :- node(X).\n";
  out << ":- edge(X,Y), col(X,C), col(Y,C).\n";
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; i + j <= n; ++j) out << "node(" << vertex(i, j) << ").\n";
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) {
      out << "edge(" << vertex(i, j) << "," << vertex(i + 1, j) << ").\n";
      out << "edge(" << vertex(i, j) << "," << vertex(i, j + 1) << ").\n";
      out << "edge(" << vertex(i + 1, j) << "," << vertex(i, j + 1) << ").\n";
    }
  }
  return out.str();
}

std::string nqueens_instance(std::size_t n) {
  require(n >= 1 && n <= 200, "nqueens: n must be in [1, 200]");
  std::ostringstream out;
  out << "% " << n << "-queens\n";
  out << "q(X,Y) | nq(X,Y) :- row(X), row(Y).\n";
  out << ":- q(X,Y), q(X,Z), neq(Y,Z).\n";
  out << ":- q(X,Y), q(Z,Y), neq(X,Z).\n";
  out << ":- q(X1,Y1), q(X2,Y2), sum(X1,Y1,S), sum(X2,Y2,S), neq(X1,X2).\n";
  out << ":- q(X1,Y1), q(X2,Y2), dif(X1,Y1,D), dif(X2,Y2,D), neq(X1,X2).\n";
  for (std::size_t i = 1; i <= n; ++i) out << "row(" << i << ").\n";
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) out << "neq(" << i << "," << j << ").\n";
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      out << "sum(" << i << "," << j << "," << i + j << ").\n";
      out << "dif(" << i << "," << j << "," << i + n - j << ").\n";
    }
  }
  return out.str();
}

std::string reach_instance(std::size_t levels, std::size_t siblings) {
  require(levels >= 1 && siblings >= 1, "reach: levels and siblings must be at least 1");
  std::size_t nodes = 1;
  std::size_t width = 1;
  for (std::size_t l = 1; l < levels; ++l) {
    width *= siblings;
    nodes += width;
    require(nodes <= 5'000'000, "reach: tree exceeds 5000000 nodes");
  }
  std::ostringstream out;
  out << "% reachability, tree with " << levels << " levels and " << siblings << " siblings\n";
  out << "reach(X,Y) :- edge(X,Y).\n";
  out << "reach(X,Y) :- reach(X,Z), edge(Z,Y).\n";
  // Children of node k (1-based, breadth-first) are siblings*(k-1)+2 ...
  for (std::size_t k = 1; k <= nodes; ++k) {
    for (std::size_t c = 0; c < siblings; ++c) {
      std::size_t child = siblings * (k - 1) + 2 + c;
      if (child > nodes) break;
      out << "edge(" << k << "," << child << ").\n";
    }
  }
  return out.str();
}

std::string hampath_instance(std::size_t n, std::uint64_t seed) {
  require(n >= 2 && n <= 100'000, "hampath: n must be in [2, 100000]");
  std::mt19937_64 rng(seed);
  std::set<std::pair<std::size_t, std::size_t>> arcs;
  for (std::size_t i = 1; i < n; ++i) arcs.insert({i, i + 1});
  for (std::size_t i = 1; i <= n; ++i) {
    for (int k = 0; k < 3; ++k) {
      std::size_t j = 1 + rng() % n;
      if (j != i) arcs.insert({i, j});
    }
  }
  std::ostringstream out;
  out << "% hamiltonian path, " << n << " nodes, seed " << seed << "\n";
  out << "inPath(X,Y) | outPath(X,Y) :- arc(X,Y).\n";
  out << "reached(X) :- start(X).\n";
  out << "reached(X) :- reached(Y), inPath(Y,X).\n";
  out << ":- inPath(X,Y), inPath(X,Y1), neq(Y,Y1).\n";
  out << ":- inPath(X,Y), inPath(X1,Y), neq(X,X1).\n";
  out << ":- node(X), not reached(X).\n";
  out << ":- start(Y), inPath(X,Y).\n";
  out << "start(1).\n";
  for (std::size_t i = 1; i <= n; ++i) out << "node(" << i << ").\n";
  for (const auto& [a, b] : arcs) out << "arc(" << a << "," << b << ").\n";
  // neq is only needed between nodes sharing an arc endpoint.
  std::set<std::pair<std::size_t, std::size_t>> neq;
  std::vector<std::vector<std::size_t>> succ(n + 1), pred(n + 1);
  for (const auto& [a, b] : arcs) {
    succ[a].push_back(b);
    pred[b].push_back(a);
  }
  for (const auto* lists : {&succ, &pred})
    for (const auto& list : *lists)
      for (std::size_t x : list)
        for (std::size_t y : list)
          if (x != y) neq.insert({x, y});
  for (const auto& [a, b] : neq) out << "neq(" << a << "," << b << ").\n";
  return out.str();
}

std::string generate_instance(std::string_view problem, const InstanceParams& params) {
  if (problem == "threecol") return threecol_instance(params.n);
  if (problem == "nqueens") return nqueens_instance(params.n);
  if (problem == "reach") return reach_instance(params.tree_levels, params.siblings);
  if (problem == "hampath") return hampath_instance(params.n, params.seed);
  throw InvalidParams("unknown problem '" + std::string(problem) + "' (expected threecol, nqueens, reach or hampath)");
}

}  // namespace pground
