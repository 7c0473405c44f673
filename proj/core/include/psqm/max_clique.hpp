#pragma once

#include <cstdint>
#include <vector>

namespace psqm {

/// Undirected simple graph on at most 64 vertices, adjacency as bit masks.
class SmallGraph {
 public:
  explicit SmallGraph(int vertex_count);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const { return ((adjacency_[static_cast<std::size_t>(u)] >> v) & 1U) != 0; }
  std::uint64_t neighbours(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

 private:
  std::vector<std::uint64_t> adjacency_;
};

/// Exact maximum clique: branch and bound with a greedy-colouring bound over a
/// degree-ordered vertex list. Returns the vertices of one maximum clique, ascending.
std::vector<int> maximum_clique(const SmallGraph& graph);

}  // namespace psqm
