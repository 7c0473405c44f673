#include "psqm/max_clique.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace psqm {

SmallGraph::SmallGraph(int vertex_count) {
  if (vertex_count < 0 || vertex_count > 64) {
    throw std::invalid_argument("SmallGraph supports up to 64 vertices");
  }
  adjacency_.assign(static_cast<std::size_t>(vertex_count), 0);
}

void SmallGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (u == v) {
    return;
  }
  adjacency_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
  adjacency_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
}

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(const SmallGraph& g) : graph_(g) {
    order_.resize(static_cast<std::size_t>(g.vertex_count()));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return std::popcount(g.neighbours(a)) > std::popcount(g.neighbours(b));
    });
  }

  std::vector<int> run() {
    std::uint64_t all = 0;
    for (int v : order_) {
      all |= std::uint64_t{1} << v;
    }
    std::vector<int> current;
    expand(current, all);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Greedy colouring of `candidates` in search order; colour classes bound the
  // clique size reachable from each prefix.
  void colour_sort(std::uint64_t candidates, std::vector<int>& vertices, std::vector<int>& bounds) const {
    vertices.clear();
    bounds.clear();
    int colour = 0;
    std::uint64_t uncoloured = candidates;
    while (uncoloured != 0) {
      ++colour;
      std::uint64_t available = uncoloured;
      for (int v : order_) {
        const std::uint64_t bit = std::uint64_t{1} << v;
        if ((available & bit) == 0) {
          continue;
        }
        vertices.push_back(v);
        bounds.push_back(colour);
        uncoloured &= ~bit;
        available &= ~bit & ~graph_.neighbours(v);
      }
    }
  }

  void expand(std::vector<int>& current, std::uint64_t candidates) {
    std::vector<int> vertices;
    std::vector<int> bounds;
    colour_sort(candidates, vertices, bounds);
    for (std::size_t i = vertices.size(); i-- > 0;) {
      if (current.size() + static_cast<std::size_t>(bounds[i]) <= best_.size()) {
        return;
      }
      const int v = vertices[i];
      current.push_back(v);
      const std::uint64_t next = candidates & graph_.neighbours(v);
      if (next == 0) {
        if (current.size() > best_.size()) {
          best_ = current;
        }
      } else {
        expand(current, next);
      }
      current.pop_back();
      candidates &= ~(std::uint64_t{1} << v);
    }
  }

  const SmallGraph& graph_;
  std::vector<int> order_;
  std::vector<int> best_;
};

}  // namespace

std::vector<int> maximum_clique(const SmallGraph& graph) {
  if (graph.vertex_count() == 0) {
    return {};
  }
  return CliqueSearch(graph).run();
}

}  // namespace psqm
