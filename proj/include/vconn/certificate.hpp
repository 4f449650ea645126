#pragma once

#include <set>
#include <utility>
#include <vector>

#include "vconn/error.hpp"
#include "vconn/graph.hpp"

namespace vconn {

struct Certificate {
  UndirectedGraph graph;
  std::size_t k = 0;
};

// Forest index (1-based) of every edge of g.edges(), from one maximum
// adjacency scan. Forest i is a scan-first forest of G minus forests < i.
inline std::vector<std::size_t> forest_indices(const UndirectedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> rank(n, 0);
  std::vector<char> scanned(n, 0);
  std::vector<std::size_t> edge_forest;
  auto edges = g.edges();
  edge_forest.assign(edges.size(), 0);
  auto edge_id = [&](VertexId a, VertexId b) {
    Edge e{std::min(a, b), std::max(a, b)};
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  };
  // Ordered by (-rank, id): begin() is the unscanned vertex of largest rank,
  // lowest id among ties.
  std::set<std::pair<std::size_t, VertexId>> frontier;
  auto key = [&](VertexId v) { return std::pair<std::size_t, VertexId>(n - rank[v], v); };
  for (VertexId v = 0; v < n; ++v) frontier.insert(key(v));
  while (!frontier.empty()) {
    VertexId x = frontier.begin()->second;
    frontier.erase(frontier.begin());
    scanned[x] = 1;
    for (VertexId y : g.neighbors(x)) {
      if (scanned[y]) continue;
      frontier.erase(key(y));
      ++rank[y];
      edge_forest[edge_id(x, y)] = rank[y];
      frontier.insert(key(y));
    }
  }
  return edge_forest;
}

// Union of the first k scan-first forests: at most n*k edges, and every
// vertex cut of size < k in g is still a vertex cut in the result.
inline Certificate k_certificate(const UndirectedGraph& g, std::size_t k) {
  if (k == 0) throw InvalidQuery("k_certificate: k must be at least 1");
  auto edges = g.edges();
  auto forest = forest_indices(g);
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (forest[i] <= k) kept.push_back(edges[i]);
  return {UndirectedGraph(g.vertex_count(), kept), k};
}

}  // namespace vconn
