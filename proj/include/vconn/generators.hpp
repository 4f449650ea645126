#pragma once

#include <vector>

#include "vconn/error.hpp"
#include "vconn/graph.hpp"
#include "vconn/random.hpp"

namespace vconn::gen {

inline UndirectedGraph path(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return {n, e};
}

inline UndirectedGraph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i) e.push_back({i, static_cast<VertexId>((i + 1) % n)});
  return {n, e};
}

inline UndirectedGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) e.push_back({i, j});
  return {n, e};
}

// Parts {0..a-1} and {a..a+b-1}.
inline UndirectedGraph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < a; ++i)
    for (VertexId j = 0; j < b; ++j) e.push_back({i, static_cast<VertexId>(a + j)});
  return {a + b, e};
}

inline UndirectedGraph star(std::size_t leaves) { return complete_bipartite(1, leaves); }

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline UndirectedGraph petersen() {
  std::vector<Edge> e;
  for (VertexId i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({i + 5, (i + 2) % 5 + 5});
  }
  return {10, e};
}

inline UndirectedGraph hypercube(std::size_t d) {
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> e;
  for (VertexId v = 0; v < n; ++v)
    for (std::size_t b = 0; b < d; ++b) {
      VertexId w = v ^ (VertexId{1} << b);
      if (v < w) e.push_back({v, w});
    }
  return {n, e};
}

// Hub 0 joined to every vertex of the rim cycle 1..rim.
inline UndirectedGraph wheel(std::size_t rim) {
  std::vector<Edge> e;
  for (VertexId i = 1; i <= rim; ++i) {
    e.push_back({0, i});
    e.push_back({i, static_cast<VertexId>(i % rim + 1)});
  }
  return {rim + 1, e};
}

// Two copies of K_a whose only connection is vertex 2a, adjacent to all.
inline UndirectedGraph barbell(std::size_t a) {
  std::vector<Edge> e;
  const auto c = static_cast<VertexId>(2 * a);
  for (VertexId base : {VertexId{0}, static_cast<VertexId>(a)})
    for (VertexId i = 0; i < a; ++i) {
      e.push_back({base + i, c});
      for (VertexId j = i + 1; j < a; ++j) e.push_back({base + i, base + j});
    }
  return {2 * a + 1, e};
}

inline UndirectedGraph gnp(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (bernoulli(rng, p)) e.push_back({i, j});
  return {n, e};
}

inline DirectedGraph directed_cycle(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i) e.push_back({i, static_cast<VertexId>((i + 1) % n)});
  return {n, e};
}

inline DirectedGraph complete_digraph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      if (i != j) e.push_back({i, j});
  return {n, e};
}

inline DirectedGraph random_digraph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      if (i != j && bernoulli(rng, p)) e.push_back({i, j});
  return {n, e};
}

inline DirectedGraph tournament(std::size_t n, Rng& rng) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) e.push_back(bernoulli(rng, 0.5) ? Edge{i, j} : Edge{j, i});
  return {n, e};
}

// Graph with a known small-side cut: L = {0, 1} adjacent, S = next k-1
// vertices, each adjacent to both of L and to `s_to_r` random vertices of R,
// and R a clique on the remaining r vertices. Min degree is at least k when
// r >= k + 1 and s_to_r >= k - 2.
struct Planted {
  UndirectedGraph graph;
  VertexCut cut;
};

inline Planted planted_scratch(std::size_t k, std::size_t r, std::size_t s_to_r, Rng& rng) {
  if (k < 2 || r < 2 || s_to_r > r) throw InvalidQuery("planted_scratch: bad parameters");
  const std::size_t s = k - 1;
  const std::size_t n = 2 + s + r;
  std::vector<Edge> e{{0, 1}};
  Planted out;
  out.cut.left = {0, 1};
  const auto r0 = static_cast<VertexId>(2 + s);
  for (VertexId i = 0; i < s; ++i) {
    VertexId v = 2 + i;
    out.cut.separator.push_back(v);
    e.push_back({0, v});
    e.push_back({1, v});
    for (VertexId w : sample_distinct(r, s_to_r, rng)) e.push_back({v, r0 + w});
  }
  for (VertexId i = 0; i < r; ++i) {
    out.cut.right.push_back(r0 + i);
    for (VertexId j = i + 1; j < r; ++j) e.push_back({r0 + i, r0 + j});
  }
  out.graph = UndirectedGraph(n, e);
  return out;
}

// Directed analogue: L = {0, 1} (both arcs between them), S of size k-1
// receiving arcs from both of L and sending arcs to all of R, R a complete
// digraph that also points back to everything. Only L -> R is missing.
struct PlantedDirected {
  DirectedGraph graph;
  VertexCut cut;
};

inline PlantedDirected planted_directed(std::size_t k, std::size_t r) {
  if (k < 2 || r < 2) throw InvalidQuery("planted_directed: bad parameters");
  const std::size_t s = k - 1;
  const std::size_t n = 2 + s + r;
  std::vector<Edge> e{{0, 1}, {1, 0}};
  PlantedDirected out;
  out.cut.left = {0, 1};
  const auto r0 = static_cast<VertexId>(2 + s);
  for (VertexId i = 0; i < s; ++i) {
    VertexId v = 2 + i;
    out.cut.separator.push_back(v);
    for (VertexId l : {VertexId{0}, VertexId{1}}) {
      e.push_back({l, v});
      e.push_back({v, l});
    }
    for (VertexId j = 0; j < r; ++j) {
      e.push_back({v, r0 + j});
      e.push_back({r0 + j, v});
    }
  }
  for (VertexId i = 0; i < r; ++i) {
    out.cut.right.push_back(r0 + i);
    e.push_back({r0 + i, 0});
    e.push_back({r0 + i, 1});
    for (VertexId j = 0; j < r; ++j)
      if (i != j) e.push_back({r0 + i, r0 + j});
  }
  out.graph = DirectedGraph(n, e);
  return out;
}

}  // namespace vconn::gen
