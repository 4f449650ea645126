#pragma once

#include <optional>
#include <vector>

#include "vconn/error.hpp"
#include "vconn/graph.hpp"
#include "vconn/maxflow.hpp"

namespace vconn {

using OracleResult = ConnectivityResult;

namespace detail {

template <GraphLike G>
void consider_pair(const G& g, VertexId s, VertexId t, const FlowOptions& opt,
                   std::optional<VertexCut>& best) {
  auto res = st_vertex_connectivity(g, s, t, opt);
  auto cut = cut_from_separator(g, res.separator, s);
  if (cut && (!best || better_cut(*cut, *best))) best = std::move(cut);
}

template <GraphLike G>
OracleResult finish(const G& g, std::optional<VertexCut> best) {
  if (!best) throw Error("oracle: no cut found in a non-complete graph");
  if (!validate_vertex_cut(g, *best)) throw Error("oracle: produced an invalid cut");
  return {best->size(), std::move(best)};
}

template <GraphLike G>
std::optional<OracleResult> trivial_cases(const G& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw InvalidQuery("vertex connectivity needs at least two vertices");
  if (is_complete(g)) return OracleResult{n - 1, std::nullopt};
  if (auto cut = disconnection_cut(g)) return OracleResult{0, std::move(cut)};
  return std::nullopt;
}

}  // namespace detail

// Exact kappa with O(n * delta) maxflows: some vertex of N[s0] (s0 of
// minimum degree) avoids every minimum separator, so pairing each of them
// with all its non-neighbours finds one.
inline OracleResult oracle_vertex_connectivity(const UndirectedGraph& g, const FlowOptions& opt = {}) {
  if (auto r = detail::trivial_cases(g)) return *r;
  const std::size_t n = g.vertex_count();
  auto seed_cut = min_degree_cut(g);
  VertexSet sources = seed_cut->separator;
  sources.push_back(seed_cut->left.front());
  sources = normalized(std::move(sources));
  std::optional<VertexCut> best;
  for (VertexId s : sources)
    for (VertexId t = 0; t < n; ++t)
      if (t != s && !g.has_edge(s, t)) detail::consider_pair(g, s, t, opt, best);
  return detail::finish(g, std::move(best));
}

// Directed version: candidates N^out[s0] for s0 of minimum out-degree, each
// tried as source and as sink against every other vertex.
inline OracleResult oracle_directed(const DirectedGraph& g, const FlowOptions& opt = {}) {
  if (auto r = detail::trivial_cases(g)) return *r;
  const std::size_t n = g.vertex_count();
  auto seed_cut = min_degree_cut(g);
  VertexSet sources = seed_cut->separator;
  sources.push_back(seed_cut->left.front());
  sources = normalized(std::move(sources));
  std::optional<VertexCut> best;
  for (VertexId s : sources)
    for (VertexId t = 0; t < n; ++t) {
      if (t == s) continue;
      if (!g.has_edge(s, t)) detail::consider_pair(g, s, t, opt, best);
      if (!g.has_edge(t, s)) detail::consider_pair(g, t, s, opt, best);
    }
  return detail::finish(g, std::move(best));
}

inline constexpr std::size_t kExhaustiveLimit = 12;

// Smallest S whose removal disconnects G - S (directed: leaves it not
// strongly connected), by subsets in increasing size, lexicographic within
// a size. Independent of any flow code.
template <GraphLike G>
OracleResult oracle_exhaustive(const G& g) {
  const std::size_t n = g.vertex_count();
  if (n > kExhaustiveLimit) throw InvalidQuery("oracle_exhaustive: n exceeds " + std::to_string(kExhaustiveLimit));
  if (n < 2) throw InvalidQuery("vertex connectivity needs at least two vertices");
  if (is_complete(g)) return {n - 1, std::nullopt};

  auto split = [&](const std::vector<char>& removed) -> std::optional<VertexCut> {
    VertexId root = 0;
    while (removed[root]) ++root;
    VertexId src[] = {root};
    auto fwd = reachable(g, src, removed);
    std::vector<char> left;
    for (VertexId v = 0; v < n; ++v)
      if (!removed[v] && !fwd[v]) {
        left = fwd;
        break;
      }
    if (left.empty()) {
      if constexpr (!G::kDirected) return std::nullopt;
      // Everyone is reachable from root; look at who reaches root.
      std::vector<char> back(n, 0);
      std::vector<VertexId> stack{root};
      back[root] = 1;
      while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (VertexId w : g.in_neighbors(u))
          if (!removed[w] && !back[w]) {
            back[w] = 1;
            stack.push_back(w);
          }
      }
      left.assign(n, 0);
      bool any = false;
      for (VertexId v = 0; v < n; ++v)
        if (!removed[v] && !back[v]) left[v] = any = 1;
      if (!any) return std::nullopt;
    }
    VertexCut cut;
    for (VertexId v = 0; v < n; ++v) {
      if (removed[v]) cut.separator.push_back(v);
      else (left[v] ? cut.left : cut.right).push_back(v);
    }
    return cut;
  };

  for (std::size_t size = 0; size + 2 <= n; ++size) {
    std::vector<VertexId> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<VertexId>(i);
    while (true) {
      std::vector<char> removed(n, 0);
      for (VertexId v : pick) removed[v] = 1;
      if (auto cut = split(removed)) return {size, std::move(cut)};
      // next combination
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw Error("oracle_exhaustive: no separator found in a non-complete graph");
}

}  // namespace vconn
