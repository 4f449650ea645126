#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vconn/error.hpp"

namespace vconn {

// Dense vertex index in [0, n).
using VertexId = std::uint32_t;

// Sorted, duplicate-free sequence of vertex ids.
using VertexSet = std::vector<VertexId>;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  auto operator<=>(const Edge&) const = default;
};

namespace detail {

// Compressed sparse rows: offsets_[v]..offsets_[v+1] index into targets_.
class Adjacency {
 public:
  Adjacency() = default;

  // `arcs` is consumed; loops must already be removed.
  Adjacency(std::size_t n, std::vector<Edge> arcs) : offsets_(n + 1, 0) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    for (const Edge& a : arcs) ++offsets_[a.u + 1];
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    targets_.reserve(arcs.size());
    for (const Edge& a : arcs) targets_.push_back(a.v);
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  [[nodiscard]] std::size_t arc_count() const noexcept { return targets_.size(); }

  [[nodiscard]] std::span<const VertexId> row(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  [[nodiscard]] bool contains(VertexId u, VertexId v) const {
    auto r = row(u);
    return std::binary_search(r.begin(), r.end(), v);
  }

  bool operator==(const Adjacency&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
};

inline void check_endpoints(std::size_t n, const Edge& e) {
  if (e.u >= n || e.v >= n) throw InvalidQuery("edge endpoint out of range");
}

}  // namespace detail

// Immutable simple undirected graph. Self-loops and parallel edges passed to
// the constructor are dropped; adjacency rows are sorted ascending.
class UndirectedGraph {
 public:
  static constexpr bool kDirected = false;

  UndirectedGraph() = default;

  UndirectedGraph(std::size_t n, std::span<const Edge> edges) {
    std::vector<Edge> arcs;
    arcs.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
      detail::check_endpoints(n, e);
      if (e.u == e.v) continue;
      arcs.push_back({e.u, e.v});
      arcs.push_back({e.v, e.u});
    }
    adj_ = detail::Adjacency(n, std::move(arcs));
  }

  UndirectedGraph(std::size_t n, std::initializer_list<Edge> edges)
      : UndirectedGraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  [[nodiscard]] std::size_t vertex_count() const noexcept { return adj_.vertex_count(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return adj_.arc_count() / 2; }

  [[nodiscard]] std::span<const VertexId> neighbors(VertexId v) const { return adj_.row(v); }
  [[nodiscard]] std::span<const VertexId> out_neighbors(VertexId v) const { return adj_.row(v); }
  [[nodiscard]] std::span<const VertexId> in_neighbors(VertexId v) const { return adj_.row(v); }
  [[nodiscard]] std::size_t degree(VertexId v) const { return adj_.row(v).size(); }
  [[nodiscard]] std::size_t out_degree(VertexId v) const { return degree(v); }

  [[nodiscard]] bool has_edge(VertexId u, VertexId v) const { return adj_.contains(u, v); }

  // Every edge once, as (u, v) with u < v, in ascending order.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
      for (VertexId v : neighbors(u))
        if (u < v) out.push_back({u, v});
    return out;
  }

  bool operator==(const UndirectedGraph&) const = default;

 private:
  detail::Adjacency adj_;
};

// Immutable simple directed graph with both out- and in-adjacency.
class DirectedGraph {
 public:
  static constexpr bool kDirected = true;

  DirectedGraph() = default;

  DirectedGraph(std::size_t n, std::span<const Edge> arcs) {
    std::vector<Edge> fwd;
    std::vector<Edge> bwd;
    fwd.reserve(arcs.size());
    bwd.reserve(arcs.size());
    for (const Edge& a : arcs) {
      detail::check_endpoints(n, a);
      if (a.u == a.v) continue;
      fwd.push_back({a.u, a.v});
      bwd.push_back({a.v, a.u});
    }
    out_ = detail::Adjacency(n, std::move(fwd));
    in_ = detail::Adjacency(n, std::move(bwd));
  }

  DirectedGraph(std::size_t n, std::initializer_list<Edge> arcs)
      : DirectedGraph(n, std::span<const Edge>(arcs.begin(), arcs.size())) {}

  [[nodiscard]] std::size_t vertex_count() const noexcept { return out_.vertex_count(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return out_.arc_count(); }

  [[nodiscard]] std::span<const VertexId> out_neighbors(VertexId v) const { return out_.row(v); }
  [[nodiscard]] std::span<const VertexId> in_neighbors(VertexId v) const { return in_.row(v); }
  [[nodiscard]] std::size_t out_degree(VertexId v) const { return out_.row(v).size(); }
  [[nodiscard]] std::size_t in_degree(VertexId v) const { return in_.row(v).size(); }

  [[nodiscard]] bool has_edge(VertexId u, VertexId v) const { return out_.contains(u, v); }

  // Every arc (u, v) in ascending order.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
      for (VertexId v : out_neighbors(u)) out.push_back({u, v});
    return out;
  }

  bool operator==(const DirectedGraph&) const = default;

 private:
  detail::Adjacency out_;
  detail::Adjacency in_;
};

template <class G>
concept GraphLike = requires(const G& g, VertexId v) {
  { G::kDirected } -> std::convertible_to<bool>;
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  { g.out_neighbors(v) } -> std::convertible_to<std::span<const VertexId>>;
  { g.in_neighbors(v) } -> std::convertible_to<std::span<const VertexId>>;
  { g.has_edge(v, v) } -> std::convertible_to<bool>;
};

inline DirectedGraph reverse(const DirectedGraph& g) {
  std::vector<Edge> arcs;
  arcs.reserve(g.edge_count());
  for (const Edge& a : g.edges()) arcs.push_back({a.v, a.u});
  return DirectedGraph(g.vertex_count(), arcs);
}

// (L, S, R) with S the separator. Each part is a sorted VertexSet.
struct VertexCut {
  VertexSet left;
  VertexSet separator;
  VertexSet right;

  [[nodiscard]] std::size_t size() const noexcept { return separator.size(); }
  bool operator==(const VertexCut&) const = default;
};

// kappa plus a witness; `witness` is empty exactly for complete graphs and
// complete digraphs, where kappa = n - 1 and no vertex cut exists.
struct ConnectivityResult {
  std::size_t kappa = 0;
  std::optional<VertexCut> witness;

  [[nodiscard]] bool complete() const noexcept { return !witness.has_value(); }
};

// Ordering used for reproducible tie-breaks: smaller separator first, then
// lexicographically smaller separator.
inline bool better_cut(const VertexCut& a, const VertexCut& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.separator < b.separator;
}

inline std::vector<char> membership(std::size_t n, std::span<const VertexId> set) {
  std::vector<char> mark(n, 0);
  for (VertexId v : set) mark[v] = 1;
  return mark;
}

inline VertexSet collect(const std::vector<char>& mark) {
  VertexSet out;
  for (std::size_t v = 0; v < mark.size(); ++v)
    if (mark[v]) out.push_back(static_cast<VertexId>(v));
  return out;
}

inline VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool set_contains(const VertexSet& s, VertexId v) {
  return std::binary_search(s.begin(), s.end(), v);
}

// Vertices reachable from `sources` along out-arcs without entering a
// vertex marked in `blocked`. Blocked sources are not expanded.
template <GraphLike G>
std::vector<char> reachable(const G& g, std::span<const VertexId> sources,
                            const std::vector<char>& blocked) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> stack;
  for (VertexId s : sources) {
    if (blocked[s] || seen[s]) continue;
    seen[s] = 1;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : g.out_neighbors(u)) {
      if (seen[w] || blocked[w]) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return seen;
}

// N^out(T): vertices outside T with an arc from T.
template <GraphLike G>
VertexSet out_neighborhood(const G& g, std::span<const VertexId> set) {
  auto in_set = membership(g.vertex_count(), set);
  std::vector<char> mark(g.vertex_count(), 0);
  for (VertexId u : set)
    for (VertexId w : g.out_neighbors(u))
      if (!in_set[w]) mark[w] = 1;
  return collect(mark);
}

template <GraphLike G>
bool validate_vertex_cut(const G& g, const VertexCut& cut) {
  const std::size_t n = g.vertex_count();
  if (cut.left.empty() || cut.right.empty()) return false;
  // 0 = unassigned, 1 = L, 2 = S, 3 = R.
  std::vector<std::uint8_t> side(n, 0);
  auto assign = [&](const VertexSet& part, std::uint8_t tag) {
    for (VertexId v : part) {
      if (v >= n || side[v] != 0) return false;
      side[v] = tag;
    }
    return true;
  };
  if (!assign(cut.left, 1) || !assign(cut.separator, 2) || !assign(cut.right, 3)) return false;
  for (std::size_t v = 0; v < n; ++v)
    if (side[v] == 0) return false;
  for (VertexId u : cut.left)
    for (VertexId w : g.out_neighbors(u))
      if (side[w] == 3) return false;
  return true;
}

// Turns a separator candidate into a cut: L is what `anchor` reaches in
// G - separator, S is N^out(L) (a subset of `separator`), R the rest. No cut
// when the anchor is in the separator or R would be empty.
template <GraphLike G>
std::optional<VertexCut> cut_from_separator(const G& g, std::span<const VertexId> separator,
                                            VertexId anchor) {
  const std::size_t n = g.vertex_count();
  auto blocked = membership(n, separator);
  if (blocked[anchor]) return std::nullopt;
  VertexId src[] = {anchor};
  auto left = reachable(g, src, blocked);
  VertexCut cut;
  cut.left = collect(left);
  cut.separator = out_neighborhood(g, cut.left);
  auto in_sep = membership(n, cut.separator);
  for (VertexId v = 0; v < n; ++v)
    if (!left[v] && !in_sep[v]) cut.right.push_back(v);
  if (cut.right.empty()) return std::nullopt;
  return cut;
}

template <GraphLike G>
bool is_complete(const G& g) {
  const std::size_t n = g.vertex_count();
  if constexpr (G::kDirected) {
    return g.edge_count() == n * (n - (n > 0 ? 1 : 0));
  } else {
    return g.edge_count() == n * (n - (n > 0 ? 1 : 0)) / 2;
  }
}

// ({v}, N^out(v), rest) for the lowest-id vertex of minimum out-degree. No
// cut for complete graphs.
template <GraphLike G>
std::optional<VertexCut> min_degree_cut(const G& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return std::nullopt;
  VertexId best = 0;
  for (VertexId v = 1; v < n; ++v)
    if (g.out_neighbors(v).size() < g.out_neighbors(best).size()) best = v;
  VertexId src[] = {best};
  auto sep = g.out_neighbors(best);
  VertexCut cut;
  cut.left.assign(src, src + 1);
  cut.separator.assign(sep.begin(), sep.end());
  auto in_sep = membership(n, cut.separator);
  for (VertexId v = 0; v < n; ++v)
    if (v != best && !in_sep[v]) cut.right.push_back(v);
  if (cut.right.empty()) return std::nullopt;
  return cut;
}

template <GraphLike G>
std::size_t min_out_degree(const G& g) {
  std::size_t d = g.vertex_count();
  for (VertexId v = 0; v < g.vertex_count(); ++v) d = std::min(d, g.out_neighbors(v).size());
  return d;
}

// Component label per vertex (labels dense from 0 in order of lowest member).
inline std::vector<std::size_t> connected_components(const UndirectedGraph& g,
                                                     std::size_t* count = nullptr) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, kNone);
  std::size_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] != kNone) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(u))
        if (label[w] == kNone) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

// For a graph that is not connected (undirected) or not strongly connected
// (directed): a cut with empty separator. Empty optional when connected.
template <GraphLike G>
std::optional<VertexCut> disconnection_cut(const G& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) return std::nullopt;
  std::vector<char> none(n, 0);
  VertexId root[] = {0};
  auto fwd = reachable(g, root, none);
  VertexCut cut;
  if (std::find(fwd.begin(), fwd.end(), 0) != fwd.end()) {
    for (VertexId v = 0; v < n; ++v) (fwd[v] ? cut.left : cut.right).push_back(v);
    return cut;
  }
  if constexpr (G::kDirected) {
    // Everything is reachable from 0; see who can reach 0.
    std::vector<char> back(n, 0);
    std::vector<VertexId> stack{0};
    back[0] = 1;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.in_neighbors(u))
        if (!back[w]) {
          back[w] = 1;
          stack.push_back(w);
        }
    }
    if (std::find(back.begin(), back.end(), 0) == back.end()) return std::nullopt;
    for (VertexId v = 0; v < n; ++v) (back[v] ? cut.right : cut.left).push_back(v);
    return cut;
  }
  return std::nullopt;
}

struct ContractedGraph {
  UndirectedGraph graph;
  VertexId merged = 0;               // id of the vertex that replaced T
  std::vector<VertexId> old_to_new;  // every old vertex, T members map to `merged`
};

// Merges T into one vertex. Untouched vertices keep their relative order;
// the merged vertex takes the last id. Parallel edges and loops vanish.
inline ContractedGraph contract_set(const UndirectedGraph& g, std::span<const VertexId> set) {
  if (set.empty()) throw InvalidQuery("contract_set: empty vertex set");
  const std::size_t n = g.vertex_count();
  auto in_set = membership(n, set);
  ContractedGraph out;
  out.old_to_new.assign(n, 0);
  VertexId next = 0;
  for (VertexId v = 0; v < n; ++v)
    if (!in_set[v]) out.old_to_new[v] = next++;
  out.merged = next;
  for (VertexId v = 0; v < n; ++v)
    if (in_set[v]) out.old_to_new[v] = out.merged;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({out.old_to_new[e.u], out.old_to_new[e.v]});
  out.graph = UndirectedGraph(next + 1, edges);
  return out;
}

// Articulation points via iterative low-link DFS, ascending.
inline VertexSet articulation_points(const UndirectedGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, kUnseen), low(n, 0), next_edge(n, 0);
  std::vector<VertexId> parent(n, 0);
  std::vector<char> cut(n, 0);
  std::size_t clock = 0;
  for (VertexId root = 0; root < n; ++root) {
    if (order[root] != kUnseen) continue;
    std::size_t root_children = 0;
    std::vector<VertexId> stack{root};
    order[root] = low[root] = clock++;
    parent[root] = root;
    while (!stack.empty()) {
      VertexId u = stack.back();
      auto nb = g.neighbors(u);
      if (next_edge[u] < nb.size()) {
        VertexId w = nb[next_edge[u]++];
        if (order[w] == kUnseen) {
          parent[w] = u;
          order[w] = low[w] = clock++;
          if (u == root) ++root_children;
          stack.push_back(w);
        } else if (w != parent[u]) {
          low[u] = std::min(low[u], order[w]);
        }
      } else {
        stack.pop_back();
        if (u != root) {
          VertexId p = parent[u];
          low[p] = std::min(low[p], low[u]);
          if (p != root && low[u] >= order[p]) cut[p] = 1;
        }
      }
    }
    if (root_children > 1) cut[root] = 1;
  }
  return collect(cut);
}

}  // namespace vconn
