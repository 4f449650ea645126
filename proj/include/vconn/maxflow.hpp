#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vconn/error.hpp"
#include "vconn/graph.hpp"

namespace vconn {

// Cumulative size of the vertex-capacitated instances handed to maxflow.
// `total_vertices` / `total_edges` count the vertices and edges of each
// instance graph (terminal attachments included), not the split network.
struct FlowStats {
  std::uint64_t calls = 0;
  std::uint64_t total_vertices = 0;
  std::uint64_t total_edges = 0;

  FlowStats& operator+=(const FlowStats& o) {
    calls += o.calls;
    total_vertices += o.total_vertices;
    total_edges += o.total_edges;
    return *this;
  }
  bool operator==(const FlowStats&) const = default;
};

struct FlowCallRecord {
  std::string phase;
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
};

// Accumulates maxflow accounting. Not thread-safe: each worker owns a ledger
// and results are folded together with merge() in a fixed order.
class FlowLedger {
 public:
  explicit FlowLedger(bool keep_log = false) : keep_log_(keep_log) {}

  void record(std::string_view phase, std::uint64_t vertices, std::uint64_t edges) {
    FlowStats one{1, vertices, edges};
    totals_ += one;
    by_phase_[std::string(phase)] += one;
    if (keep_log_) log_.push_back({std::string(phase), vertices, edges});
  }

  void merge(const FlowLedger& other) {
    totals_ += other.totals_;
    for (const auto& [phase, s] : other.by_phase_) by_phase_[phase] += s;
    if (keep_log_) log_.insert(log_.end(), other.log_.begin(), other.log_.end());
  }

  [[nodiscard]] FlowStats snapshot() const { return totals_; }
  [[nodiscard]] const std::map<std::string, FlowStats>& by_phase() const { return by_phase_; }
  [[nodiscard]] const std::vector<FlowCallRecord>& log() const { return log_; }
  [[nodiscard]] bool keeps_log() const noexcept { return keep_log_; }

 private:
  bool keep_log_;
  FlowStats totals_;
  std::map<std::string, FlowStats> by_phase_;
  std::vector<FlowCallRecord> log_;
};

// Arc-capacitated network the engines operate on. Arcs are stored in pairs:
// arc a and a ^ 1 are mutual reverses.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : nodes_(nodes) {}

  std::size_t add_arc(std::uint32_t from, std::uint32_t to, std::int64_t cap) {
    std::size_t id = head_.size();
    tail_.push_back(from);
    head_.push_back(to);
    cap_.push_back(cap);
    tail_.push_back(to);
    head_.push_back(from);
    cap_.push_back(0);
    return id;
  }

  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_; }
  [[nodiscard]] std::size_t arc_count() const noexcept { return head_.size(); }
  [[nodiscard]] std::uint32_t tail(std::size_t a) const { return tail_[a]; }
  [[nodiscard]] std::uint32_t head(std::size_t a) const { return head_[a]; }
  [[nodiscard]] std::int64_t capacity(std::size_t a) const { return cap_[a]; }

 private:
  std::size_t nodes_;
  std::vector<std::uint32_t> tail_;
  std::vector<std::uint32_t> head_;
  std::vector<std::int64_t> cap_;
};

struct FlowSolution {
  std::int64_t value = 0;
  // Nodes reachable from the source in the final residual network.
  std::vector<char> source_reachable;
};

class FlowEngine {
 public:
  virtual ~FlowEngine() = default;
  [[nodiscard]] virtual std::string_view name() const = 0;
  [[nodiscard]] virtual FlowSolution max_flow(const FlowNetwork& net, std::uint32_t source,
                                              std::uint32_t sink) const = 0;
};

// Blocking-flow maxflow with current-arc pointers and an explicit path stack.
class DinicEngine final : public FlowEngine {
 public:
  [[nodiscard]] std::string_view name() const override { return "dinic"; }

  [[nodiscard]] FlowSolution max_flow(const FlowNetwork& net, std::uint32_t source,
                                      std::uint32_t sink) const override {
    const std::size_t n = net.node_count();
    const std::size_t arcs = net.arc_count();
    std::vector<std::size_t> start(n + 1, 0);
    for (std::size_t a = 0; a < arcs; ++a) ++start[net.tail(a) + 1];
    for (std::size_t v = 0; v < n; ++v) start[v + 1] += start[v];
    std::vector<std::size_t> order(arcs);
    {
      auto fill = start;
      for (std::size_t a = 0; a < arcs; ++a) order[fill[net.tail(a)]++] = a;
    }
    std::vector<std::int64_t> residual(arcs);
    for (std::size_t a = 0; a < arcs; ++a) residual[a] = net.capacity(a);

    std::vector<int> level(n);
    std::vector<std::size_t> cursor(n);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    std::vector<std::size_t> path;

    auto bfs = [&] {
      std::fill(level.begin(), level.end(), -1);
      queue.clear();
      level[source] = 0;
      queue.push_back(source);
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::uint32_t u = queue[qi];
        for (std::size_t i = start[u]; i < start[u + 1]; ++i) {
          std::size_t a = order[i];
          std::uint32_t w = net.head(a);
          if (residual[a] > 0 && level[w] < 0) {
            level[w] = level[u] + 1;
            queue.push_back(w);
          }
        }
      }
      return level[sink] >= 0;
    };

    FlowSolution sol;
    if (source != sink) {
      while (bfs()) {
        for (std::size_t v = 0; v < n; ++v) cursor[v] = start[v];
        path.clear();
        std::uint32_t u = source;
        while (true) {
          if (u == sink) {
            std::int64_t push = residual[path.front()];
            for (std::size_t a : path) push = std::min(push, residual[a]);
            std::size_t cut_at = path.size();
            for (std::size_t i = 0; i < path.size(); ++i) {
              residual[path[i]] -= push;
              residual[path[i] ^ 1] += push;
              if (residual[path[i]] == 0 && cut_at == path.size()) cut_at = i;
            }
            sol.value += push;
            path.resize(cut_at);
            u = path.empty() ? source : net.head(path.back());
            continue;
          }
          bool advanced = false;
          for (; cursor[u] < start[u + 1]; ++cursor[u]) {
            std::size_t a = order[cursor[u]];
            std::uint32_t w = net.head(a);
            if (residual[a] > 0 && level[w] == level[u] + 1) {
              path.push_back(a);
              u = w;
              advanced = true;
              break;
            }
          }
          if (advanced) continue;
          if (u == source) break;
          level[u] = -1;
          std::size_t back = path.back();
          path.pop_back();
          u = net.tail(back);
          ++cursor[u];
        }
      }
    }

    sol.source_reachable.assign(n, 0);
    queue.clear();
    sol.source_reachable[source] = 1;
    queue.push_back(source);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::uint32_t u = queue[qi];
      for (std::size_t i = start[u]; i < start[u + 1]; ++i) {
        std::size_t a = order[i];
        std::uint32_t w = net.head(a);
        if (residual[a] > 0 && !sol.source_reachable[w]) {
          sol.source_reachable[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return sol;
  }
};

inline const FlowEngine& default_flow_engine() {
  static const DinicEngine engine;
  return engine;
}

inline std::unique_ptr<FlowEngine> make_flow_engine(std::string_view name) {
  if (name == "dinic") return std::make_unique<DinicEngine>();
  throw InvalidQuery("unknown flow engine '" + std::string(name) + "'");
}

struct FlowOptions {
  const FlowEngine* engine = nullptr;  // null selects default_flow_engine()
  FlowLedger* ledger = nullptr;         // null disables accounting
  std::string_view phase = "st";
};

// Minimum vertex separator between terminals. `separator` realizes `value`;
// `source_side` is the residual-reachable side, with N(source_side) equal to
// `separator` in the queried graph.
struct SeparatorResult {
  std::size_t value = 0;
  VertexSet separator;
  VertexSet source_side;
};

namespace detail {

// Splits every non-terminal vertex v into in(v) -> out(v) with capacity 1;
// terminals (and the optional super terminals) keep unbounded capacity. With
// `sources`/`sinks` of size > 1 or `super` set, one super-source is wired to
// every source and every sink to one super-sink.
template <GraphLike G>
SeparatorResult vertex_separator(const G& g, std::span<const VertexId> sources,
                                 std::span<const VertexId> sinks, bool super,
                                 const FlowOptions& opt) {
  const std::size_t n = g.vertex_count();
  const std::size_t total = n + (super ? 2 : 0);
  const std::int64_t inf = static_cast<std::int64_t>(total) + 2;
  auto in_node = [](std::size_t v) { return static_cast<std::uint32_t>(2 * v); };
  auto out_node = [](std::size_t v) { return static_cast<std::uint32_t>(2 * v + 1); };

  std::vector<char> unsplit(total, 0);
  for (VertexId v : sources) unsplit[v] = 1;
  for (VertexId v : sinks) unsplit[v] = 1;
  if (super) unsplit[n] = unsplit[n + 1] = 1;

  FlowNetwork net(2 * total);
  for (std::size_t v = 0; v < total; ++v) net.add_arc(in_node(v), out_node(v), unsplit[v] ? inf : 1);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId w : g.out_neighbors(u)) net.add_arc(out_node(u), in_node(w), inf);

  std::uint32_t source_node;
  std::uint32_t sink_node;
  std::uint64_t edges = g.edge_count();
  if (super) {
    for (VertexId a : sources) net.add_arc(out_node(n), in_node(a), inf);
    for (VertexId b : sinks) net.add_arc(out_node(b), in_node(n + 1), inf);
    source_node = out_node(n);
    sink_node = in_node(n + 1);
    edges += sources.size() + sinks.size();
  } else {
    source_node = out_node(sources.front());
    sink_node = in_node(sinks.front());
  }

  const FlowEngine& engine = opt.engine ? *opt.engine : default_flow_engine();
  FlowSolution sol = engine.max_flow(net, source_node, sink_node);
  if (opt.ledger) opt.ledger->record(opt.phase, total, edges);

  SeparatorResult res;
  res.value = static_cast<std::size_t>(sol.value);
  for (VertexId v = 0; v < n; ++v) {
    bool in_reached = sol.source_reachable[in_node(v)];
    bool out_reached = sol.source_reachable[out_node(v)];
    if (out_reached || (unsplit[v] && in_reached)) {
      res.source_side.push_back(v);
    } else if (in_reached && !unsplit[v]) {
      res.separator.push_back(v);
    }
  }
  for (VertexId a : sources)
    if (!set_contains(res.source_side, a)) res.source_side.push_back(a);
  res.source_side = normalized(std::move(res.source_side));
  return res;
}

}  // namespace detail

// Maximum number of internally vertex-disjoint s->t paths and a minimum
// (s,t)-separator. Works for undirected and directed graphs.
template <GraphLike G>
SeparatorResult st_vertex_connectivity(const G& g, VertexId s, VertexId t,
                                       const FlowOptions& opt = {}) {
  if (s >= g.vertex_count() || t >= g.vertex_count())
    throw InvalidQuery("st_vertex_connectivity: terminal out of range");
  if (s == t) throw InvalidQuery("st_vertex_connectivity: s == t");
  if (g.has_edge(s, t)) throw InvalidQuery("st_vertex_connectivity: terminals are adjacent");
  VertexId src[] = {s};
  VertexId dst[] = {t};
  return detail::vertex_separator(g, src, dst, false, opt);
}

// Minimum (A,B)-separator via a super-source on A and a super-sink on B.
template <GraphLike G>
SeparatorResult set_vertex_connectivity(const G& g, std::span<const VertexId> a,
                                        std::span<const VertexId> b,
                                        const FlowOptions& opt = {}) {
  const std::size_t n = g.vertex_count();
  if (a.empty() || b.empty()) throw InvalidQuery("set_vertex_connectivity: empty terminal set");
  std::vector<char> in_a(n, 0);
  for (VertexId v : a) {
    if (v >= n) throw InvalidQuery("set_vertex_connectivity: vertex out of range");
    in_a[v] = 1;
  }
  std::vector<char> in_b(n, 0);
  for (VertexId v : b) {
    if (v >= n) throw InvalidQuery("set_vertex_connectivity: vertex out of range");
    if (in_a[v]) throw InvalidQuery("set_vertex_connectivity: terminal sets overlap");
    in_b[v] = 1;
  }
  for (VertexId u : a)
    for (VertexId w : g.out_neighbors(u))
      if (in_b[w]) throw InvalidQuery("set_vertex_connectivity: edge between terminal sets");
  return detail::vertex_separator(g, a, b, true, opt);
}

}  // namespace vconn
