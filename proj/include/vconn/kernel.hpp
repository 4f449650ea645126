#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "vconn/config.hpp"
#include "vconn/error.hpp"
#include "vconn/graph.hpp"
#include "vconn/maxflow.hpp"
#include "vconn/parallel.hpp"
#include "vconn/random.hpp"
#include "vconn/sketch.hpp"

namespace vconn {

inline std::size_t oracle_sparsity(std::size_t n, std::size_t ell, double factor) {
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return static_cast<std::size_t>(std::ceil(factor * static_cast<double>(ell) * ln));
}

// Answers "N^out(v) minus N^out[x]" from per-vertex linear sketches of the
// out-neighbourhood indicator; N^out[x] is formed as N^out(x) + e_x.
template <GraphLike G>
class NeighborOracle {
 public:
  NeighborOracle(const G& g, std::size_t k, std::size_t ell, std::uint64_t seed,
                 const ScratchConfig& cfg = {})
      : g_(&g),
        k_(k),
        ell_(ell),
        nominal_(oracle_sparsity(g.vertex_count(), ell, cfg.threshold_factor)),
        ctx_(g.vertex_count(), std::max<std::size_t>(1, std::min(nominal_, g.vertex_count())), seed,
             with_table(cfg.sketch)) {
    if (ell == 0) throw InvalidQuery("neighbor oracle needs l >= 1");
    const std::size_t n = g.vertex_count();
    rec_.reserve(n);
    l2_.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
      auto nb = g.out_neighbors(v);
      SparseVector ind = indicator(nb);
      rec_.push_back(sr_sketch(ctx_, ind));
      l2_.push_back(l2_sketch(ctx_, ind));
    }
  }

  [[nodiscard]] const G& graph() const noexcept { return *g_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] std::size_t ell() const noexcept { return ell_; }
  [[nodiscard]] std::size_t nominal_sparsity() const noexcept { return nominal_; }
  [[nodiscard]] std::size_t capacity() const noexcept { return ctx_.sparsity(); }
  [[nodiscard]] const SketchContext& context() const noexcept { return ctx_; }

  [[nodiscard]] bool query_allowed(VertexId x) const {
    return g_->out_neighbors(x).size() + 1 <= k_ + 2 * ell_;
  }

  // nullopt = too big.
  [[nodiscard]] std::optional<VertexSet> out_neighbor(VertexId x, VertexId v) const {
    if (x == v) throw InvalidQuery("out_neighbor: v must differ from x");
    if (!query_allowed(x)) throw InvalidQuery("out_neighbor: |N[x]| exceeds k + 2l");
    L2Sketch d = l2_[v] - l2_[x];
    l2_update(ctx_, d, x, -1);
    const double est = l2_estimate(d);
    // For a {-1,0,1} vector the squared norm is the support size.
    if (est * est > static_cast<double>(nominal_)) return std::nullopt;
    RecoverySketch r = sr_combine(rec_[v], rec_[x], Sign::kMinus);
    sr_update(ctx_, r, x, -1);
    auto decoded = sr_decode(ctx_, r);
    if (std::holds_alternative<TooDense>(decoded)) return std::nullopt;
    VertexSet out;
    for (const SparseEntry& e : std::get<SparseVector>(decoded))
      if (e.value > 0) out.push_back(e.index);
    return out;
  }

 private:
  static SketchOptions with_table(SketchOptions o) {
    o.sign_table = true;
    return o;
  }

  const G* g_;
  std::size_t k_;
  std::size_t ell_;
  std::size_t nominal_;
  SketchContext ctx_;
  std::vector<RecoverySketch> rec_;
  std::vector<L2Sketch> l2_;
};

// Reduction rules on an explicit (s, t) instance, kept as standalone
// functions so the kernel's correctness argument can be checked directly.
// Both keep vertex ids and only delete edges; removed vertices end up
// isolated.
template <GraphLike G>
struct ReducedInstance {
  G graph;
  VertexSet removed;  // vertices forced into every separator
};

namespace detail {

template <GraphLike G>
G drop_arcs(const G& g, const std::function<bool(VertexId, VertexId)>& keep) {
  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (keep(e.u, e.v)) kept.push_back(e);
  return G(g.vertex_count(), kept);
}

}  // namespace detail

// Identify: N^out(s) ∩ N^in(t) belongs to every separator; cut it out.
template <GraphLike G>
ReducedInstance<G> identify_rule(const G& g, VertexId s, VertexId t) {
  const std::size_t n = g.vertex_count();
  auto to_t = membership(n, g.in_neighbors(t));
  ReducedInstance<G> out;
  for (VertexId v : g.out_neighbors(s))
    if (to_t[v]) out.removed.push_back(v);
  auto gone = membership(n, out.removed);
  out.graph = detail::drop_arcs<G>(g, [&](VertexId u, VertexId v) { return !gone[u] && !gone[v]; });
  return out;
}

// Filter: drops edges and vertices no maximum path system needs. Each of the
// three rules is evaluated on the graph left by the previous one.
template <GraphLike G>
G filter_rule(const G& g, VertexId s, VertexId t) {
  const std::size_t n = g.vertex_count();
  // (1) undirected: edges inside N(s) or inside N(t). Directed: arcs into
  // N^out[s] not leaving s, and arcs out of N^in[t] not entering t.
  auto near_s = membership(n, g.out_neighbors(s));
  auto near_t = membership(n, g.in_neighbors(t));
  G h;
  if constexpr (G::kDirected) {
    near_s[s] = 1;
    near_t[t] = 1;
    h = detail::drop_arcs<G>(g, [&](VertexId u, VertexId v) {
      if (near_s[v] && u != s) return false;
      if (near_t[u] && v != t) return false;
      return true;
    });
  } else {
    h = detail::drop_arcs<G>(g, [&](VertexId u, VertexId v) {
      return !(near_s[u] && near_s[v]) && !(near_t[u] && near_t[v]);
    });
  }

  // (2) v with t in N^out(v) and N^in(v) inside N^in[t].
  std::vector<char> useless(n, 0);
  {
    auto into_t = membership(n, h.in_neighbors(t));
    into_t[t] = 1;
    for (VertexId v = 0; v < n; ++v) {
      if (v == s || v == t || !h.has_edge(v, t)) continue;
      auto in = h.in_neighbors(v);
      useless[v] = std::all_of(in.begin(), in.end(), [&](VertexId u) { return into_t[u] != 0; });
    }
    h = detail::drop_arcs<G>(h, [&](VertexId u, VertexId v) { return !useless[u] && !useless[v]; });
  }

  // (3) v outside N^in[t] that s cannot reach once N^in[t] is deleted.
  {
    auto blocked = membership(n, h.in_neighbors(t));
    blocked[t] = 1;
    const bool s_blocked = blocked[s];
    blocked[s] = 0;
    VertexId src[] = {s};
    auto seen = reachable(h, src, blocked);
    blocked[s] = s_blocked;
    std::vector<char> drop(n, 0);
    for (VertexId v = 0; v < n; ++v) drop[v] = !seen[v] && !blocked[v] && v != s;
    h = detail::drop_arcs<G>(h, [&](VertexId u, VertexId v) { return !drop[u] && !drop[v]; });
  }
  return h;
}

// Sampled sink set T together with V_bad = {v : T within N^out[v]}.
struct TerminalSample {
  VertexSet terminals;
  std::vector<char> in_t;
  std::vector<char> bad;
};

template <GraphLike G>
TerminalSample make_terminal_sample(const G& g, VertexSet terminals) {
  const std::size_t n = g.vertex_count();
  TerminalSample ts;
  ts.terminals = normalized(std::move(terminals));
  ts.in_t = membership(n, ts.terminals);
  ts.bad.assign(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    std::size_t hit = ts.in_t[v] ? 1 : 0;
    for (VertexId w : g.out_neighbors(v)) hit += ts.in_t[w];
    ts.bad[v] = hit == ts.terminals.size();
  }
  return ts;
}

// Kernel graph with local terminals x = 0 and t_x = 1; other local ids map
// through `original`.
template <GraphLike G>
struct Kernel {
  G graph;
  static constexpr VertexId kSource = 0;
  static constexpr VertexId kSink = 1;
  VertexId x = 0;
  std::vector<VertexId> original;  // local id -> vertex of G (entries 0, 1 unused)
  VertexSet z;
  VertexSet n_x;
  VertexSet n_t;
  VertexSet f;
  std::size_t count_list = 0;

  [[nodiscard]] std::size_t edge_count() const { return graph.edge_count(); }
};

enum class BotReason { kNone, kBadSource, kLargeNeighborhood, kCountList };

template <GraphLike G>
struct SearchOutcome {
  std::optional<Kernel<G>> kernel;
  BotReason reason = BotReason::kNone;
};

// BFS-like exploration through oracle queries. Loop 1 splits N^out(x) into
// Z and N_x; loop 2 explores outward from N_x, stopping at vertices that
// touch T. `count_limit` = 0 disables the listing cap.
template <GraphLike G>
SearchOutcome<G> sketchy_search(const NeighborOracle<G>& oracle, VertexId x, const TerminalSample& ts,
                                std::size_t count_limit) {
  const G& g = oracle.graph();
  SearchOutcome<G> out;
  if (ts.bad[x]) {
    out.reason = BotReason::kBadSource;
    return out;
  }
  if (!oracle.query_allowed(x)) {
    out.reason = BotReason::kLargeNeighborhood;
    return out;
  }
  auto touches_t = [&](const VertexSet& s) {
    for (VertexId w : s)
      if (ts.in_t[w]) return true;
    return false;
  };

  Kernel<G> ker;
  ker.x = x;
  std::unordered_map<VertexId, char> visit;
  std::vector<Edge> collected;  // arcs in G ids
  std::deque<VertexId> queue;
  auto nx = g.out_neighbors(x);
  for (VertexId v : nx) visit[v] = 1;
  for (VertexId v : nx) {
    auto list = oracle.out_neighbor(x, v);
    if (!list || touches_t(*list)) {
      ker.z.push_back(v);
      continue;
    }
    ker.n_x.push_back(v);
    for (VertexId w : *list) {
      collected.push_back({v, w});
      if (!visit.count(w)) queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (visit.count(v)) continue;
    visit[v] = 1;
    auto list = oracle.out_neighbor(x, v);
    if (!list) {
      ker.n_t.push_back(v);
      continue;
    }
    ++ker.count_list;
    if (touches_t(*list)) {
      ker.n_t.push_back(v);
    } else {
      ker.f.push_back(v);
      for (VertexId w : *list) {
        collected.push_back({v, w});
        if (!visit.count(w)) queue.push_back(w);
      }
    }
    if (count_limit && ker.count_list > count_limit) {
      out.reason = BotReason::kCountList;
      return out;
    }
  }

  // Assemble: x -> N_x, collected arcs, N_t -> t_x.
  std::unordered_map<VertexId, VertexId> local;
  ker.original = {x, x};
  auto id_of = [&](VertexId v) {
    auto [it, fresh] = local.emplace(v, static_cast<VertexId>(ker.original.size()));
    if (fresh) ker.original.push_back(v);
    return it->second;
  };
  std::vector<Edge> arcs;
  for (VertexId v : ker.n_x) arcs.push_back({Kernel<G>::kSource, id_of(v)});
  for (const Edge& e : collected) arcs.push_back({id_of(e.u), id_of(e.v)});
  for (VertexId v : ker.n_t) arcs.push_back({id_of(v), Kernel<G>::kSink});
  ker.graph = G(ker.original.size(), arcs);
  ker.z = normalized(std::move(ker.z));
  ker.n_x = normalized(std::move(ker.n_x));
  ker.n_t = normalized(std::move(ker.n_t));
  ker.f = normalized(std::move(ker.f));
  out.kernel = std::move(ker);
  return out;
}

// Kernel min-separator lifted to G: Y (mapped back) plus Z.
struct LiftedSeparator {
  std::size_t kernel_value = 0;
  VertexSet separator;
};

template <GraphLike G>
LiftedSeparator solve_kernel(const Kernel<G>& ker, const FlowOptions& opt) {
  LiftedSeparator out;
  auto res = st_vertex_connectivity(ker.graph, Kernel<G>::kSource, Kernel<G>::kSink, opt);
  out.kernel_value = res.value;
  out.separator = ker.z;
  for (VertexId y : res.separator) out.separator.push_back(ker.original[y]);
  out.separator = normalized(std::move(out.separator));
  return out;
}

struct ScratchLevel {
  std::size_t ell = 0;
  std::size_t x_count = 0;
  std::size_t reps = 0;
};

inline std::size_t scratch_reps(std::size_t n, const ScratchConfig& cfg) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max(cfg.j_floor, static_cast<std::size_t>(std::ceil(cfg.c2 * lg)));
}

inline std::size_t scratch_x_count(std::size_t n, std::size_t ell, const ScratchConfig& cfg) {
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return static_cast<std::size_t>(std::ceil(cfg.x_factor * static_cast<double>(n) * ln / static_cast<double>(ell)));
}

// Levels l = 2^i, i >= 1, with 2^i <= k / (divisor * log2 n).
inline std::vector<ScratchLevel> scratch_levels(std::size_t n, std::size_t k, const ScratchConfig& cfg) {
  std::vector<ScratchLevel> out;
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  const double limit = static_cast<double>(k) / (cfg.level_divisor * lg);
  for (std::size_t i = 1; std::ldexp(1.0, static_cast<int>(i)) <= limit; ++i) {
    std::size_t ell = std::size_t{1} << i;
    out.push_back({ell, scratch_x_count(n, ell, cfg), scratch_reps(n, cfg)});
  }
  return out;
}

namespace detail {

// Runs the kernel pipeline over an explicit level list. Shared by the
// undirected scratch detector and the directed unbalanced detector.
template <GraphLike G>
std::optional<VertexCut> kernel_levels(const G& g, std::size_t k, const std::vector<ScratchLevel>& levels,
                                       std::uint64_t seed, const ScratchConfig& cfg, std::size_t count_factor,
                                       const ExecContext& ctx, std::optional<VertexCut> best) {
  const std::size_t n = g.vertex_count();
  const bool keep_log = ctx.ledger && ctx.ledger->keeps_log();
  struct Outcome {
    std::optional<VertexCut> cut;
    FlowLedger ledger;
    DetectorStats stats;
  };
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const ScratchLevel& lev = levels[li];
    NeighborOracle<G> oracle(g, k, lev.ell, derive_seed(seed, {0x0c1e, k, lev.ell}), cfg);
    Rng xr(derive_seed(seed, {0x0c1f, k, lev.ell}));
    VertexSet xs = sample_distinct(n, lev.x_count, xr);
    const std::size_t limit = count_factor * k;
    for (std::size_t j = 1; j <= lev.reps; ++j) {
      Rng tr(derive_seed(seed, {0x0c20, k, lev.ell, j}));
      auto ts = make_terminal_sample(g, sample_each(n, 1.0 / (8.0 * static_cast<double>(lev.ell)), tr));
      if (ts.terminals.empty()) continue;
      std::vector<Outcome> outcomes;
      outcomes.reserve(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) outcomes.push_back({std::nullopt, FlowLedger(keep_log), {}});
      parallel_for(0, xs.size(), ctx.threads, [&](std::size_t i) {
        Outcome& o = outcomes[i];
        VertexId x = xs[i];
        ++o.stats.kernel_queries;
        auto found = sketchy_search(oracle, x, ts, limit);
        if (!found.kernel) {
          ++o.stats.bot_results;
          return;
        }
        ++o.stats.kernels_built;
        o.stats.kernel_edges += found.kernel->edge_count();
        auto lifted = solve_kernel(*found.kernel, FlowOptions{ctx.engine, &o.ledger, "kernel"});
        o.cut = cut_from_separator(g, lifted.separator, x);
      });
      for (Outcome& o : outcomes) {
        if (ctx.ledger) ctx.ledger->merge(o.ledger);
        if (ctx.stats) *ctx.stats += o.stats;
        if (o.cut && validate_vertex_cut(g, *o.cut) && (!best || better_cut(*o.cut, *best))) best = std::move(o.cut);
      }
      if (cfg.early_exit && best && best->size() < k) return best;
    }
  }
  return best;
}

}  // namespace detail

// Looks for a cut below k whose small side has at most k / (divisor log n)
// vertices. Always returns a valid cut of a non-complete graph.
inline std::optional<VertexCut> detect_scratch(const UndirectedGraph& g, std::size_t k, std::uint64_t seed,
                                               const ScratchConfig& cfg = {}, const ExecContext& ctx = {}) {
  std::optional<VertexCut> best = min_degree_cut(g);
  if (!best || best->size() < k) return best;
  return detail::kernel_levels(g, k, scratch_levels(g.vertex_count(), k, cfg), seed, cfg, cfg.countlist_factor,
                               ctx, std::move(best));
}

}  // namespace vconn
