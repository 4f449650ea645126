#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "vconn/config.hpp"
#include "vconn/error.hpp"
#include "vconn/graph.hpp"
#include "vconn/maxflow.hpp"
#include "vconn/parallel.hpp"
#include "vconn/random.hpp"

namespace vconn {

struct IsolatedCut {
  VertexId terminal = 0;
  VertexSet separator;  // minimum (terminal, I - terminal)-separator
  VertexSet side;       // terminal's side, N(side) = separator
};

struct IsolatingResult {
  std::vector<IsolatedCut> cuts;  // one per terminal, ascending terminal id
  std::vector<VertexSet> bit_separators;
};

inline void check_independent(const UndirectedGraph& g, const VertexSet& terms) {
  const std::size_t n = g.vertex_count();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] >= n) throw InvalidQuery("terminal out of range");
    if (i > 0 && terms[i] == terms[i - 1]) throw InvalidQuery("duplicate terminal");
  }
  auto in = membership(n, terms);
  for (VertexId v : terms)
    for (VertexId w : g.neighbors(v))
      if (in[w]) throw InvalidQuery("terminal set is not independent");
}

// Minimum isolating separators for every terminal of an independent set
// with O(log |I|) set flows plus one local flow per terminal, the local
// instances being edge-disjoint apart from their sink edges.
inline IsolatingResult isolating_cuts(const UndirectedGraph& g, VertexSet terminals,
                                      const ExecContext& ctx = {}) {
  terminals = normalized(std::move(terminals));
  if (terminals.size() < 2) throw InvalidQuery("isolating_cuts needs at least two terminals");
  check_independent(g, terminals);
  const std::size_t n = g.vertex_count();
  const std::size_t q = terminals.size();

  IsolatingResult out;
  std::vector<char> removed(n, 0);
  for (std::size_t bit = 0; (std::size_t{1} << bit) < q; ++bit) {
    VertexSet a, b;
    for (std::size_t i = 0; i < q; ++i) ((i >> bit) & 1 ? a : b).push_back(terminals[i]);
    if (a.empty() || b.empty()) continue;
    auto res = set_vertex_connectivity(g, a, b, ctx.flow("isolating-bits"));
    for (VertexId v : res.separator) removed[v] = 1;
    out.bit_separators.push_back(std::move(res.separator));
  }

  std::vector<std::uint32_t> local(n, 0);
  for (VertexId v : terminals) {
    VertexId src[] = {v};
    auto comp = collect(reachable(g, src, removed));
    auto boundary = out_neighborhood(g, comp);

    IsolatedCut cut;
    cut.terminal = v;
    if (boundary.empty()) {
      cut.side = std::move(comp);
      out.cuts.push_back(std::move(cut));
      continue;
    }
    // Local ids: component, then boundary, then the sink.
    std::vector<VertexId> back;
    for (VertexId u : comp) {
      local[u] = static_cast<std::uint32_t>(back.size());
      back.push_back(u);
    }
    for (VertexId u : boundary) {
      local[u] = static_cast<std::uint32_t>(back.size());
      back.push_back(u);
    }
    const VertexId sink = static_cast<VertexId>(back.size());
    std::vector<Edge> edges;
    auto in_comp = [&](VertexId u) { return local[u] < comp.size() && back[local[u]] == u; };
    for (VertexId u : comp)
      for (VertexId w : g.neighbors(u))
        if (!in_comp(w) || u < w) edges.push_back({local[u], local[w]});
    for (VertexId u : boundary) edges.push_back({local[u], sink});
    UndirectedGraph gv(back.size() + 1, edges);

    auto res = st_vertex_connectivity(gv, local[v], sink, ctx.flow("isolating-local"));
    for (VertexId u : res.separator) cut.separator.push_back(back[u]);
    for (VertexId u : res.source_side) cut.side.push_back(back[u]);
    cut.separator = normalized(std::move(cut.separator));
    cut.side = normalized(std::move(cut.side));
    out.cuts.push_back(std::move(cut));
  }
  return out;
}

// Greedy maximal independent set of g[candidates], ascending id.
inline VertexSet greedy_mis(const UndirectedGraph& g, const VertexSet& candidates) {
  std::vector<char> blocked(g.vertex_count(), 0);
  VertexSet mis;
  for (VertexId v : candidates) {
    if (blocked[v]) continue;
    mis.push_back(v);
    for (VertexId w : g.neighbors(v)) blocked[w] = 1;
  }
  return mis;
}

inline std::size_t nonscratch_repetitions(std::size_t n, const NonScratchConfig& cfg) {
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max(cfg.j_floor, static_cast<std::size_t>(std::ceil(cfg.c1 * ln * ln * ln)));
}

// One sampled terminal set of the (level, repetition) grid.
struct IsolationTask {
  std::size_t level = 0;
  std::size_t rep = 0;
  bool low = false;
  VertexSet terminals;
};

inline std::vector<IsolationTask> nonscratch_plan(const UndirectedGraph& g, std::size_t k,
                                                  std::uint64_t seed, const NonScratchConfig& cfg,
                                                  std::uint64_t* duplicates = nullptr) {
  const std::size_t n = g.vertex_count();
  const std::size_t levels = std::max<std::size_t>(1, SketchContext::ceil_log2(n));
  const std::size_t reps = nonscratch_repetitions(n, cfg);
  VertexSet low_vertices;
  for (VertexId v = 0; v < n; ++v)
    if (g.degree(v) <= 8 * k) low_vertices.push_back(v);

  std::vector<IsolationTask> plan;
  std::set<VertexSet> seen;
  for (std::size_t i = 1; i <= levels; ++i) {
    const double p = std::ldexp(1.0, -static_cast<int>(i));
    for (std::size_t j = 1; j <= reps; ++j) {
      for (int kind = 0; kind < 2; ++kind) {
        Rng rng(derive_seed(seed, {0x150, k, i, j, static_cast<std::uint64_t>(kind)}));
        VertexSet sample = kind == 0 ? sample_each(n, p, rng) : sample_each(low_vertices, p, rng);
        VertexSet mis = greedy_mis(g, sample);
        if (mis.size() < 2) continue;
        if (!seen.insert(mis).second) {
          if (duplicates) ++*duplicates;
          continue;
        }
        plan.push_back({i, j, kind == 1, std::move(mis)});
      }
    }
  }
  return plan;
}

// Looks for a cut of size < k whose sides are both large enough to be
// isolated by sampling. Always returns some valid cut of a non-complete g.
inline std::optional<VertexCut> detect_nonscratch(const UndirectedGraph& g, std::size_t k,
                                                  std::uint64_t seed, const NonScratchConfig& cfg = {},
                                                  const ExecContext& ctx = {}) {
  std::optional<VertexCut> best = min_degree_cut(g);
  if (!best) return best;
  if (best->size() < k && cfg.early_exit) return best;

  std::uint64_t duplicates = 0;
  auto plan = nonscratch_plan(g, k, seed, cfg, &duplicates);
  if (ctx.stats) ctx.stats->duplicate_samples += duplicates;

  struct Outcome {
    std::optional<VertexCut> cut;
    FlowLedger ledger;
  };
  const bool keep_log = ctx.ledger && ctx.ledger->keeps_log();
  const std::size_t chunk = std::max<std::size_t>(1, ctx.threads) * 4;
  for (std::size_t begin = 0; begin < plan.size(); begin += chunk) {
    const std::size_t end = std::min(plan.size(), begin + chunk);
    std::vector<Outcome> outcomes;
    outcomes.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) outcomes.push_back({std::nullopt, FlowLedger(keep_log)});
    parallel_for(begin, end, ctx.threads, [&](std::size_t t) {
      Outcome& o = outcomes[t - begin];
      ExecContext local{ctx.engine, &o.ledger, nullptr, 1};
      auto res = isolating_cuts(g, plan[t].terminals, local);
      for (const IsolatedCut& c : res.cuts) {
        auto cut = cut_from_separator(g, c.separator, c.terminal);
        if (cut && (!o.cut || better_cut(*cut, *o.cut))) o.cut = std::move(cut);
      }
    });
    for (std::size_t t = begin; t < end; ++t) {
      Outcome& o = outcomes[t - begin];
      if (ctx.ledger) ctx.ledger->merge(o.ledger);
      if (ctx.stats) ++ctx.stats->isolating_calls;
      if (o.cut && validate_vertex_cut(g, *o.cut) && better_cut(*o.cut, *best)) best = std::move(o.cut);
      if (cfg.early_exit && best->size() < k) return best;
    }
  }
  return best;
}

}  // namespace vconn
