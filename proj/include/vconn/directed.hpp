#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "vconn/config.hpp"
#include "vconn/error.hpp"
#include "vconn/graph.hpp"
#include "vconn/kernel.hpp"
#include "vconn/maxflow.hpp"
#include "vconn/random.hpp"
#include "vconn/search.hpp"

namespace vconn {

inline std::size_t clamp_ell(std::size_t n, std::size_t ell) {
  const std::size_t hi = std::max<std::size_t>(2, n / 10);
  return std::clamp<std::size_t>(ell, 2, hi);
}

// Density-regime heuristic: n^(1/8) for sparse inputs, m^(3/4) / n for
// dense ones, clamped to [2, max(2, n/10)].
inline std::size_t default_ell(std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(std::max<std::size_t>(n, 1));
  const double dm = static_cast<double>(m);
  const double sparse = std::pow(dn, 0.125);
  const double dense = std::pow(dm, 0.75) / dn;
  return clamp_ell(n, static_cast<std::size_t>(std::llround(std::max(sparse, dense))));
}

inline VertexCut flip_cut(VertexCut cut) {
  std::swap(cut.left, cut.right);
  return cut;
}

// Finds a cut below k whose source side has at most a vertices (and is no
// larger than the sink side) via directed kernels. Always returns a valid
// cut of a non-complete digraph.
inline std::optional<VertexCut> detect_unbalanced_directed(const DirectedGraph& g, std::size_t a, std::size_t k,
                                                           std::uint64_t seed, const ScratchConfig& cfg = {},
                                                           const ExecContext& ctx = {}) {
  const std::size_t n = g.vertex_count();
  if (a < 2 || a > n) throw InvalidQuery("detect_unbalanced_directed: a must lie in [2, n]");
  std::optional<VertexCut> best = min_degree_cut(g);
  if (!best || best->size() < k) return best;
  std::vector<ScratchLevel> levels;
  for (std::size_t ell = 2; ell <= a; ell *= 2)
    levels.push_back({ell, scratch_x_count(n, ell, cfg), scratch_reps(n, cfg)});
  return detail::kernel_levels(g, k, levels, seed, cfg, 0, ctx, std::move(best));
}

// Random (s, t) pairs, each answered by one directed maxflow.
inline std::optional<VertexCut> detect_balanced_directed(const DirectedGraph& g, std::size_t ell, std::size_t k,
                                                         std::uint64_t seed, const DirectedConfig& cfg,
                                                         const ExecContext& ctx) {
  const std::size_t n = g.vertex_count();
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  const auto pairs = static_cast<std::size_t>(
      std::ceil(cfg.c3 * static_cast<double>(n) / static_cast<double>(ell) * ln));
  Rng rng(derive_seed(seed, {0xba1, k, ell}));
  std::optional<VertexCut> best;
  for (std::size_t i = 0; i < pairs; ++i) {
    auto s = static_cast<VertexId>(uniform_below(rng, n));
    auto t = static_cast<VertexId>(uniform_below(rng, n));
    if (s == t || g.has_edge(s, t)) continue;
    if (ctx.stats) ++ctx.stats->pair_flows;
    auto res = st_vertex_connectivity(g, s, t, ctx.flow("balanced-pair"));
    if (res.value >= k) continue;
    auto cut = cut_from_separator(g, res.separator, s);
    if (cut && validate_vertex_cut(g, *cut) && (!best || better_cut(*cut, *best))) best = std::move(cut);
  }
  return best;
}

// One probe: every case on G and on its reverse; reverse cuts are flipped
// back. Returns the best valid cut found.
inline std::optional<VertexCut> directed_detect_below_k(const DirectedGraph& g, const DirectedGraph& rev,
                                                        std::size_t k, std::size_t ell, std::uint64_t seed,
                                                        const RunConfig& cfg, const ExecContext& ctx) {
  const std::size_t n = g.vertex_count();
  std::optional<VertexCut> best;
  auto offer = [&](std::optional<VertexCut> cut, bool reversed, const char* tag) {
    if (!cut) return;
    if (reversed) cut = flip_cut(std::move(*cut));
    if (!validate_vertex_cut(g, *cut)) return;
    if (!best || better_cut(*cut, *best)) {
      best = std::move(cut);
      if (ctx.stats) ++ctx.stats->cut_sources[tag];
    }
  };
  auto done = [&] { return best && best->size() < k; };
  for (int side = 0; side < 2 && !done(); ++side) {
    const DirectedGraph& h = side == 0 ? g : rev;
    const bool reversed = side == 1;
    const std::uint64_t s = derive_seed(seed, {static_cast<std::uint64_t>(side)});
    offer(detect_unbalanced_directed(h, std::min(ell, n), k, derive_seed(s, {1}), cfg.scratch, ctx), reversed,
          "unbalanced");
    if (done()) break;
    if (2 * k >= n) {
      const std::size_t a = std::max<std::size_t>(2, n / 10);
      offer(detect_unbalanced_directed(h, std::min(a, n), k, derive_seed(s, {2}), cfg.scratch, ctx), reversed,
            "extreme");
      if (done()) break;
    }
    offer(detect_balanced_directed(h, ell, k, derive_seed(s, {3}), cfg.directed, ctx), reversed, "balanced");
  }
  return best;
}

// Vertex connectivity of a digraph: the fewest vertices whose removal
// leaves a graph that is not strongly connected.
inline ConnectivityResult directed_vertex_connectivity(const DirectedGraph& g, const RunConfig& cfg = {},
                                                       const ExecContext& ctx = {},
                                                       std::vector<ProbeRecord>* transcript = nullptr) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw InvalidQuery("vertex connectivity needs at least two vertices");
  if (is_complete(g)) return {n - 1, std::nullopt};
  if (auto cut = disconnection_cut(g)) return {0, std::move(cut)};

  const std::size_t ell = clamp_ell(n, cfg.directed.ell ? cfg.directed.ell : default_ell(n, g.edge_count()));
  DirectedGraph rev = reverse(g);
  VertexCut best = *min_degree_cut(g);
  if (auto in_cut = min_degree_cut(rev)) {
    VertexCut flipped = flip_cut(std::move(*in_cut));
    if (better_cut(flipped, best)) best = std::move(flipped);
  }
  std::size_t probe_index = 0;
  auto probe = [&](std::size_t k) {
    return directed_detect_below_k(g, rev, k, ell, derive_seed(cfg.seed, {0xd1, probe_index++, k}), cfg, ctx);
  };
  best = binary_search_cut(1, std::move(best), probe, transcript);
  return {best.size(), std::move(best)};
}

}  // namespace vconn
