#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vconn/certificate.hpp"
#include "vconn/config.hpp"
#include "vconn/directed.hpp"
#include "vconn/error.hpp"
#include "vconn/graph.hpp"
#include "vconn/isolating.hpp"
#include "vconn/kernel.hpp"
#include "vconn/maxflow.hpp"
#include "vconn/search.hpp"

namespace vconn {

struct RunStats {
  FlowLedger ledger{true};
  DetectorStats detectors;
  std::vector<ProbeRecord> transcript;
  std::map<std::string, double> timings_ms;
  std::string shortcut;  // "complete", "disconnected", "articulation" or empty

  [[nodiscard]] FlowStats flow() const { return ledger.snapshot(); }
};

// C * m * ceil(lg n)^5, the instance-size budget the accounting check uses.
inline double accounting_bound(std::size_t n, std::size_t m, double c) {
  const double lg = static_cast<double>(SketchContext::ceil_log2(std::max<std::size_t>(n, 2)));
  return c * static_cast<double>(m) * std::pow(lg, 5);
}

namespace detail {

class PhaseTimer {
 public:
  PhaseTimer(std::map<std::string, double>* sink, std::string name)
      : sink_(sink), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~PhaseTimer() {
    if (!sink_) return;
    auto d = std::chrono::steady_clock::now() - start_;
    (*sink_)[name_] += std::chrono::duration<double, std::milli>(d).count();
  }
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;

 private:
  std::map<std::string, double>* sink_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

inline std::optional<VertexCut> lift_to(const UndirectedGraph& g, const std::optional<VertexCut>& cut) {
  if (!cut) return std::nullopt;
  auto lifted = cut_from_separator(g, cut->separator, cut->left.front());
  if (!lifted || !validate_vertex_cut(g, *lifted)) return std::nullopt;
  return lifted;
}

}  // namespace detail

// Sparsify to a k-certificate, then try both detectors on it. Cuts of the
// certificate are re-derived in g. Any cut returned has size < k when
// kappa(g) < k (whp) and is always a valid cut of g.
inline VertexCut detect_below_k(const UndirectedGraph& g, std::size_t k, std::uint64_t seed,
                                const RunConfig& cfg = {}, const ExecContext& ctx = {},
                                std::map<std::string, double>* timings = nullptr) {
  if (k == 0) throw InvalidQuery("detect_below_k: k must be positive");
  auto fallback = min_degree_cut(g);
  if (!fallback) throw InvalidQuery("detect_below_k: graph is complete");
  VertexCut best = *fallback;
  auto offer = [&](const std::optional<VertexCut>& cut, const char* tag) {
    auto lifted = detail::lift_to(g, cut);
    if (lifted && better_cut(*lifted, best)) {
      best = std::move(*lifted);
      if (ctx.stats) ++ctx.stats->cut_sources[tag];
    }
  };
  if (best.size() < k) return best;

  UndirectedGraph h;
  {
    detail::PhaseTimer t(timings, "certificate");
    h = k_certificate(g, k).graph;
  }
  {
    detail::PhaseTimer t(timings, "scratch");
    offer(detect_scratch(h, k, derive_seed(seed, {0x5c}), cfg.scratch, ctx), "scratch");
  }
  if (best.size() < k && cfg.nonscratch.early_exit) return best;
  {
    detail::PhaseTimer t(timings, "nonscratch");
    offer(detect_nonscratch(h, k, derive_seed(seed, {0x95}), cfg.nonscratch, ctx), "nonscratch");
  }
  return best;
}

// Cut with separator {a} for the lowest-id articulation point a.
inline std::optional<VertexCut> articulation_cut(const UndirectedGraph& g) {
  auto points = articulation_points(g);
  if (points.empty()) return std::nullopt;
  VertexId a = points.front();
  VertexId sep[] = {a};
  return cut_from_separator(g, sep, g.neighbors(a).front());
}

inline ConnectivityResult vertex_connectivity(const UndirectedGraph& g, const RunConfig& cfg = {},
                                              RunStats* stats = nullptr) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw InvalidQuery("vertex connectivity needs at least two vertices");
  auto mark = [&](const char* what) {
    if (stats) stats->shortcut = what;
  };
  if (is_complete(g)) {
    mark("complete");
    return {n - 1, std::nullopt};
  }
  if (auto cut = disconnection_cut(g)) {
    mark("disconnected");
    return {0, std::move(cut)};
  }
  if (auto cut = articulation_cut(g)) {
    mark("articulation");
    return {1, std::move(cut)};
  }

  auto engine = make_flow_engine(cfg.flow);
  ExecContext ctx{engine.get(), stats ? &stats->ledger : nullptr, stats ? &stats->detectors : nullptr,
                  std::max<std::size_t>(1, cfg.threads)};
  std::size_t probe_index = 0;
  auto probe = [&](std::size_t k) -> std::optional<VertexCut> {
    return detect_below_k(g, k, derive_seed(cfg.seed, {0xb5, probe_index++, k}), cfg, ctx,
                          stats ? &stats->timings_ms : nullptr);
  };
  VertexCut best = binary_search_cut(2, *min_degree_cut(g), probe, stats ? &stats->transcript : nullptr);
  return {best.size(), std::move(best)};
}

inline ConnectivityResult vertex_connectivity(const DirectedGraph& g, const RunConfig& cfg = {},
                                              RunStats* stats = nullptr) {
  auto engine = make_flow_engine(cfg.flow);
  ExecContext ctx{engine.get(), stats ? &stats->ledger : nullptr, stats ? &stats->detectors : nullptr,
                  std::max<std::size_t>(1, cfg.threads)};
  return directed_vertex_connectivity(g, cfg, ctx, stats ? &stats->transcript : nullptr);
}

}  // namespace vconn
