#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "vconn/maxflow.hpp"
#include "vconn/sketch.hpp"

namespace vconn {

// Repetition schedule for the isolating-cuts detector.
struct NonScratchConfig {
  double c1 = 1.0;           // J = max(j_floor, ceil(c1 * ln^3 n))
  std::size_t j_floor = 8;
  bool early_exit = true;    // stop at the first verified cut below k
};

// Parameters of the sketch-based detector for cuts with a tiny side.
struct ScratchConfig {
  double level_divisor = 100;     // levels 2^i <= k / (level_divisor * log2 n)
  double x_factor = 1.0;          // |X| = ceil(x_factor * n ln n / l)
  double c2 = 3.0;                // J = max(j_floor, ceil(c2 * log2 n))
  std::size_t j_floor = 8;
  double threshold_factor = 100;  // oracle sparsity s = ceil(threshold_factor * l * ln n)
  std::size_t countlist_factor = 16;
  bool early_exit = true;
  SketchOptions sketch;
};

struct DirectedConfig {
  std::size_t ell = 0;  // 0 = default_ell(n, m)
  double c3 = 3.0;      // balanced case samples ceil(c3 * (n / ell) * ln n) pairs
};

// Everything that influences a run's randomness or work.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string flow = "dinic";
  std::size_t threads = 1;
  double accounting_constant = 4.0;  // soft bound C * m * ceil(lg n)^5
  NonScratchConfig nonscratch;
  ScratchConfig scratch;
  DirectedConfig directed;
};

// Deterministic work counters reported next to the flow totals.
struct DetectorStats {
  std::uint64_t isolating_calls = 0;
  std::uint64_t duplicate_samples = 0;
  std::uint64_t kernel_queries = 0;
  std::uint64_t kernels_built = 0;
  std::uint64_t kernel_edges = 0;
  std::uint64_t bot_results = 0;
  std::uint64_t pair_flows = 0;
  std::map<std::string, std::uint64_t> cut_sources;  // which detector produced each improving cut

  DetectorStats& operator+=(const DetectorStats& o) {
    isolating_calls += o.isolating_calls;
    duplicate_samples += o.duplicate_samples;
    kernel_queries += o.kernel_queries;
    kernels_built += o.kernels_built;
    kernel_edges += o.kernel_edges;
    bot_results += o.bot_results;
    pair_flows += o.pair_flows;
    for (const auto& [k, v] : o.cut_sources) cut_sources[k] += v;
    return *this;
  }
};

// Per-call plumbing shared by the detectors.
struct ExecContext {
  const FlowEngine* engine = nullptr;
  FlowLedger* ledger = nullptr;
  DetectorStats* stats = nullptr;
  std::size_t threads = 1;

  [[nodiscard]] FlowOptions flow(std::string_view phase, FlowLedger* override_ledger = nullptr) const {
    return {engine, override_ledger ? override_ledger : ledger, phase};
  }
};

}  // namespace vconn
