#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vconn/graph.hpp"

namespace vconn {

struct ProbeRecord {
  std::size_t k = 0;
  std::optional<std::size_t> found;  // size of the cut the probe returned
  std::size_t best = 0;              // best size known after the probe
  bool final_probe = false;
};

// Monte Carlo binary search on k. `probe(k)` returns some valid cut and is
// trusted only when it is smaller than k. The best cut ever seen is kept,
// and a last probe at k = best gives one more chance to improve it.
inline VertexCut binary_search_cut(std::size_t lower, VertexCut best,
                                   const std::function<std::optional<VertexCut>(std::size_t)>& probe,
                                   std::vector<ProbeRecord>* transcript) {
  auto run = [&](std::size_t k, bool final_probe) {
    auto cut = probe(k);
    ProbeRecord rec{k, std::nullopt, 0, final_probe};
    if (cut) {
      rec.found = cut->size();
      if (better_cut(*cut, best)) best = std::move(*cut);
    }
    rec.best = best.size();
    if (transcript) transcript->push_back(rec);
    return rec.found && *rec.found < k;
  };
  std::size_t lo = lower;  // every k <= lo has been ruled out or assumed
  while (lo < best.size()) {
    const std::size_t k = lo + (best.size() - lo + 1) / 2;
    if (!run(k, false)) lo = k;
  }
  if (best.size() > lower) run(best.size(), true);
  return best;
}

}  // namespace vconn
