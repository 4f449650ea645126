#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "vconn/graph.hpp"

namespace vconn {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based seed splitter: every (master, tag...) tuple maps to its own
// independent-looking stream seed, so no component ever shares a stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t + 0x3c6ef372fe94f82bULL));
  return h;
}

// Uniform in [0, bound), bound > 0; rejection keeps it exact and portable.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

inline bool bernoulli(Rng& rng, double p) { return uniform_unit(rng) < p; }

// Each of `candidates` independently with probability p, ascending.
inline VertexSet sample_each(std::span<const VertexId> candidates, double p, Rng& rng) {
  VertexSet out;
  for (VertexId v : candidates)
    if (bernoulli(rng, p)) out.push_back(v);
  return out;
}

inline VertexSet sample_each(std::size_t n, double p, Rng& rng) {
  VertexSet out;
  for (VertexId v = 0; v < n; ++v)
    if (bernoulli(rng, p)) out.push_back(v);
  return out;
}

// `count` distinct vertices of [0, n) (all of them when count >= n), ascending.
inline VertexSet sample_distinct(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), VertexId{0});
  if (count >= n) return all;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + uniform_below(rng, n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace vconn
