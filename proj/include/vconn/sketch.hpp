#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "vconn/error.hpp"
#include "vconn/graph.hpp"
#include "vconn/random.hpp"

namespace vconn {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace mod61 {

inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t reduce(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kPrime) r -= kPrime;
  if (r >= kPrime) r -= kPrime;
  return r;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce(static_cast<unsigned __int128>(a) * b);
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

// value * x for value in {-1, 0, 1}, kept in [0, p).
inline std::uint64_t scaled(std::int64_t value, std::uint64_t x) {
  if (value == 0) return 0;
  return value > 0 ? x : sub(0, x);
}

inline std::uint64_t random_element(Rng& rng, std::uint64_t lo) {
  return lo + uniform_below(rng, kPrime - lo);
}

}  // namespace mod61

struct SparseEntry {
  VertexId index = 0;
  std::int32_t value = 0;
  bool operator==(const SparseEntry&) const = default;
};

// Non-zero entries sorted by index.
using SparseVector = std::vector<SparseEntry>;

inline SparseVector indicator(std::span<const VertexId> set) {
  SparseVector v;
  v.reserve(set.size());
  for (VertexId i : set) v.push_back({i, 1});
  return v;
}

struct SketchOptions {
  std::size_t l2_rows = 0;           // 0 picks max(l2_min_rows, l2_row_factor * ceil(lg n))
  std::size_t l2_min_rows = 2048;
  std::size_t l2_row_factor = 64;
  std::size_t recovery_extra_rows = 8;  // rows = ceil(lg n) + this
  bool sign_table = false;           // precompute every l2 sign (n * rows bytes)
};

// Shared randomness for every sketch over one universe [0, n). Sketches built
// from different contexts cannot be combined.
class SketchContext {
 public:
  SketchContext(std::size_t n, std::size_t sparsity, std::uint64_t seed, SketchOptions opt = {})
      : n_(n), sparsity_(sparsity), id_(next_id()) {
    if (n == 0) throw InvalidQuery("sketch universe must be non-empty");
    if (sparsity == 0) throw InvalidQuery("recovery sparsity must be positive");
    const std::size_t lg = ceil_log2(n);
    l2_rows_ = opt.l2_rows ? opt.l2_rows : std::max(opt.l2_min_rows, opt.l2_row_factor * std::max<std::size_t>(lg, 1));
    recovery_rows_ = lg + opt.recovery_extra_rows;
    buckets_ = 2 * sparsity;

    Rng rng(derive_seed(seed, {0x5ce7c4, n, sparsity}));
    poly_.resize(4 * l2_rows_);
    for (auto& c : poly_) c = mod61::random_element(rng, 0);
    hash_.resize(2 * recovery_rows_);
    for (std::size_t r = 0; r < recovery_rows_; ++r) {
      hash_[2 * r] = mod61::random_element(rng, 1);
      hash_[2 * r + 1] = mod61::random_element(rng, 0);
    }
    std::uint64_t z1 = mod61::random_element(rng, 2);
    std::uint64_t z2 = mod61::random_element(rng, 2);
    pow1_.resize(n + 1);
    pow2_.resize(n + 1);
    pow1_[0] = pow2_[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      pow1_[i] = mod61::mul(pow1_[i - 1], z1);
      pow2_[i] = mod61::mul(pow2_[i - 1], z2);
    }
    if (opt.sign_table) {
      signs_.resize(n * l2_rows_);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < l2_rows_; ++r)
          signs_[i * l2_rows_ + r] = static_cast<std::int8_t>(compute_sign(r, i));
    }
  }

  [[nodiscard]] std::size_t universe() const noexcept { return n_; }
  [[nodiscard]] std::size_t sparsity() const noexcept { return sparsity_; }
  [[nodiscard]] std::size_t l2_rows() const noexcept { return l2_rows_; }
  [[nodiscard]] std::size_t recovery_rows() const noexcept { return recovery_rows_; }
  [[nodiscard]] std::size_t buckets_per_row() const noexcept { return buckets_; }
  [[nodiscard]] std::uint64_t id() const noexcept { return id_; }

  // +-1 from a degree-3 polynomial hash (4-wise independent).
  [[nodiscard]] int l2_sign(std::size_t row, std::size_t index) const {
    if (!signs_.empty()) return signs_[index * l2_rows_ + row];
    return compute_sign(row, index);
  }

  [[nodiscard]] std::size_t bucket(std::size_t row, std::size_t index) const {
    std::uint64_t h = mod61::add(mod61::mul(hash_[2 * row], index), hash_[2 * row + 1]);
    return static_cast<std::size_t>(h % buckets_);
  }

  // Fingerprint bases raised to the 1-based position.
  [[nodiscard]] std::uint64_t pow1(std::size_t position) const { return pow1_[position]; }
  [[nodiscard]] std::uint64_t pow2(std::size_t position) const { return pow2_[position]; }

  void check_index(std::size_t index) const {
    if (index >= n_) throw InvalidQuery("sketch index " + std::to_string(index) + " out of range");
  }

  static std::size_t ceil_log2(std::size_t n) {
    std::size_t lg = 0;
    while ((std::size_t{1} << lg) < n) ++lg;
    return lg;
  }

 private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }

  int compute_sign(std::size_t row, std::size_t index) const {
    const std::uint64_t* c = &poly_[4 * row];
    std::uint64_t x = index;
    std::uint64_t h = c[3];
    h = mod61::add(mod61::mul(h, x), c[2]);
    h = mod61::add(mod61::mul(h, x), c[1]);
    h = mod61::add(mod61::mul(h, x), c[0]);
    return (h & 1) ? 1 : -1;
  }

  std::size_t n_;
  std::size_t sparsity_;
  std::uint64_t id_;
  std::size_t l2_rows_ = 0;
  std::size_t recovery_rows_ = 0;
  std::size_t buckets_ = 0;
  std::vector<std::uint64_t> poly_;
  std::vector<std::uint64_t> hash_;
  std::vector<std::uint64_t> pow1_;
  std::vector<std::uint64_t> pow2_;
  std::vector<std::int8_t> signs_;
};

inline void check_same_context(std::uint64_t a, std::uint64_t b) {
  if (a != b) throw InvalidQuery("sketches come from different contexts");
}

struct L2Sketch {
  std::uint64_t context = 0;
  std::vector<std::int32_t> acc;

  L2Sketch& operator+=(const L2Sketch& o) {
    check_same_context(context, o.context);
    for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += o.acc[r];
    return *this;
  }
  L2Sketch& operator-=(const L2Sketch& o) {
    check_same_context(context, o.context);
    for (std::size_t r = 0; r < acc.size(); ++r) acc[r] -= o.acc[r];
    return *this;
  }
  bool operator==(const L2Sketch&) const = default;
};

inline L2Sketch operator+(L2Sketch a, const L2Sketch& b) { return a += b; }
inline L2Sketch operator-(L2Sketch a, const L2Sketch& b) { return a -= b; }

inline L2Sketch l2_zero(const SketchContext& ctx) {
  return {ctx.id(), std::vector<std::int32_t>(ctx.l2_rows(), 0)};
}

// Adds value * e_index into the sketch.
inline void l2_update(const SketchContext& ctx, L2Sketch& sk, VertexId index, std::int32_t value) {
  ctx.check_index(index);
  for (std::size_t r = 0; r < sk.acc.size(); ++r) sk.acc[r] += value * ctx.l2_sign(r, index);
}

inline L2Sketch l2_sketch(const SketchContext& ctx, const SparseVector& v) {
  L2Sketch sk = l2_zero(ctx);
  for (const SparseEntry& e : v)
    if (e.value != 0) l2_update(ctx, sk, e.index, e.value);
  return sk;
}

// sqrt(1.1 * mean of squared projections): the mean is an unbiased estimate
// of ||v||^2, so with enough rows the result lands in [||v||, 1.1 ||v||].
inline double l2_estimate(const L2Sketch& sk) {
  if (sk.acc.empty()) return 0.0;
  double sum = 0;
  for (std::int32_t a : sk.acc) sum += static_cast<double>(a) * a;
  return std::sqrt(1.1 * sum / static_cast<double>(sk.acc.size()));
}

// One 1-sparse tester: value sum, 1-based index-weighted sum, and two
// polynomial fingerprints modulo 2^61 - 1.
struct RecoveryBucket {
  std::int64_t sigma = 0;
  std::int64_t eta = 0;
  std::uint64_t tau1 = 0;
  std::uint64_t tau2 = 0;

  [[nodiscard]] bool zero() const noexcept { return sigma == 0 && eta == 0 && tau1 == 0 && tau2 == 0; }
  bool operator==(const RecoveryBucket&) const = default;
};

struct RecoverySketch {
  std::uint64_t context = 0;
  std::vector<RecoveryBucket> buckets;  // row-major, rows x buckets_per_row
  bool operator==(const RecoverySketch&) const = default;
};

struct TooDense {
  bool operator==(const TooDense&) const = default;
};

using DecodeResult = std::variant<SparseVector, TooDense>;

inline RecoverySketch sr_zero(const SketchContext& ctx) {
  return {ctx.id(), std::vector<RecoveryBucket>(ctx.recovery_rows() * ctx.buckets_per_row())};
}

inline void sr_update(const SketchContext& ctx, RecoverySketch& sk, VertexId index, std::int32_t value) {
  ctx.check_index(index);
  if (value < -1 || value > 1) throw InvalidQuery("recovery sketch values must lie in {-1, 0, 1}");
  if (value == 0) return;
  const std::size_t pos = static_cast<std::size_t>(index) + 1;
  const std::uint64_t f1 = mod61::scaled(value, ctx.pow1(pos));
  const std::uint64_t f2 = mod61::scaled(value, ctx.pow2(pos));
  const std::size_t width = ctx.buckets_per_row();
  for (std::size_t r = 0; r < ctx.recovery_rows(); ++r) {
    RecoveryBucket& b = sk.buckets[r * width + ctx.bucket(r, index)];
    b.sigma += value;
    b.eta += value * static_cast<std::int64_t>(pos);
    b.tau1 = mod61::add(b.tau1, f1);
    b.tau2 = mod61::add(b.tau2, f2);
  }
}

inline RecoverySketch sr_sketch(const SketchContext& ctx, const SparseVector& v) {
  RecoverySketch sk = sr_zero(ctx);
  for (const SparseEntry& e : v) sr_update(ctx, sk, e.index, e.value);
  return sk;
}

enum class Sign { kPlus, kMinus };

inline RecoverySketch sr_combine(const RecoverySketch& a, const RecoverySketch& b, Sign sign) {
  check_same_context(a.context, b.context);
  RecoverySketch out = a;
  for (std::size_t i = 0; i < out.buckets.size(); ++i) {
    RecoveryBucket& o = out.buckets[i];
    const RecoveryBucket& y = b.buckets[i];
    if (sign == Sign::kPlus) {
      o.sigma += y.sigma;
      o.eta += y.eta;
      o.tau1 = mod61::add(o.tau1, y.tau1);
      o.tau2 = mod61::add(o.tau2, y.tau2);
    } else {
      o.sigma -= y.sigma;
      o.eta -= y.eta;
      o.tau1 = mod61::sub(o.tau1, y.tau1);
      o.tau2 = mod61::sub(o.tau2, y.tau2);
    }
  }
  return out;
}

// Collects every bucket that passes the 1-sparse test, then accepts the
// candidate set only if removing it leaves an all-zero sketch.
inline DecodeResult sr_decode(const SketchContext& ctx, const RecoverySketch& sk) {
  check_same_context(ctx.id(), sk.context);
  const std::size_t n = ctx.universe();
  SparseVector found;
  for (const RecoveryBucket& b : sk.buckets) {
    if (b.sigma != 1 && b.sigma != -1) continue;
    const std::int64_t pos = b.eta * b.sigma;
    if (pos < 1 || pos > static_cast<std::int64_t>(n)) continue;
    const auto p = static_cast<std::size_t>(pos);
    if (b.tau1 != mod61::scaled(b.sigma, ctx.pow1(p))) continue;
    if (b.tau2 != mod61::scaled(b.sigma, ctx.pow2(p))) continue;
    found.push_back({static_cast<VertexId>(p - 1), static_cast<std::int32_t>(b.sigma)});
  }
  std::sort(found.begin(), found.end(),
            [](const SparseEntry& x, const SparseEntry& y) {
              return x.index != y.index ? x.index < y.index : x.value < y.value;
            });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (std::size_t i = 1; i < found.size(); ++i)
    if (found[i].index == found[i - 1].index) return TooDense{};
  if (found.size() > ctx.sparsity()) return TooDense{};

  RecoverySketch residual = sk;
  for (const SparseEntry& e : found) sr_update(ctx, residual, e.index, -e.value);
  for (const RecoveryBucket& b : residual.buckets)
    if (!b.zero()) return TooDense{};
  return found;
}

}  // namespace vconn
