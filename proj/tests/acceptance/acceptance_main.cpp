// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned below and never read from flags.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "support/brute.hpp"
#include "support/corpus.hpp"
#include "vconn/vconn.hpp"

namespace vconn::acceptance {
namespace {

constexpr double kKappaAgreement = 0.99;
constexpr double kIsolatingC = 8.0;
constexpr double kKernelFailureRate = 0.01;
constexpr double kKernelEdgeC = 50.0;
constexpr double kRecoveryFailureRate = 0.01;
constexpr double kL2Bracket = 0.99;
constexpr double kDirectedAgreement = 0.99;
constexpr double kAccountingC = 4.0;

// Running digest of everything a criterion observed; two runs of the same
// criterion must produce identical digests.
class Trace {
 public:
  void add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (x >> (8 * i)) & 0xff;
      h_ *= 0x100000001b3ULL;
    }
  }
  void add(const VertexSet& s) {
    add(s.size());
    for (VertexId v : s) add(v);
  }
  void add(const std::optional<VertexCut>& c) {
    add(c.has_value());
    if (c) {
      add(c->left);
      add(c->separator);
      add(c->right);
    }
  }
  [[nodiscard]] std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct Verdict {
  bool pass = false;
  std::string summary;
  std::uint64_t digest = 0;
};

std::string ratio(std::size_t a, std::size_t b) {
  std::ostringstream o;
  o << a << "/" << b;
  return o.str();
}

std::string fixed(double x, int digits = 3) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << x;
  return o.str();
}

// Criteria 1 and 9 share the corpus run.
struct CorpusRun {
  std::size_t runs = 0;
  std::size_t agree = 0;
  std::size_t valid = 0;
  std::size_t within = 0;
  double worst_ratio = 0;
  std::string worst;
  std::uint64_t digest = 0;
};

CorpusRun run_corpus() {
  CorpusRun out;
  Trace trace;
  for (const auto& [name, g] : testing::undirected_corpus(500, 2024)) {
    RunStats st;
    RunConfig cfg;
    auto r = vertex_connectivity(g, cfg, &st);
    auto o = oracle_vertex_connectivity(g);
    ++out.runs;
    out.agree += r.kappa == o.kappa;
    const bool ok = r.witness ? validate_vertex_cut(g, *r.witness) && r.witness->size() == r.kappa
                              : r.kappa + 1 == g.vertex_count() && is_complete(g);
    out.valid += ok;
    const auto total = st.flow().total_edges;
    const double bound = accounting_bound(g.vertex_count(), std::max<std::size_t>(g.edge_count(), 1), kAccountingC);
    out.within += static_cast<double>(total) <= bound;
    const double ratio_here = static_cast<double>(total) / bound;
    if (ratio_here > out.worst_ratio) {
      out.worst_ratio = ratio_here;
      out.worst = name;
    }
    trace.add(r.kappa);
    trace.add(r.witness);
    trace.add(total);
    trace.add(st.flow().calls);
  }
  out.digest = trace.digest();
  return out;
}

Verdict criterion_oracle_equivalence(const CorpusRun& c) {
  const bool pass = static_cast<double>(c.agree) >= kKappaAgreement * static_cast<double>(c.runs) && c.valid == c.runs;
  return {pass, "kappa agreement " + ratio(c.agree, c.runs) + ", witnesses valid " + ratio(c.valid, c.runs), c.digest};
}

Verdict criterion_accounting(const CorpusRun& c) {
  return {c.within == c.runs,
          "runs within " + fixed(kAccountingC, 0) + "*m*ceil(lg n)^5: " + ratio(c.within, c.runs) + ", worst ratio " +
              fixed(c.worst_ratio, 4) + " (" + c.worst + ")",
          c.digest};
}

Verdict criterion_goldens() {
  struct Case {
    std::string name;
    UndirectedGraph g;
    std::size_t want;
  };
  std::vector<Case> cases;
  for (std::size_t n = 3; n <= 40; ++n) cases.push_back({"C" + std::to_string(n), gen::cycle(n), 2});
  for (std::size_t n = 2; n <= 12; ++n) cases.push_back({"K" + std::to_string(n), gen::complete(n), n - 1});
  for (std::size_t a = 1; a <= 6; ++a)
    for (std::size_t b = a; b <= 8; ++b)
      cases.push_back({"K" + std::to_string(a) + "," + std::to_string(b), gen::complete_bipartite(a, b), a});
  cases.push_back({"petersen", gen::petersen(), 3});
  cases.push_back({"Q3", gen::hypercube(3), 3});
  cases.push_back({"Q4", gen::hypercube(4), 4});
  for (std::size_t a = 3; a <= 8; ++a) cases.push_back({"barbell" + std::to_string(a), gen::barbell(a), 1});
  std::size_t ok = 0;
  std::string first_bad;
  Trace trace;
  for (const auto& c : cases) {
    auto r = vertex_connectivity(c.g);
    const bool good = r.kappa == c.want && (!r.witness || validate_vertex_cut(c.g, *r.witness));
    ok += good;
    if (!good && first_bad.empty()) first_bad = c.name;
    trace.add(r.kappa);
    trace.add(r.witness);
  }
  std::string s = "exact " + ratio(ok, cases.size());
  if (!first_bad.empty()) s += ", first mismatch " + first_bad;
  return {ok == cases.size(), s, trace.digest()};
}

Verdict criterion_menger() {
  std::size_t pairs = 0, ok = 0, graphs = 0;
  Trace trace;
  auto check = [&](const auto& g) {
    ++graphs;
    const std::size_t n = g.vertex_count();
    for (VertexId s = 0; s < n; ++s)
      for (VertexId t = 0; t < n; ++t) {
        if (s == t || g.has_edge(s, t)) continue;
        if constexpr (!std::is_same_v<std::decay_t<decltype(g)>, DirectedGraph>)
          if (t < s) continue;
        auto res = st_vertex_connectivity(g, s, t);
        std::vector<char> removed = membership(n, res.separator);
        const VertexId src[] = {s};
        const bool separates = !reachable(g, src, removed)[t];
        ++pairs;
        ok += separates && res.separator.size() == res.value && res.value == testing::brute_st_separator(g, s, t);
        trace.add(res.value);
        trace.add(res.separator);
      }
  };
  // Every labelled graph on up to five vertices.
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<Edge> all;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) all.push_back({u, v});
    for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
      std::vector<Edge> e;
      for (std::size_t i = 0; i < all.size(); ++i)
        if ((mask >> i) & 1) e.push_back(all[i]);
      check(UndirectedGraph(n, e));
    }
  }
  Rng rng(derive_seed(3, {0x3e}));
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + uniform_below(rng, 7);
    const double p = 0.2 + 0.6 * uniform_unit(rng);
    if (i % 2 == 0)
      check(gen::gnp(n, p, rng));
    else
      check(gen::random_digraph(n, p, rng));
  }
  return {ok == pairs, "pairs exact " + ratio(ok, pairs) + " over " + std::to_string(graphs) + " graphs", trace.digest()};
}

VertexSet random_independent(const UndirectedGraph& g, std::size_t want, Rng& rng) {
  std::vector<VertexId> order(g.vertex_count());
  std::iota(order.begin(), order.end(), VertexId{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  std::vector<char> blocked(g.vertex_count(), 0);
  VertexSet out;
  for (VertexId v : order) {
    if (blocked[v] || out.size() == want) continue;
    out.push_back(v);
    blocked[v] = 1;
    for (VertexId w : g.neighbors(v)) blocked[w] = 1;
  }
  return normalized(out);
}

Verdict criterion_isolating() {
  Rng rng(derive_seed(4, {0x150}));
  std::size_t instances = 0, cuts = 0, exact = 0, within = 0;
  double worst = 0;
  Trace trace;
  while (instances < 200) {
    const std::size_t n = 6 + uniform_below(rng, 45);
    auto g = gen::gnp(n, 0.05 + 0.5 * uniform_unit(rng), rng);
    auto terms = random_independent(g, 2 + uniform_below(rng, 12), rng);
    if (terms.size() < 2) continue;
    ++instances;
    FlowLedger ledger;
    auto res = isolating_cuts(g, terms, ExecContext{nullptr, &ledger, nullptr, 1});
    for (const auto& c : res.cuts) {
      VertexSet others;
      for (VertexId w : terms)
        if (w != c.terminal) others.push_back(w);
      const VertexId a[] = {c.terminal};
      ++cuts;
      exact += c.separator.size() == set_vertex_connectivity(g, a, others).value;
      trace.add(c.separator);
    }
    const double lg = std::max(1.0, std::ceil(std::log2(static_cast<double>(terms.size()))));
    const double bound = kIsolatingC * static_cast<double>(std::max<std::size_t>(g.edge_count(), 1)) * lg;
    const double used = static_cast<double>(ledger.snapshot().total_edges);
    within += used <= bound;
    worst = std::max(worst, used / bound);
    trace.add(ledger.snapshot().total_edges);
  }
  return {exact == cuts && within == instances,
          "cut sizes exact " + ratio(exact, cuts) + ", accounting within C=8 " + ratio(within, instances) +
              ", worst ratio " + fixed(worst),
          trace.digest()};
}

Verdict criterion_kernel() {
  std::size_t kernels = 0, bad = 0, queries = 0, edge_within = 0;
  double worst_edges = 0;
  Trace trace;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(derive_seed(5, {0x4e, seed}));
    const std::size_t k = 4 + uniform_below(rng, 9);
    const std::size_t r = 2 * k + uniform_below(rng, 30);
    auto p = gen::planted_scratch(k, r, k - 2 + uniform_below(rng, 2), rng);
    const UndirectedGraph& g = p.graph;
    const std::size_t n = g.vertex_count();
    for (std::size_t ell : {1u, 2u, 4u}) {
      NeighborOracle<UndirectedGraph> oracle(g, k, ell, derive_seed(seed, {ell}));
      const double ln = std::ceil(std::log(static_cast<double>(n)));
      for (int rep = 0; rep < 4; ++rep) {
        auto sample = sample_each(n, 1.0 / (8.0 * static_cast<double>(ell)), rng);
        auto ts = make_terminal_sample(g, sample);
        if (ts.terminals.empty()) continue;
        std::vector<VertexId> sources = p.cut.left;
        sources.push_back(static_cast<VertexId>(uniform_below(rng, n)));
        for (VertexId x : sources) {
          ++queries;
          auto res = sketchy_search(oracle, x, ts, 16 * k);
          trace.add(static_cast<std::uint64_t>(res.reason));
          if (!res.kernel) continue;
          ++kernels;
          VertexSet tx;
          for (VertexId t : ts.terminals)
            if (t != x && !g.has_edge(x, t)) tx.push_back(t);
          const VertexId src[] = {x};
          auto direct = set_vertex_connectivity(g, src, tx);
          auto lifted = solve_kernel(*res.kernel, {});
          bad += lifted.kernel_value + res.kernel->z.size() != direct.value;
          const double cap = kKernelEdgeC * static_cast<double>(k * ell) * ln;
          const double used = static_cast<double>(res.kernel->edge_count());
          edge_within += used <= cap;
          worst_edges = std::max(worst_edges, used / cap);
          trace.add(lifted.separator);
        }
      }
    }
  }
  const bool pass = kernels > 0 && static_cast<double>(bad) <= kKernelFailureRate * static_cast<double>(kernels);
  return {pass,
          "kernels " + std::to_string(kernels) + " of " + std::to_string(queries) + " queries, mismatches " +
              ratio(bad, kernels) + "; kernel edges within C=50 bound " + ratio(edge_within, kernels) +
              " (soft), worst ratio " + fixed(worst_edges),
          trace.digest()};
}

SparseVector random_vector(std::size_t n, std::size_t support, Rng& rng) {
  SparseVector v;
  for (VertexId i : sample_distinct(n, support, rng)) v.push_back({i, bernoulli(rng, 0.5) ? 1 : -1});
  return v;
}

// Flips entries of b that would double an entry of a, keeping a + b in
// {-1, 0, 1}; overlapping indices then cancel.
SparseVector cancelling(const SparseVector& a, SparseVector b) {
  std::map<VertexId, std::int32_t> av;
  for (auto e : a) av[e.index] = e.value;
  for (auto& e : b)
    if (auto it = av.find(e.index); it != av.end()) e.value = -it->second;
  return b;
}

SparseVector add_vectors(const SparseVector& a, const SparseVector& b) {
  std::map<VertexId, std::int32_t> sum;
  for (auto e : a) sum[e.index] += e.value;
  for (auto e : b) sum[e.index] += e.value;
  SparseVector out;
  for (auto [i, x] : sum)
    if (x != 0) out.push_back({i, x});
  return out;
}

Verdict criterion_sketches() {
  Trace trace;
  // (a) linearity.
  std::size_t lin_ok = 0;
  const std::size_t lin_trials = 10000;
  {
    Rng rng(derive_seed(6, {0xa}));
    for (std::size_t t = 0; t < lin_trials; ++t) {
      SketchOptions small;
      small.l2_rows = 64;
      SketchContext ctx(128, 6, derive_seed(6, {0xa, t}), small);
      auto u = random_vector(128, uniform_below(rng, 16), rng);
      auto v = cancelling(u, random_vector(128, uniform_below(rng, 16), rng));
      auto w = add_vectors(u, v);
      lin_ok += l2_sketch(ctx, u) + l2_sketch(ctx, v) == l2_sketch(ctx, w) &&
                sr_combine(sr_sketch(ctx, u), sr_sketch(ctx, v), Sign::kPlus) == sr_sketch(ctx, w);
    }
  }
  // (b) recovery below and above the sparsity, plus decode soundness.
  std::size_t exact_ok = 0, dense_ok = 0, false_entries = 0, decodes = 0;
  const std::size_t rec_trials = 10000;
  {
    Rng rng(derive_seed(6, {0xb}));
    for (std::size_t t = 0; t < rec_trials; ++t) {
      const std::size_t s = 1 + uniform_below(rng, 12);
      SketchContext ctx(500, s, derive_seed(6, {0xb, t}));
      auto sparse = random_vector(500, uniform_below(rng, s + 1), rng);
      auto d = sr_decode(ctx, sr_sketch(ctx, sparse));
      exact_ok += std::holds_alternative<SparseVector>(d) && std::get<SparseVector>(d) == sparse;
      auto dense = random_vector(500, s + 1 + uniform_below(rng, 3 * s), rng);
      auto e = sr_decode(ctx, sr_sketch(ctx, dense));
      dense_ok += std::holds_alternative<TooDense>(e);
      trace.add(std::holds_alternative<TooDense>(e));
    }
    for (std::size_t block = 0; decodes < 1000000; ++block) {
      const std::size_t s = 1 + block % 8;
      SketchContext ctx(256, s, derive_seed(6, {0xc, block}));
      for (int i = 0; i < 1000; ++i, ++decodes) {
        auto v = random_vector(256, uniform_below(rng, 3 * s + 1), rng);
        auto out = sr_decode(ctx, sr_sketch(ctx, v));
        if (auto* got = std::get_if<SparseVector>(&out)) {
          false_entries += *got != v;
          trace.add(got->size());
        }
      }
    }
  }
  // (c) l2 bracket.
  std::size_t bracket_ok = 0;
  const std::size_t l2_trials = 10000;
  {
    Rng rng(derive_seed(6, {0xd}));
    for (std::size_t t = 0; t < l2_trials; ++t) {
      SketchContext ctx(400, 2, derive_seed(6, {0xd, t}));
      auto v = random_vector(400, 1 + uniform_below(rng, 60), rng);
      const double norm = std::sqrt(static_cast<double>(v.size()));
      const double est = l2_estimate(l2_sketch(ctx, v));
      bracket_ok += est >= norm && est <= 1.1 * norm;
      trace.add(static_cast<std::uint64_t>(std::llround(est * 1e9)));
    }
  }
  const bool pass = lin_ok == lin_trials &&
                    static_cast<double>(rec_trials - exact_ok) <= kRecoveryFailureRate * rec_trials &&
                    static_cast<double>(rec_trials - dense_ok) <= kRecoveryFailureRate * rec_trials &&
                    false_entries == 0 &&
                    static_cast<double>(bracket_ok) >= kL2Bracket * l2_trials;
  return {pass,
          "linearity " + ratio(lin_ok, lin_trials) + ", exact recovery " + ratio(exact_ok, rec_trials) +
              ", too-dense flagged " + ratio(dense_ok, rec_trials) + ", false decodes " +
              ratio(false_entries, decodes) + ", l2 bracket " + ratio(bracket_ok, l2_trials),
          trace.digest()};
}

Verdict criterion_certificate() {
  Rng rng(derive_seed(7, {0xce}));
  std::size_t checks = 0, preserved = 0, sized = 0;
  Trace trace;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + uniform_below(rng, 8);
    auto g = gen::gnp(n, 0.2 + 0.7 * uniform_unit(rng), rng);
    const std::size_t kg = oracle_vertex_connectivity(g).kappa;
    for (std::size_t k = 1; k < n; ++k) {
      auto h = k_certificate(g, k).graph;
      const std::size_t kh = oracle_vertex_connectivity(h).kappa;
      ++checks;
      preserved += std::min(kh, k) == std::min(kg, k);
      sized += h.edge_count() <= n * k;
      trace.add(h.edge_count());
      trace.add(kh);
    }
  }
  return {preserved == checks && sized == checks,
          "min(kappa,k) preserved " + ratio(preserved, checks) + ", |E(H)| <= nk " + ratio(sized, checks),
          trace.digest()};
}

Verdict criterion_directed() {
  Rng rng(derive_seed(8, {0xd1}));
  std::size_t runs = 0, agree = 0, valid = 0, symmetric = 0;
  Trace trace;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 3 + uniform_below(rng, 23);
    const double p = 0.15 + 0.75 * uniform_unit(rng);
    auto g = i % 10 == 9 ? gen::tournament(n, rng) : gen::random_digraph(n, p, rng);
    RunConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(i);
    auto r = directed_vertex_connectivity(g, cfg);
    auto o = oracle_directed(g);
    auto rev = oracle_directed(reverse(g));
    ++runs;
    agree += r.kappa == o.kappa;
    symmetric += o.kappa == rev.kappa;
    valid += r.witness ? validate_vertex_cut(g, *r.witness) && r.witness->size() == r.kappa : is_complete(g);
    trace.add(r.kappa);
    trace.add(r.witness);
  }
  const bool pass = static_cast<double>(agree) >= kDirectedAgreement * static_cast<double>(runs) && valid == runs &&
                    symmetric == runs;
  return {pass,
          "kappa agreement " + ratio(agree, runs) + ", witnesses valid " + ratio(valid, runs) +
              ", kappa(G) = kappa(G^R) " + ratio(symmetric, runs),
          trace.digest()};
}

struct Criteria {
  std::vector<Verdict> verdicts;
  std::vector<double> seconds;
};

Criteria run_all() {
  Criteria c;
  auto timed = [&](const std::function<Verdict()>& f) {
    auto start = std::chrono::steady_clock::now();
    c.verdicts.push_back(f());
    c.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  };
  CorpusRun corpus;
  timed([&] {
    corpus = run_corpus();
    return criterion_oracle_equivalence(corpus);
  });
  timed(criterion_goldens);
  timed(criterion_menger);
  timed(criterion_isolating);
  timed(criterion_kernel);
  timed(criterion_sketches);
  timed(criterion_certificate);
  timed(criterion_directed);
  timed([&] { return criterion_accounting(corpus); });
  return c;
}

}  // namespace
}  // namespace vconn::acceptance

int main() {
  using namespace vconn::acceptance;
  static const char* kNames[] = {"oracle equivalence (undirected)",
                                 "structured goldens",
                                 "maxflow Menger check",
                                 "isolating cuts",
                                 "kernel equivalence",
                                 "sketch suite",
                                 "certificate",
                                 "directed oracle equivalence",
                                 "maxflow accounting"};
  bool all = true;
  Criteria first;
  try {
    first = run_all();
  } catch (const std::exception& e) {
    std::cout << "FAIL harness: " << e.what() << "\n";
    return 1;
  }
  for (std::size_t i = 0; i < first.verdicts.size(); ++i) {
    const auto& v = first.verdicts[i];
    all &= v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << kNames[i] << ": " << v.summary << " ["
              << fixed(first.seconds[i], 1) << "s]\n"
              << std::flush;
  }
  // Determinism: a second full pass must reproduce every digest.
  Criteria second = run_all();
  std::size_t same = 0;
  for (std::size_t i = 0; i < first.verdicts.size(); ++i)
    same += first.verdicts[i].digest == second.verdicts[i].digest &&
            first.verdicts[i].summary == second.verdicts[i].summary;
  const bool det = same == first.verdicts.size();
  all &= det;
  std::cout << (det ? "PASS" : "FAIL") << " 10 determinism: criteria reproduced " << same << "/"
            << first.verdicts.size() << "\n";
  return all ? 0 : 1;
}
