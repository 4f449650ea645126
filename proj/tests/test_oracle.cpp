#include <gtest/gtest.h>

#include "support/brute.hpp"
#include "support/corpus.hpp"
#include "vconn/generators.hpp"
#include "vconn/oracle.hpp"
#include "vconn/random.hpp"

namespace vconn {
namespace {

TEST(Oracle, Goldens) {
  EXPECT_EQ(oracle_vertex_connectivity(gen::cycle(6)).kappa, 2u);
  EXPECT_EQ(oracle_vertex_connectivity(gen::complete_bipartite(3, 3)).kappa, 3u);
  EXPECT_EQ(oracle_vertex_connectivity(gen::wheel(6)).kappa, 3u);
  EXPECT_EQ(oracle_vertex_connectivity(gen::petersen()).kappa, 3u);
  EXPECT_EQ(oracle_vertex_connectivity(gen::hypercube(4)).kappa, 4u);
  EXPECT_EQ(oracle_vertex_connectivity(gen::barbell(5)).kappa, 1u);
}

TEST(Oracle, CompleteAndDisconnected) {
  auto k5 = oracle_vertex_connectivity(gen::complete(5));
  EXPECT_EQ(k5.kappa, 4u);
  EXPECT_TRUE(k5.complete());
  UndirectedGraph g(4, {{0, 1}, {2, 3}});
  auto r = oracle_vertex_connectivity(g);
  EXPECT_EQ(r.kappa, 0u);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(validate_vertex_cut(g, *r.witness));
  EXPECT_THROW(oracle_vertex_connectivity(UndirectedGraph(1, std::vector<Edge>{})), InvalidQuery);
}

TEST(Oracle, SmallBipartiteAgreesWithSubsetSearch) {
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = a; a + b <= 7; ++b) {
      auto g = gen::complete_bipartite(a, b);
      EXPECT_EQ(oracle_vertex_connectivity(g).kappa, testing::brute_kappa(g));
    }
}

TEST(Directed, Goldens) {
  EXPECT_EQ(oracle_directed(gen::directed_cycle(4)).kappa, 1u);
  auto k4 = oracle_directed(gen::complete_digraph(4));
  EXPECT_EQ(k4.kappa, 3u);
  EXPECT_TRUE(k4.complete());
  DirectedGraph path(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(oracle_directed(path).kappa, 0u);
}

TEST(Directed, TournamentsAgreeWithSubsetSearch) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = gen::tournament(8, rng);
    auto r = oracle_directed(g);
    EXPECT_EQ(r.kappa, oracle_exhaustive(g).kappa);
    EXPECT_EQ(r.kappa, testing::brute_kappa(g));
    if (r.witness) { EXPECT_TRUE(validate_vertex_cut(g, *r.witness)); }
  }
}

TEST(Exhaustive, Goldens) {
  auto tri = oracle_exhaustive(gen::complete(3));
  EXPECT_EQ(tri.kappa, 2u);
  EXPECT_TRUE(tri.complete());
  EXPECT_EQ(oracle_exhaustive(gen::path(4)).kappa, 1u);
  EXPECT_EQ(oracle_exhaustive(gen::hypercube(3)).kappa, 3u);
  EXPECT_THROW(oracle_exhaustive(gen::cycle(13)), InvalidQuery);
}

TEST(Agreement, AllPairsEqualsExhaustiveUpToNine) {
  std::vector<testing::NamedGraph> graphs;
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + uniform_below(rng, 8);
    static constexpr double kP[] = {0.2, 0.4, 0.6, 0.8};
    graphs.push_back({"r" + std::to_string(i), gen::gnp(n, kP[i % 4], rng)});
  }
  for (auto& g : testing::structured_family())
    if (g.graph.vertex_count() <= 9) graphs.push_back(g);
  for (const auto& [name, g] : graphs) {
    auto a = oracle_vertex_connectivity(g);
    auto b = oracle_exhaustive(g);
    EXPECT_EQ(a.kappa, b.kappa) << name;
    EXPECT_EQ(a.kappa, testing::brute_kappa(g)) << name;
    if (a.witness) {
      EXPECT_TRUE(validate_vertex_cut(g, *a.witness)) << name;
      EXPECT_EQ(a.witness->size(), a.kappa);
    }
    if (b.witness) { EXPECT_TRUE(validate_vertex_cut(g, *b.witness)) << name; }
  }
}

TEST(Agreement, DirectedRandomUpToNine) {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + uniform_below(rng, 8);
    auto g = gen::random_digraph(n, 0.3 + 0.5 * uniform_unit(rng), rng);
    EXPECT_EQ(oracle_directed(g).kappa, oracle_exhaustive(g).kappa) << i;
  }
}

TEST(Monotonicity, AddingAnEdgeNeverLowersKappa) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + uniform_below(rng, 10);
    auto g = gen::gnp(n, 0.4, rng);
    if (is_complete(g)) continue;
    std::vector<Edge> missing;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (!g.has_edge(u, v)) missing.push_back({u, v});
    auto edges = g.edges();
    edges.push_back(missing[uniform_below(rng, missing.size())]);
    UndirectedGraph h(n, edges);
    EXPECT_GE(oracle_vertex_connectivity(h).kappa, oracle_vertex_connectivity(g).kappa);
  }
}

TEST(Oracle, TieBreakIsLexicographic) {
  // C6 has many 2-separators; {0, 2} is the lexicographically smallest.
  auto r = oracle_vertex_connectivity(gen::cycle(6));
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->separator, (VertexSet{0, 2}));
}

}  // namespace
}  // namespace vconn
