// Reads an edge list (file argument or stdin), prints kappa and a minimum
// vertex cut, and cross-checks the answer against the exact baseline.
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "vconn/vconn.hpp"

int main(int argc, char** argv) {
  std::string text;
  if (argc > 1) {
    std::ifstream f(argv[1]);
    if (!f) {
      std::cerr << "cannot open " << argv[1] << "\n";
      return 1;
    }
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  } else {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }

  try {
    auto loaded = vconn::load<vconn::UndirectedGraph>(text, vconn::GraphFormat::kEdgeList);
    const auto& g = loaded.graph;

    vconn::RunConfig cfg;
    cfg.seed = 7;
    vconn::RunStats stats;
    auto result = vconn::vertex_connectivity(g, cfg, &stats);

    std::cout << "n = " << g.vertex_count() << ", m = " << g.edge_count() << "\n";
    std::cout << "kappa = " << result.kappa << "\n";
    if (result.witness) {
      std::cout << "separator:";
      for (auto v : result.witness->separator) std::cout << ' ' << loaded.labels[v];
      std::cout << "\n";
    }
    auto flow = stats.flow();
    std::cout << "maxflow calls = " << flow.calls << ", instance edges = " << flow.total_edges << "\n";

    auto exact = vconn::oracle_vertex_connectivity(g);
    std::cout << "baseline agrees: " << (exact.kappa == result.kappa ? "yes" : "no") << "\n";
  } catch (const vconn::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
