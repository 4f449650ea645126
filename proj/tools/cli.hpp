#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "vconn/vconn.hpp"

namespace vconn::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kFailure = 1, kParse = 2, kInvalid = 3 };

inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

struct Options {
  std::string input;
  std::string format = "edge-list";
  std::uint64_t seed = 0;
  bool json = false;
  bool stats = false;
  bool timings = false;
  bool directed = false;
  std::string flow = "dinic";
  std::size_t threads = 1;
  std::size_t k = 0;
  std::size_t l = 0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  std::string terminals;
  double level_divisor = 100;
};

// Input labels travel with every loaded graph; ids are dense internally.
struct Labels {
  std::vector<std::uint64_t> of;

  VertexId id(std::uint64_t label) const {
    auto it = std::lower_bound(of.begin(), of.end(), label);
    if (it == of.end() || *it != label) throw InvalidQuery("unknown vertex label " + std::to_string(label));
    return static_cast<VertexId>(it - of.begin());
  }
  json list(const VertexSet& s) const {
    json a = json::array();
    for (VertexId v : s) a.push_back(of[v]);
    return a;
  }
  std::string text(const VertexSet& s) const {
    std::string out;
    for (VertexId v : s) {
      if (!out.empty()) out += ' ';
      out += std::to_string(of[v]);
    }
    return out;
  }
};

inline json config_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"flow", c.flow},
          {"nonscratch", {{"c1", c.nonscratch.c1}, {"j_floor", c.nonscratch.j_floor}, {"early_exit", c.nonscratch.early_exit}}},
          {"scratch",
           {{"level_divisor", c.scratch.level_divisor},
            {"x_factor", c.scratch.x_factor},
            {"c2", c.scratch.c2},
            {"j_floor", c.scratch.j_floor},
            {"threshold_factor", c.scratch.threshold_factor},
            {"countlist_factor", c.scratch.countlist_factor}}},
          {"directed", {{"ell", c.directed.ell}, {"c3", c.directed.c3}}},
          {"accounting_constant", c.accounting_constant}};
}

inline json flow_json(const FlowStats& s) {
  return {{"maxflow_calls", s.calls}, {"total_vertices", s.total_vertices}, {"total_edges", s.total_edges}};
}

inline json stats_json(const RunStats& st, bool detailed, bool timings) {
  json j = flow_json(st.flow());
  if (detailed) {
    json phases = json::object();
    for (const auto& [name, s] : st.ledger.by_phase()) phases[name] = flow_json(s);
    j["phases"] = phases;
    const DetectorStats& d = st.detectors;
    j["detectors"] = {{"isolating_calls", d.isolating_calls}, {"duplicate_samples", d.duplicate_samples},
                      {"kernel_queries", d.kernel_queries},   {"kernels_built", d.kernels_built},
                      {"kernel_edges", d.kernel_edges},       {"bot_results", d.bot_results},
                      {"pair_flows", d.pair_flows},           {"cut_sources", d.cut_sources}};
    json tr = json::array();
    for (const ProbeRecord& p : st.transcript)
      tr.push_back({{"k", p.k}, {"found", p.found ? json(*p.found) : json(nullptr)}, {"best", p.best}, {"final", p.final_probe}});
    j["transcript"] = tr;
    if (!st.shortcut.empty()) j["shortcut"] = st.shortcut;
  }
  if (timings) j["timings_ms"] = st.timings_ms;
  return j;
}

template <GraphLike G>
json cut_json(const G& g, const std::optional<VertexCut>& cut, const Labels& labels) {
  if (!cut) return nullptr;
  if (!validate_vertex_cut(g, *cut)) throw Error("internal error: emitted cut does not validate");
  return {{"L", labels.list(cut->left)}, {"S", labels.list(cut->separator)}, {"R", labels.list(cut->right)}};
}

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"vertex connectivity via maxflow reductions", "vconn"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
      sub->add_option("input", o.input, "graph file (default: standard input)");
      sub->add_option("--format", o.format, "input format")->check(CLI::IsMember({"edge-list", "dimacs"}));
      sub->add_option("--seed", o.seed, "master seed");
      sub->add_flag("--json", o.json, "JSON report");
      sub->add_flag("--stats", o.stats, "detailed deterministic counters");
      sub->add_flag("--timings", o.timings, "include wall-clock phase timings");
      sub->add_option("--flow", o.flow, "maxflow engine")->check(CLI::IsMember({"dinic"}));
      sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    };
    auto* vc = app.add_subcommand("vc", "vertex connectivity of an undirected graph");
    auto* vcd = app.add_subcommand("vc-directed", "vertex connectivity of a digraph");
    auto* st = app.add_subcommand("stcut", "minimum s-t vertex separator");
    auto* iso = app.add_subcommand("isolating", "isolating cuts for an independent terminal set");
    auto* scr = app.add_subcommand("scratch", "kernel-based detector for cuts with a tiny side");
    auto* cert = app.add_subcommand("certificate", "sparse k-connectivity certificate as an edge list");
    auto* orc = app.add_subcommand("oracle", "exact baseline connectivity");
    auto* bench = app.add_subcommand("bench", "per-call maxflow sizes as CSV");
    for (auto* sub : {vc, vcd, st, iso, scr, cert, orc, bench}) common(sub);
    vcd->add_option("--l", o.l, "balance parameter l (0 = heuristic)");
    st->add_option("--s", o.s, "source label")->required();
    st->add_option("--t", o.t, "sink label")->required();
    st->add_flag("--directed", o.directed, "treat input as directed");
    iso->add_option("--terminals", o.terminals, "file of terminal labels")->required();
    scr->add_option("--k", o.k, "threshold k")->required()->check(CLI::PositiveNumber);
    scr->add_option("--l", o.l, "run only the level with this l (0 = level grid)");
    scr->add_option("--level-divisor", o.level_divisor, "level grid divisor")->check(CLI::PositiveNumber);
    cert->add_option("--k", o.k, "certificate parameter")->required()->check(CLI::PositiveNumber);
    orc->add_flag("--directed", o.directed, "treat input as directed");
    bench->add_flag("--directed", o.directed, "treat input as directed");
    bench->add_option("--l", o.l, "balance parameter for directed runs");

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp& e) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n" << app.help();
      return kParse;
    }
    o_ = o;
    try {
      text_ = read_input();
      if (vc->parsed()) return cmd_vc();
      if (vcd->parsed()) return cmd_vc_directed();
      if (st->parsed()) return cmd_stcut();
      if (iso->parsed()) return cmd_isolating();
      if (scr->parsed()) return cmd_scratch();
      if (cert->parsed()) return cmd_certificate();
      if (orc->parsed()) return cmd_oracle();
      if (bench->parsed()) return cmd_bench();
    } catch (const ParseError& e) {
      err_ << "parse error: " << e.what() << "\n";
      return kParse;
    } catch (const InvalidQuery& e) {
      err_ << "invalid query: " << e.what() << "\n";
      return kInvalid;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kFailure;
    }
    return kFailure;
  }

 private:
  std::string read_input() {
    if (o_.input.empty() || o_.input == "-")
      return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    std::ifstream f(o_.input, std::ios::binary);
    if (!f) throw InvalidQuery("cannot open " + o_.input);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  GraphFormat format() const { return o_.format == "dimacs" ? GraphFormat::kDimacs : GraphFormat::kEdgeList; }

  template <GraphLike G>
  std::pair<G, Labels> load_as() const {
    auto l = load<G>(text_, format());
    return {std::move(l.graph), Labels{std::move(l.labels)}};
  }

  RunConfig config() const {
    RunConfig c;
    c.seed = o_.seed;
    c.flow = o_.flow;
    c.threads = o_.threads;
    c.directed.ell = o_.l;
    c.scratch.level_divisor = o_.level_divisor;
    return c;
  }

  json header(const char* algorithm, std::size_t n, std::size_t m) const {
    return {{"algorithm", algorithm}, {"seed", o_.seed}, {"input_digest", fnv1a64(text_)}, {"n", n}, {"m", m}};
  }

  template <GraphLike G>
  int report_connectivity(const char* algorithm, const G& g, const Labels& labels, const ConnectivityResult& r,
                          const RunStats* st, const RunConfig* cfg) {
    json j = header(algorithm, g.vertex_count(), g.edge_count());
    j["kappa"] = r.kappa;
    j["complete"] = r.complete();
    j["cut"] = cut_json(g, r.witness, labels);
    if (st) j["stats"] = stats_json(*st, o_.stats, o_.timings);
    if (cfg && o_.stats) j["config"] = config_json(*cfg);
    if (o_.json) {
      out_ << j.dump() << "\n";
      return kOk;
    }
    out_ << "kappa: " << r.kappa << "\n";
    if (r.witness) {
      out_ << "L: " << labels.text(r.witness->left) << "\n";
      out_ << "S: " << labels.text(r.witness->separator) << "\n";
      out_ << "R: " << labels.text(r.witness->right) << "\n";
    } else {
      out_ << "complete graph: no vertex cut\n";
    }
    if (st) {
      FlowStats f = st->flow();
      out_ << "maxflow calls: " << f.calls << ", vertices: " << f.total_vertices << ", edges: " << f.total_edges
           << "\n";
    }
    return kOk;
  }

  int cmd_vc() {
    auto [g, labels] = load_as<UndirectedGraph>();
    RunConfig cfg = config();
    RunStats st;
    auto r = vertex_connectivity(g, cfg, &st);
    return report_connectivity("vc", g, labels, r, &st, &cfg);
  }

  int cmd_vc_directed() {
    auto [g, labels] = load_as<DirectedGraph>();
    RunConfig cfg = config();
    RunStats st;
    auto r = vertex_connectivity(g, cfg, &st);
    return report_connectivity("vc-directed", g, labels, r, &st, &cfg);
  }

  int cmd_oracle() {
    if (o_.directed) {
      auto [g, labels] = load_as<DirectedGraph>();
      return report_connectivity("oracle-directed", g, labels, oracle_directed(g), nullptr, nullptr);
    }
    auto [g, labels] = load_as<UndirectedGraph>();
    return report_connectivity("oracle", g, labels, oracle_vertex_connectivity(g), nullptr, nullptr);
  }

  template <GraphLike G>
  int stcut_on(const G& g, const Labels& labels) {
    FlowLedger ledger;
    auto engine = make_flow_engine(o_.flow);
    auto res = st_vertex_connectivity(g, labels.id(o_.s), labels.id(o_.t), FlowOptions{engine.get(), &ledger, "st"});
    json j = header("stcut", g.vertex_count(), g.edge_count());
    j["s"] = o_.s;
    j["t"] = o_.t;
    j["value"] = res.value;
    j["separator"] = labels.list(res.separator);
    j["source_side"] = labels.list(res.source_side);
    j["stats"] = flow_json(ledger.snapshot());
    if (o_.json) {
      out_ << j.dump() << "\n";
    } else {
      out_ << "value: " << res.value << "\nseparator: " << labels.text(res.separator)
           << "\nsource side: " << labels.text(res.source_side) << "\n";
    }
    return kOk;
  }

  int cmd_stcut() {
    if (o_.directed) {
      auto [g, labels] = load_as<DirectedGraph>();
      return stcut_on(g, labels);
    }
    auto [g, labels] = load_as<UndirectedGraph>();
    return stcut_on(g, labels);
  }

  int cmd_isolating() {
    auto [g, labels] = load_as<UndirectedGraph>();
    std::ifstream f(o_.terminals);
    if (!f) throw InvalidQuery("cannot open terminal file " + o_.terminals);
    VertexSet terms;
    std::string tok;
    while (f >> tok) {
      if (tok.front() == '#') {
        std::getline(f, tok);
        continue;
      }
      terms.push_back(labels.id(detail::parse_uint(tok, 0)));
    }
    FlowLedger ledger;
    auto engine = make_flow_engine(o_.flow);
    auto res = isolating_cuts(g, terms, ExecContext{engine.get(), &ledger, nullptr, 1});
    json j = header("isolating", g.vertex_count(), g.edge_count());
    json cuts = json::array();
    for (const IsolatedCut& c : res.cuts)
      cuts.push_back({{"terminal", labels.of[c.terminal]}, {"size", c.separator.size()}, {"separator", labels.list(c.separator)}});
    j["cuts"] = cuts;
    j["stats"] = flow_json(ledger.snapshot());
    if (o_.json) {
      out_ << j.dump() << "\n";
    } else {
      for (const IsolatedCut& c : res.cuts)
        out_ << labels.of[c.terminal] << ": " << c.separator.size() << " [" << labels.text(c.separator) << "]\n";
    }
    return kOk;
  }

  int cmd_scratch() {
    auto [g, labels] = load_as<UndirectedGraph>();
    RunConfig cfg = config();
    RunStats st;
    auto engine = make_flow_engine(cfg.flow);
    ExecContext ctx{engine.get(), &st.ledger, &st.detectors, cfg.threads};
    std::optional<VertexCut> cut;
    const std::size_t n = g.vertex_count();
    if (o_.l) {
      std::vector<ScratchLevel> levels{{o_.l, scratch_x_count(n, o_.l, cfg.scratch), scratch_reps(n, cfg.scratch)}};
      cut = min_degree_cut(g);
      if (cut && cut->size() >= o_.k)
        cut = detail::kernel_levels(g, o_.k, levels, cfg.seed, cfg.scratch, cfg.scratch.countlist_factor, ctx, cut);
    } else {
      cut = detect_scratch(g, o_.k, cfg.seed, cfg.scratch, ctx);
    }
    ConnectivityResult r{cut ? cut->size() : n - 1, cut};
    json j = header("scratch", n, g.edge_count());
    j["k"] = o_.k;
    j["cut_size"] = r.kappa;
    j["below_k"] = cut && cut->size() < o_.k;
    j["cut"] = cut_json(g, cut, labels);
    j["stats"] = stats_json(st, o_.stats, o_.timings);
    if (o_.json) {
      out_ << j.dump() << "\n";
    } else {
      out_ << "cut size: " << r.kappa << (j["below_k"].get<bool>() ? " (below k)" : "") << "\n";
      if (cut) out_ << "S: " << labels.text(cut->separator) << "\n";
      out_ << "kernels built: " << st.detectors.kernels_built << " of " << st.detectors.kernel_queries << " queries\n";
    }
    return kOk;
  }

  int cmd_certificate() {
    auto [g, labels] = load_as<UndirectedGraph>();
    auto h = k_certificate(g, o_.k).graph;
    if (o_.json) {
      json j = header("certificate", g.vertex_count(), g.edge_count());
      j["k"] = o_.k;
      json e = json::array();
      for (const Edge& x : h.edges()) e.push_back({labels.of[x.u], labels.of[x.v]});
      j["edges"] = e;
      out_ << j.dump() << "\n";
      return kOk;
    }
    std::vector<char> touched(h.vertex_count(), 0);
    for (const Edge& x : h.edges()) {
      out_ << labels.of[x.u] << ' ' << labels.of[x.v] << "\n";
      touched[x.u] = touched[x.v] = 1;
    }
    for (VertexId v = 0; v < h.vertex_count(); ++v)
      if (!touched[v]) out_ << labels.of[v] << "\n";
    return kOk;
  }

  int cmd_bench() {
    RunConfig cfg = config();
    RunStats st;
    std::size_t n = 0;
    std::size_t m = 0;
    if (o_.directed) {
      auto [g, labels] = load_as<DirectedGraph>();
      n = g.vertex_count();
      m = g.edge_count();
      vertex_connectivity(g, cfg, &st);
    } else {
      auto [g, labels] = load_as<UndirectedGraph>();
      n = g.vertex_count();
      m = g.edge_count();
      vertex_connectivity(g, cfg, &st);
    }
    out_ << "call,phase,vertices,edges\n";
    std::size_t i = 0;
    for (const FlowCallRecord& r : st.ledger.log()) out_ << i++ << ',' << r.phase << ',' << r.vertices << ',' << r.edges << "\n";
    const double bound = accounting_bound(n, m, cfg.accounting_constant);
    const auto total = st.flow().total_edges;
    out_ << "# total_edges=" << total << ",bound=" << std::llround(bound)
         << ",within=" << (static_cast<double>(total) <= bound ? "true" : "false") << "\n";
    return kOk;
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  Options o_;
  std::string text_;
};

inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  return Runner(in, out, err).run(argc, argv);
}

}  // namespace vconn::cli
