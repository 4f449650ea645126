#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vconn/error.hpp"
#include "vconn/graph.hpp"

namespace vconn {

enum class GraphFormat { kEdgeList, kDimacs };

// A parsed graph plus the original label of every dense vertex id.
template <class G>
struct Loaded {
  G graph;
  std::vector<std::uint64_t> labels;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return value;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    fn(text.substr(pos, end - pos), line_no);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

struct RawGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<std::uint64_t> labels;
};

// One edge per line; a lone integer declares an isolated vertex. Labels are
// remapped to dense ids in ascending label order.
inline RawGraph parse_edge_list(std::string_view text) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::vector<std::uint64_t> singles;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    auto toks = split_tokens(line);
    if (toks.empty() || toks.front().front() == '#') return;
    if (toks.size() == 1) {
      singles.push_back(parse_uint(toks[0], no));
    } else if (toks.size() == 2) {
      pairs.emplace_back(parse_uint(toks[0], no), parse_uint(toks[1], no));
    } else {
      throw ParseError(no, "expected two vertex labels per line");
    }
  });
  RawGraph raw;
  raw.labels = singles;
  for (auto [a, b] : pairs) {
    raw.labels.push_back(a);
    raw.labels.push_back(b);
  }
  std::sort(raw.labels.begin(), raw.labels.end());
  raw.labels.erase(std::unique(raw.labels.begin(), raw.labels.end()), raw.labels.end());
  raw.n = raw.labels.size();
  if (raw.n == 0) throw ParseError(0, "empty graph");
  auto id = [&](std::uint64_t label) {
    return static_cast<VertexId>(std::lower_bound(raw.labels.begin(), raw.labels.end(), label) -
                                 raw.labels.begin());
  };
  raw.edges.reserve(pairs.size());
  for (auto [a, b] : pairs) raw.edges.push_back({id(a), id(b)});
  return raw;
}

// `p <kind> n m` header, `e u v` (or `a u v`) lines, `c` comments; 1-based.
inline RawGraph parse_dimacs(std::string_view text) {
  RawGraph raw;
  bool have_header = false;
  for_each_line(text, [&](std::string_view line, std::size_t no) {
    auto toks = split_tokens(line);
    if (toks.empty() || toks[0] == "c" || toks[0].front() == '#') return;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(no, "duplicate problem line");
      if (toks.size() != 4) throw ParseError(no, "expected 'p <kind> <n> <m>'");
      raw.n = parse_uint(toks[2], no);
      parse_uint(toks[3], no);
      have_header = true;
      return;
    }
    if (toks[0] == "e" || toks[0] == "a") {
      if (!have_header) throw ParseError(no, "edge line before problem line");
      if (toks.size() != 3) throw ParseError(no, "expected 'e <u> <v>'");
      std::uint64_t u = parse_uint(toks[1], no);
      std::uint64_t v = parse_uint(toks[2], no);
      if (u < 1 || v < 1 || u > raw.n || v > raw.n)
        throw ParseError(no, "vertex out of range [1, " + std::to_string(raw.n) + "]");
      raw.edges.push_back({static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1)});
      return;
    }
    throw ParseError(no, "unrecognised line type '" + std::string(toks[0]) + "'");
  });
  if (!have_header) throw ParseError(0, "missing problem line");
  if (raw.n == 0) throw ParseError(0, "empty graph");
  raw.labels.resize(raw.n);
  for (std::size_t i = 0; i < raw.n; ++i) raw.labels[i] = i + 1;
  return raw;
}

inline RawGraph parse_raw(std::string_view text, GraphFormat format) {
  return format == GraphFormat::kDimacs ? parse_dimacs(text) : parse_edge_list(text);
}

}  // namespace detail

template <class G>
Loaded<G> load(std::string_view text, GraphFormat format) {
  auto raw = detail::parse_raw(text, format);
  return {G(raw.n, raw.edges), std::move(raw.labels)};
}

using AnyLoaded = std::variant<Loaded<UndirectedGraph>, Loaded<DirectedGraph>>;

inline AnyLoaded load_graph(std::string_view text, GraphFormat format, bool directed) {
  if (directed) return load<DirectedGraph>(text, format);
  return load<UndirectedGraph>(text, format);
}

// Canonical 0-based edge list: sorted edges, then isolated vertices as lone
// ids, so that loading the output reproduces the graph exactly.
template <GraphLike G>
std::string serialize_edge_list(const G& g) {
  std::ostringstream out;
  std::vector<char> touched(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << '\n';
    touched[e.u] = touched[e.v] = 1;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!touched[v]) out << v << '\n';
  return out.str();
}

}  // namespace vconn
