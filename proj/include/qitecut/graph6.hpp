#pragma once

// graph6 encoding for graphs with at most 62 vertices.
//
// Record layout: one size byte (n + 63), then the upper triangle of the
// adjacency matrix in column order x(0,1), x(0,2), x(1,2), x(0,3), ... packed
// six bits per byte (most significant first), each byte offset by 63, padded
// with zero bits to a six-bit boundary.

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "qitecut/errors.hpp"
#include "qitecut/graph.hpp"

namespace qitecut {

inline constexpr int kGraph6MaxVertices = 62;

inline Graph parse_graph6(std::string_view line) {
  if (line.empty()) throw ParseError("graph6: empty record");
  for (unsigned char c : line) {
    if (c < 63 || c > 126)
      throw ParseError("graph6: byte " + std::to_string(static_cast<int>(c)) + " outside [63,126]");
  }
  const int n = static_cast<unsigned char>(line[0]) - 63;
  if (n > kGraph6MaxVertices) throw ParseError("graph6: only n <= 62 is supported");

  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - (n > 0)) / 2;
  const std::size_t body = (bits + 5) / 6;
  if (line.size() - 1 < body) throw ParseError("graph6: truncated record");
  if (line.size() - 1 > body) throw ParseError("graph6: trailing bytes after record");

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = static_cast<unsigned char>(line[1 + k / 6]) - 63;
      if (byte >> (5 - k % 6) & 1) edges.push_back({i, j, 1.0});
    }
  }
  for (; k < body * 6; ++k) {
    const int byte = static_cast<unsigned char>(line[1 + k / 6]) - 63;
    if (byte >> (5 - k % 6) & 1) throw ParseError("graph6: nonzero padding bits");
  }
  return Graph(n, std::move(edges));
}

inline std::string serialize_graph6(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kGraph6MaxVertices) throw UnsupportedError("graph6: only n <= 62 is supported");
  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - (n > 0)) / 2;
  std::vector<unsigned char> packed((bits + 5) / 6, 0);
  for (const auto& e : g.edges()) {
    // column-major index of (u, v) with u < v
    const std::size_t k = static_cast<std::size_t>(e.v) * (e.v - 1) / 2 + e.u;
    packed[k / 6] |= static_cast<unsigned char>(1u << (5 - k % 6));
  }
  std::string out;
  out.reserve(1 + packed.size());
  out.push_back(static_cast<char>(n + 63));
  for (auto b : packed) out.push_back(static_cast<char>(b + 63));
  return out;
}

/// Reads one graph6 record per line. Blank lines and an optional ">>graph6<<"
/// header are skipped; CR line endings are tolerated.
inline std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open graph file: " + path);
  std::vector<Graph> graphs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view rec = line;
    if (rec.starts_with(">>graph6<<")) rec.remove_prefix(10);
    if (rec.empty()) continue;
    try {
      graphs.push_back(parse_graph6(rec));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return graphs;
}

inline void write_graph6_file(const std::string& path, const std::vector<Graph>& graphs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& g : graphs) out << serialize_graph6(g) << '\n';
}

}  // namespace qitecut
