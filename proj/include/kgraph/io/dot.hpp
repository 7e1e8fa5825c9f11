#pragma once

#include <array>
#include <string>

#include "kgraph/skeleton.hpp"

namespace kgraph {

inline const char* dot_color(Color c) {
  static constexpr std::array<const char*, 10> palette{"black",  "blue",   "red",  "darkgreen", "orange",
                                                       "purple", "brown",  "cyan", "magenta",   "gray40"};
  return palette[static_cast<std::size_t>(c - 1) % palette.size()];
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// One node statement per vertex and one edge statement per edge, labelled
// with ids and colored from a fixed palette.
inline std::string to_dot(const ColoredGraph& g, const std::string& name) {
  std::string out = "digraph " + dot_quote(name) + " {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) out += "  " + dot_quote(g.vertex_name(v)) + ";\n";
  for (const Edge& e : g.edges())
    out += "  " + dot_quote(g.vertex_name(e.src)) + " -> " + dot_quote(g.vertex_name(e.dst)) +
           " [label=" + dot_quote(e.name) + ", color=" + dot_color(e.color) + "];\n";
  return out + "}\n";
}

}  // namespace kgraph
