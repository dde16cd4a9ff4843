#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rotsys/embedding.hpp"
#include "rotsys/planeperm.hpp"

namespace rotsys {

// .rot format (UTF-8, line oriented):
//   # comment
//   halfedges <2m>
//   edge <a> <b>            one per edge
//   vertex <name>: h1 h2 ... hd    counterclockwise rotation, left to right
// Every half edge appears exactly once among the edge lines and exactly once
// among the vertex lines. The two-line plane-permutation form (s:/pi: rows)
// is accepted wherever a one-face object is expected.

namespace rot_detail {

inline int column_of(const std::string& line, size_t pos) { return static_cast<int>(pos) + 1; }

inline std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline int parse_label(const std::string& tok, int line, int col) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v <= 0) throw parse_error(line, col, "half edge must be a positive integer: " + tok);
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (...) {
    throw parse_error(line, col, "bad half-edge label: " + tok);
  }
}

}  // namespace rot_detail

inline Embedding parse_rot(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  long declared = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<std::string, std::vector<int>>> verts;
  std::map<int, int> seen_edge, seen_vertex;  // label -> line
  while (std::getline(in, line)) {
    ++lineno;
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string body = line.substr(start);
    if (!body.empty() && body.back() == '\r') body.pop_back();
    auto toks = rot_detail::tokens(body);
    if (toks.empty()) continue;
    if (toks[0] == "halfedges") {
      if (toks.size() != 2) throw parse_error(lineno, 1, "halfedges line needs one count");
      declared = rot_detail::parse_label(toks[1], lineno, 1);
      if (declared % 2 != 0) throw parse_error(lineno, 1, "half-edge count must be even");
    } else if (toks[0] == "edge") {
      if (declared < 0) throw parse_error(lineno, 1, "halfedges line must come first");
      if (toks.size() != 3) throw parse_error(lineno, 1, "edge line needs two half edges");
      int a = rot_detail::parse_label(toks[1], lineno, 1);
      int b = rot_detail::parse_label(toks[2], lineno, 1);
      if (a == b) throw parse_error(lineno, 1, "edge pairs a half edge with itself");
      for (int x : {a, b}) {
        if (x > declared) throw parse_error(lineno, 1, "half edge " + std::to_string(x) + " exceeds declared count");
        if (!seen_edge.emplace(x, lineno).second)
          throw parse_error(lineno, 1, "half edge " + std::to_string(x) + " appears in two edges (first at line " +
                                           std::to_string(seen_edge[x]) + ")");
      }
      edges.emplace_back(a, b);
    } else if (toks[0] == "vertex") {
      if (declared < 0) throw parse_error(lineno, 1, "halfedges line must come first");
      auto colon = body.find(':');
      if (colon == std::string::npos) throw parse_error(lineno, 1, "vertex line needs a ':'");
      auto nametoks = rot_detail::tokens(body.substr(6, colon - 6));
      if (nametoks.size() != 1) throw parse_error(lineno, 1, "vertex line needs exactly one name");
      auto rot_toks = rot_detail::tokens(body.substr(colon + 1));
      if (rot_toks.empty()) throw parse_error(lineno, 1, "vertex has no half edges");
      std::vector<int> rot;
      for (const auto& t : rot_toks) {
        int x = rot_detail::parse_label(t, lineno, 1);
        if (x > declared) throw parse_error(lineno, 1, "half edge " + std::to_string(x) + " exceeds declared count");
        if (!seen_vertex.emplace(x, lineno).second)
          throw parse_error(lineno, 1, "half edge " + std::to_string(x) + " appears at two vertices (first at line " +
                                           std::to_string(seen_vertex[x]) + ")");
        rot.push_back(x);
      }
      verts.emplace_back(nametoks[0], std::move(rot));
    } else {
      throw parse_error(lineno, rot_detail::column_of(line, start), "unknown directive: " + toks[0]);
    }
  }
  if (declared < 0) throw parse_error(lineno, 1, "missing halfedges line");
  for (int x = 1; x <= declared; ++x) {
    if (!seen_edge.count(x)) throw parse_error(lineno, 1, "half edge " + std::to_string(x) + " missing from edge lines");
    if (!seen_vertex.count(x))
      throw parse_error(lineno, 1, "half edge " + std::to_string(x) + " missing from vertex lines");
  }
  std::vector<std::vector<int>> alpha_cycles;
  alpha_cycles.reserve(edges.size());
  for (auto [a, b] : edges) alpha_cycles.push_back({a, b});
  std::vector<std::vector<int>> beta_cycles;
  beta_cycles.reserve(verts.size());
  for (auto& [name, rot] : verts) beta_cycles.push_back(rot);
  Permutation alpha = Permutation::from_cycles(alpha_cycles);
  Permutation beta = Permutation::from_cycles(beta_cycles);
  // Embedding sorts vertices by minimum half edge; align the names.
  std::vector<std::pair<int, std::string>> order;
  for (auto& [name, rot] : verts) order.emplace_back(*std::min_element(rot.begin(), rot.end()), name);
  std::sort(order.begin(), order.end());
  std::vector<std::string> names;
  names.reserve(order.size());
  for (auto& [minlab, name] : order) names.push_back(name);
  return Embedding(std::move(alpha), std::move(beta), std::move(names));
}

// Canonical form: edges sorted by smaller endpoint, vertices by minimum half
// edge, rotations rotated to lead with the minimum.
inline std::string emit_rot(const Embedding& e) {
  std::string out = "halfedges " + std::to_string(e.half_edge_count()) + "\n";
  for (const auto& c : e.alpha().cycles())
    out += "edge " + std::to_string(c[0]) + " " + std::to_string(c[1]) + "\n";
  for (const auto& v : e.vertices()) {
    out += "vertex " + v.name + ":";
    for (int x : v.rotation) out += " " + std::to_string(x);
    out += "\n";
  }
  return out;
}

// Sniffs two-line vs .rot input.
inline Embedding parse_embedding(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    if (line.compare(start, 2, "s:") == 0) return embedding_from_plane_permutation(parse_two_line(text));
    break;
  }
  return parse_rot(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw error("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace rotsys
