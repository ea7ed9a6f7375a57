#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftbfs/graph.hpp"

namespace ftbfs {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Reads `u v` lines with `#` comments and an optional leading `p n m`.
inline Graph read_edge_list(std::istream& in) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  long long declared_n = -1;
  long long declared_m = -1;
  bool seen_content = false;
  Vertex max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (line[first] == 'p') {
      if (seen_content) throw ParseError(line_no, "header after edges");
      std::string tag;
      fields >> tag;
      if (tag != "p" || !(fields >> declared_n >> declared_m) ||
          declared_n < 0 || declared_m < 0) {
        throw ParseError(line_no, "malformed header, expected 'p <n> <m>'");
      }
      std::string rest;
      if (fields >> rest) throw ParseError(line_no, "trailing tokens");
      seen_content = true;
      continue;
    }
    long long a = 0;
    long long b = 0;
    std::string rest;
    if (!(fields >> a >> b) || (fields >> rest)) {
      throw ParseError(line_no, "expected two vertex ids");
    }
    if (a < 0 || b < 0 || a > (1LL << 30) || b > (1LL << 30)) {
      throw ParseError(line_no, "vertex id out of range");
    }
    if (a == b) throw ParseError(line_no, "self-loop");
    if (declared_n >= 0 && (a >= declared_n || b >= declared_n)) {
      throw ParseError(line_no, "vertex id exceeds declared n");
    }
    seen_content = true;
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    max_id = std::max({max_id, static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  if (declared_m >= 0 && declared_m != static_cast<long long>(edges.size())) {
    throw ParseError(line_no, "edge count differs from header");
  }
  Vertex n = declared_n >= 0 ? static_cast<Vertex>(declared_n) : max_id + 1;
  try {
    return Graph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return read_edge_list(in);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void write_edge_list(std::ostream& out, Vertex n,
                            const std::vector<Edge>& edges) {
  out << "p " << n << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  write_edge_list(out, g.num_vertices(),
                  std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

}  // namespace ftbfs
