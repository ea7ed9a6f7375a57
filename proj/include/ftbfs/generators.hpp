#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ftbfs/graph.hpp"

namespace ftbfs {

inline Graph gnp_graph(Vertex n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p outside [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (coin(rng) < p) edges.emplace_back(a, b);
    }
  }
  return Graph(n, std::move(edges));
}

inline Graph path_graph(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a + 1 < n; ++a) edges.emplace_back(a, a + 1);
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(Vertex n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a < n; ++a) edges.emplace_back(a, (a + 1) % n);
  return Graph(n, std::move(edges));
}

inline Graph complete_graph(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return Graph(n, std::move(edges));
}

inline Graph star_graph(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 1; a < n; ++a) edges.emplace_back(0, a);
  return Graph(n, std::move(edges));
}

inline Graph grid_graph(Vertex rows, Vertex cols) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex r = 0; r < rows; ++r) {
    for (Vertex c = 0; c < cols; ++c) {
      Vertex x = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(x, x + 1);
      if (r + 1 < rows) edges.emplace_back(x, x + cols);
    }
  }
  return Graph(rows * cols, std::move(edges));
}

// Uniform random recursive tree: vertex i attaches to a random earlier vertex.
inline Graph random_tree(Vertex n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 1; a < n; ++a) {
    std::uniform_int_distribution<Vertex> pick(0, a - 1);
    edges.emplace_back(pick(rng), a);
  }
  return Graph(n, std::move(edges));
}

}  // namespace ftbfs
