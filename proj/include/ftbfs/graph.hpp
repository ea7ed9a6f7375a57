#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ftbfs {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr Vertex kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

struct Edge {
  Vertex u = kNoVertex;  // u < v
  Vertex v = kNoVertex;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex to = kNoVertex;
  EdgeId id = kNoEdge;
};

// Simple undirected graph. Edge ids follow the lexicographic order of
// (min endpoint, max endpoint); adjacency lists are sorted by neighbor.
class Graph {
 public:
  Graph() = default;

  Graph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edge_list) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    for (auto& [a, b] : edge_list) {
      if (a < 0 || b < 0 || a >= n || b >= n) {
        throw std::invalid_argument("edge endpoint out of range: " +
                                    std::to_string(a) + " " +
                                    std::to_string(b));
      }
      if (a == b) {
        throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
      }
      if (a > b) std::swap(a, b);
    }
    std::sort(edge_list.begin(), edge_list.end());
    for (std::size_t i = 1; i < edge_list.size(); ++i) {
      if (edge_list[i] == edge_list[i - 1]) {
        throw std::invalid_argument(
            "duplicate edge " + std::to_string(edge_list[i].first) + " " +
            std::to_string(edge_list[i].second));
      }
    }
    edges_.reserve(edge_list.size());
    std::vector<std::int32_t> degree(n, 0);
    for (const auto& [a, b] : edge_list) {
      edges_.push_back({a, b});
      ++degree[a];
      ++degree[b];
    }
    offsets_.assign(n + 1, 0);
    for (Vertex x = 0; x < n; ++x) offsets_[x + 1] = offsets_[x] + degree[x];
    adjacency_.resize(offsets_[n]);
    std::vector<std::int32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < num_edges(); ++id) {
      const Edge& e = edges_[id];
      adjacency_[fill[e.u]++] = {e.v, id};
      adjacency_[fill[e.v]++] = {e.u, id};
    }
    for (Vertex x = 0; x < n; ++x) {
      std::sort(adjacency_.begin() + offsets_[x],
                adjacency_.begin() + offsets_[x + 1],
                [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
    }
  }

  Vertex num_vertices() const { return n_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Neighbor> neighbors(Vertex x) const {
    return {adjacency_.data() + offsets_[x],
            adjacency_.data() + offsets_[x + 1]};
  }
  std::int32_t degree(Vertex x) const { return offsets_[x + 1] - offsets_[x]; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return std::nullopt;
    auto adj = neighbors(a);
    auto it = std::lower_bound(
        adj.begin(), adj.end(), b,
        [](const Neighbor& nb, Vertex key) { return nb.to < key; });
    if (it == adj.end() || it->to != b) return std::nullopt;
    return it->id;
  }

  EdgeId edge_id(Vertex a, Vertex b) const {
    auto id = find_edge(a, b);
    if (!id) {
      throw std::invalid_argument("no edge " + std::to_string(a) + " " +
                                  std::to_string(b));
    }
    return *id;
  }

  Vertex other(EdgeId id, Vertex x) const {
    const Edge& e = edges_.at(id);
    return e.u == x ? e.v : e.u;
  }

  // Subgraph on the same vertex set containing the given edges of this graph.
  Graph edge_subgraph(std::span<const EdgeId> ids) const {
    std::vector<std::pair<Vertex, Vertex>> list;
    list.reserve(ids.size());
    for (EdgeId id : ids) list.emplace_back(edges_.at(id).u, edges_.at(id).v);
    return Graph(n_, std::move(list));
  }

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

// Removed vertices and edges over a fixed base graph. An edge is usable when
// it is not removed and both endpoints are present.
class SubgraphMask {
 public:
  SubgraphMask() = default;
  explicit SubgraphMask(const Graph& g)
      : vertex_off_(g.num_vertices(), 0), edge_off_(g.num_edges(), 0) {}

  void remove_vertex(Vertex x) { vertex_off_.at(x) = 1; }
  void restore_vertex(Vertex x) { vertex_off_.at(x) = 0; }
  void remove_edge(EdgeId id) { edge_off_.at(id) = 1; }
  void restore_edge(EdgeId id) { edge_off_.at(id) = 0; }
  void remove_edges(std::span<const EdgeId> ids) {
    for (EdgeId id : ids) remove_edge(id);
  }

  bool has_vertex(Vertex x) const { return !vertex_off_[x]; }
  bool edge_removed(EdgeId id) const { return edge_off_[id] != 0; }
  bool usable(const Neighbor& nb) const {
    return !edge_off_[nb.id] && !vertex_off_[nb.to];
  }

 private:
  std::vector<char> vertex_off_;
  std::vector<char> edge_off_;
};

inline SubgraphMask full_mask(const Graph& g) { return SubgraphMask(g); }

inline SubgraphMask without_edges(const Graph& g, std::span<const EdgeId> ids) {
  SubgraphMask mask(g);
  mask.remove_edges(ids);
  return mask;
}

}  // namespace ftbfs
