#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftbfs/graph.hpp"
#include "ftbfs/path_key.hpp"

namespace ftbfs {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct Path {
  std::vector<Vertex> vertices;
  PathKey key;

  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  int length() const { return static_cast<int>(vertices.size()) - 1; }
  bool contains_edge(EdgeId id) const { return key.contains(id); }
};

// Builds a path from a vertex sequence; throws on non-adjacent steps or a
// repeated vertex.
inline Path make_path(const Graph& g, std::vector<Vertex> vertices) {
  if (vertices.empty()) throw std::invalid_argument("empty path");
  Path p{std::move(vertices), PathKey(g.num_edges())};
  std::vector<char> seen(g.num_vertices(), 0);
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    Vertex x = p.vertices[i];
    if (x < 0 || x >= g.num_vertices()) {
      throw std::invalid_argument("vertex out of range on path");
    }
    if (seen[x]++) {
      throw std::invalid_argument("path repeats vertex " + std::to_string(x));
    }
    if (i > 0) p.key.extend(g.edge_id(p.vertices[i - 1], x));
  }
  return p;
}

inline std::vector<EdgeId> path_edges(const Graph& g, const Path& p) {
  std::vector<EdgeId> out;
  out.reserve(p.vertices.size());
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    out.push_back(g.edge_id(p.vertices[i - 1], p.vertices[i]));
  }
  return out;
}

inline EdgeId last_edge(const Graph& g, const Path& p) {
  if (p.vertices.size() < 2) return kNoEdge;
  return g.edge_id(p.vertices[p.vertices.size() - 2], p.vertices.back());
}

// Plain BFS hop distances in the masked graph.
inline std::vector<int> bfs_hops(const Graph& g, Vertex s,
                                 const SubgraphMask& mask) {
  std::vector<int> dist(g.num_vertices(), kUnreachable);
  if (!mask.has_vertex(s)) return dist;
  std::vector<Vertex> queue{s};
  dist[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (const Neighbor& nb : g.neighbors(x)) {
      if (dist[nb.to] != kUnreachable || !mask.usable(nb)) continue;
      dist[nb.to] = dist[x] + 1;
      queue.push_back(nb.to);
    }
  }
  return dist;
}

// Hop distance from s to t, stopping once t is settled.
inline int bfs_distance(const Graph& g, Vertex s, Vertex t,
                        const SubgraphMask& mask) {
  if (!mask.has_vertex(s) || !mask.has_vertex(t)) return kUnreachable;
  if (s == t) return 0;
  std::vector<int> dist(g.num_vertices(), kUnreachable);
  std::vector<Vertex> queue{s};
  dist[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (const Neighbor& nb : g.neighbors(x)) {
      if (dist[nb.to] != kUnreachable || !mask.usable(nb)) continue;
      dist[nb.to] = dist[x] + 1;
      if (nb.to == t) return dist[t];
      queue.push_back(nb.to);
    }
  }
  return kUnreachable;
}

struct ShortestPathTree {
  Vertex source = kNoVertex;
  std::vector<int> hops;  // kUnreachable when not reachable
  std::vector<Vertex> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<PathKey> keys;

  bool reachable(Vertex v) const { return hops[v] != kUnreachable; }

  std::optional<Path> path_to(Vertex v) const {
    if (!reachable(v)) return std::nullopt;
    std::vector<Vertex> seq;
    for (Vertex x = v; x != kNoVertex; x = parent[x]) seq.push_back(x);
    std::reverse(seq.begin(), seq.end());
    return Path{std::move(seq), keys[v]};
  }
};

namespace detail {

// Label setting over BFS layers: the key of a vertex is the minimum over its
// previous-layer neighbors of key(u) + id(u,v). When `relevant` is given only
// those vertices get keys (it must be closed under shortest-path predecessors).
inline void settle_keys(const Graph& g, const SubgraphMask& mask,
                        const std::vector<Vertex>& order,
                        ShortestPathTree& tree,
                        const std::vector<char>* relevant) {
  tree.keys.assign(g.num_vertices(), PathKey());
  tree.keys[tree.source] = PathKey(g.num_edges());
  for (Vertex v : order) {
    if (v == tree.source) continue;
    if (relevant && !(*relevant)[v]) continue;
    Vertex best = kNoVertex;
    EdgeId best_edge = kNoEdge;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!mask.usable(nb) || tree.hops[nb.to] != tree.hops[v] - 1) continue;
      if (best == kNoVertex ||
          PathKey::compare_extended(tree.keys[nb.to], nb.id, tree.keys[best],
                                    best_edge) < 0) {
        best = nb.to;
        best_edge = nb.id;
      }
    }
    tree.parent[v] = best;
    tree.parent_edge[v] = best_edge;
    tree.keys[v] = tree.keys[best].extended(best_edge);
  }
}

inline std::vector<Vertex> bfs_order(const Graph& g, Vertex s,
                                     const SubgraphMask& mask,
                                     std::vector<int>& hops) {
  hops.assign(g.num_vertices(), kUnreachable);
  std::vector<Vertex> order;
  if (!mask.has_vertex(s)) return order;
  order.push_back(s);
  hops[s] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    Vertex x = order[head];
    for (const Neighbor& nb : g.neighbors(x)) {
      if (hops[nb.to] != kUnreachable || !mask.usable(nb)) continue;
      hops[nb.to] = hops[x] + 1;
      order.push_back(nb.to);
    }
  }
  return order;
}

}  // namespace detail

// Unique W-shortest paths from s in G minus the masked elements.
inline ShortestPathTree unique_sssp(const Graph& g, Vertex s,
                                    const SubgraphMask& mask) {
  if (!mask.has_vertex(s)) {
    throw std::invalid_argument("source is a forbidden vertex");
  }
  ShortestPathTree tree;
  tree.source = s;
  auto order = detail::bfs_order(g, s, mask, tree.hops);
  tree.parent.assign(g.num_vertices(), kNoVertex);
  tree.parent_edge.assign(g.num_vertices(), kNoEdge);
  detail::settle_keys(g, mask, order, tree, nullptr);
  return tree;
}

inline ShortestPathTree unique_sssp(const Graph& g, Vertex s,
                                    std::span<const EdgeId> forbidden_edges,
                                    std::span<const Vertex> forbidden_vertices) {
  SubgraphMask mask(g);
  mask.remove_edges(forbidden_edges);
  for (Vertex x : forbidden_vertices) mask.remove_vertex(x);
  return unique_sssp(g, s, mask);
}

// SP(s, t, G', W) for a single target; keys are settled only on vertices
// that lie on some shortest s-t path.
inline std::optional<Path> unique_path(const Graph& g, Vertex s, Vertex t,
                                       const SubgraphMask& mask) {
  if (!mask.has_vertex(s) || !mask.has_vertex(t)) return std::nullopt;
  ShortestPathTree tree;
  tree.source = s;
  auto order = detail::bfs_order(g, s, mask, tree.hops);
  if (tree.hops[t] == kUnreachable) return std::nullopt;
  std::vector<char> relevant(g.num_vertices(), 0);
  std::vector<Vertex> stack{t};
  relevant[t] = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : g.neighbors(x)) {
      if (relevant[nb.to] || !mask.usable(nb)) continue;
      if (tree.hops[nb.to] != tree.hops[x] - 1) continue;
      relevant[nb.to] = 1;
      stack.push_back(nb.to);
    }
  }
  tree.parent.assign(g.num_vertices(), kNoVertex);
  tree.parent_edge.assign(g.num_vertices(), kNoEdge);
  detail::settle_keys(g, mask, order, tree, &relevant);
  return tree.path_to(t);
}

}  // namespace ftbfs
