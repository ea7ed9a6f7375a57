#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ftbfs/graph.hpp"

namespace ftbfs {

// Closed forms for G_f(d). depth is the largest root-to-leaf distance.
inline std::int64_t lb_depth(int f, int d) {
  if (f < 1 || d < 1) throw std::invalid_argument("f and d must be >= 1");
  std::int64_t depth = 6 + 2 * (d - 1);
  for (int k = 2; k <= f; ++k) depth *= d;
  return depth;
}

inline std::int64_t lb_leaves(int f, int d) {
  if (f < 1 || d < 1) throw std::invalid_argument("f and d must be >= 1");
  std::int64_t out = 1;
  for (int k = 0; k < f; ++k) out *= d;
  return out;
}

inline std::int64_t lb_vertices(int f, int d) {
  if (f < 1 || d < 1) throw std::invalid_argument("f and d must be >= 1");
  if (f == 1) return static_cast<std::int64_t>(d) * d + 6 * d;
  std::int64_t connectors = 0;
  for (int i = 1; i <= d; ++i) connectors += (d - i) * lb_depth(f - 1, d);
  return d * lb_vertices(f - 1, d) + connectors;
}

struct LabeledGadget {
  Graph graph{0, {}};
  int f = 0;
  int d = 0;
  Vertex root = kNoVertex;
  Vertex spine_end = kNoVertex;  // u^f_d
  std::vector<Vertex> leaves;    // left to right
  std::vector<std::vector<EdgeId>> labels;
  std::vector<std::vector<Vertex>> canonical_paths;  // root .. leaf
  std::vector<int> leaf_block;   // i of the top-level u^f_i, 1-based
};

namespace detail {

struct GadgetSketch {
  Vertex next = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> leaves;
  std::vector<std::vector<std::pair<Vertex, Vertex>>> labels;
  std::vector<std::vector<Vertex>> paths;
  std::vector<int> block;
  Vertex spine_end = kNoVertex;

  Vertex fresh() { return next++; }

  // Path of `length` edges from `from`; returns the far end. A zero-length
  // path is `from` itself.
  std::vector<Vertex> chain(Vertex from, std::int64_t length) {
    std::vector<Vertex> seq{from};
    for (std::int64_t k = 0; k < length; ++k) {
      Vertex x = fresh();
      edges.push_back({seq.back(), x});
      seq.push_back(x);
    }
    return seq;
  }
};

// Appends G_f(d) rooted at `root` to the sketch, vertices in DFS order.
inline void sketch_gadget(GadgetSketch& s, int f, int d, Vertex root) {
  std::vector<Vertex> spine{root};
  const std::size_t first_leaf = s.leaves.size();
  for (int i = 1; i <= d; ++i) {
    Vertex u = spine.back();
    std::size_t before = s.leaves.size();
    if (f == 1) {
      auto q = s.chain(u, 6 + 2 * (d - i));
      s.leaves.push_back(q.back());
      s.labels.push_back({});
      s.paths.push_back(q);
    } else {
      auto q = s.chain(u, (d - i) * lb_depth(f - 1, d));
      sketch_gadget(s, f - 1, d, q.back());
      for (std::size_t z = before; z < s.leaves.size(); ++z) {
        auto& p = s.paths[z];
        p.insert(p.begin(), q.begin(), q.end() - 1);
      }
    }
    s.block.resize(s.leaves.size(), 0);
    for (std::size_t z = before; z < s.leaves.size(); ++z) s.block[z] = i;
    if (i < d) {
      Vertex next = s.fresh();
      s.edges.push_back({u, next});
      for (std::size_t z = before; z < s.leaves.size(); ++z) {
        s.labels[z].insert(s.labels[z].begin(), {u, next});
      }
      spine.push_back(next);
    }
  }
  // Prefix each path with the spine up to its attachment point.
  for (std::size_t z = first_leaf; z < s.leaves.size(); ++z) {
    int at = s.block[z];
    s.paths[z].insert(s.paths[z].begin(), spine.begin(),
                      spine.begin() + (at - 1));
  }
  s.spine_end = spine.back();
}

inline std::vector<EdgeId> to_ids(const Graph& g,
                                  const std::vector<std::pair<Vertex, Vertex>>& es) {
  std::vector<EdgeId> out;
  for (auto [a, b] : es) out.push_back(g.edge_id(a, b));
  return out;
}

struct SketchedGadget {
  Vertex root = kNoVertex;
  Vertex spine_end = kNoVertex;
  std::vector<Vertex> leaves;
  std::vector<std::vector<std::pair<Vertex, Vertex>>> labels;
  std::vector<std::vector<Vertex>> paths;
  std::vector<int> block;
};

inline SketchedGadget add_gadget(GadgetSketch& s, int f, int d) {
  SketchedGadget out;
  std::size_t first = s.leaves.size();
  out.root = s.fresh();
  sketch_gadget(s, f, d, out.root);
  out.spine_end = s.spine_end;
  out.leaves.assign(s.leaves.begin() + first, s.leaves.end());
  out.labels.assign(s.labels.begin() + first, s.labels.end());
  out.paths.assign(s.paths.begin() + first, s.paths.end());
  out.block.assign(s.block.begin() + first, s.block.end());
  return out;
}

}  // namespace detail

inline LabeledGadget gen_recursive(int f, int d) {
  if (f < 1 || d < 1) throw std::invalid_argument("f and d must be >= 1");
  detail::GadgetSketch s;
  auto sk = detail::add_gadget(s, f, d);
  LabeledGadget out;
  out.graph = Graph(s.next, s.edges);
  out.f = f;
  out.d = d;
  out.root = sk.root;
  out.spine_end = sk.spine_end;
  out.leaves = sk.leaves;
  out.canonical_paths = sk.paths;
  out.leaf_block = sk.block;
  for (const auto& l : sk.labels) out.labels.push_back(detail::to_ids(out.graph, l));
  return out;
}

inline LabeledGadget gen_base(int d) { return gen_recursive(1, d); }

struct ForcedEdge {
  EdgeId edge = kNoEdge;
  Vertex source = kNoVertex;
  std::vector<EdgeId> witness;
};

struct StarInstance {
  Graph graph{0, {}};
  int f = 0;
  int d = 0;
  std::vector<Vertex> sources;  // one gadget root per copy
  Vertex hub = kNoVertex;       // v*
  std::vector<Vertex> x;
  std::vector<std::vector<Vertex>> leaves;  // per copy
  std::vector<std::vector<std::vector<EdgeId>>> labels;
  std::vector<ForcedEdge> forced;
};

// sigma gadget copies sharing v* and X; X x leaves is complete bipartite.
// Witness for (x, z): Label(z), plus (u^f_d, v*) when z hangs off u^f_d.
inline StarInstance gen_multi_source(int f, int d, int sigma, int chi) {
  if (f < 1 || d < 1 || sigma < 1 || chi < 1) {
    throw std::invalid_argument("f, d, sigma and chi must be >= 1");
  }
  detail::GadgetSketch s;
  std::vector<detail::SketchedGadget> copies;
  for (int c = 0; c < sigma; ++c) copies.push_back(detail::add_gadget(s, f, d));
  StarInstance out;
  out.f = f;
  out.d = d;
  out.hub = s.fresh();
  for (int i = 0; i < chi; ++i) out.x.push_back(s.fresh());
  for (const auto& c : copies) s.edges.push_back({c.spine_end, out.hub});
  for (Vertex xi : out.x) s.edges.push_back({out.hub, xi});
  for (Vertex xi : out.x) {
    for (const auto& c : copies) {
      for (Vertex z : c.leaves) s.edges.push_back({xi, z});
    }
  }
  out.graph = Graph(s.next, s.edges);
  const Graph& g = out.graph;
  for (const auto& c : copies) {
    out.sources.push_back(c.root);
    out.leaves.push_back(c.leaves);
    std::vector<std::vector<EdgeId>> ls;
    for (const auto& l : c.labels) ls.push_back(detail::to_ids(g, l));
    out.labels.push_back(ls);
  }
  for (Vertex xi : out.x) {
    for (std::size_t c = 0; c < copies.size(); ++c) {
      for (std::size_t z = 0; z < copies[c].leaves.size(); ++z) {
        ForcedEdge fe;
        fe.edge = g.edge_id(xi, copies[c].leaves[z]);
        fe.source = copies[c].root;
        fe.witness = out.labels[c][z];
        if (copies[c].block[z] == d) {
          fe.witness.push_back(g.edge_id(copies[c].spine_end, out.hub));
        }
        out.forced.push_back(std::move(fe));
      }
    }
  }
  return out;
}

inline StarInstance gen_star(int f, int d, int chi) {
  return gen_multi_source(f, d, 1, chi);
}

// Smallest d with N(f,d) >= n/2, backed off while the instance would not fit.
inline StarInstance gen_star_for_n(int f, int n) {
  if (f < 1) throw std::invalid_argument("f must be >= 1");
  int d = 1;
  while (2 * lb_vertices(f, d) < n) ++d;
  while (d > 1 && lb_vertices(f, d) + 2 > n) --d;
  std::int64_t chi = n - lb_vertices(f, d) - 1;
  if (chi < 1) throw std::invalid_argument("n too small for this f");
  return gen_star(f, d, static_cast<int>(chi));
}

}  // namespace ftbfs
