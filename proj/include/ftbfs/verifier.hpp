#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftbfs/graph.hpp"
#include "ftbfs/parallel.hpp"
#include "ftbfs/sssp.hpp"

namespace ftbfs {

inline constexpr int kMaxExhaustiveFaults = 3;

// Visits every fault set of size <= f over edge ids [0, m) in lexicographic
// order of sorted tuples: (), (0), (0,1), (0,1,2), ..., (1), ...
// `first_from` / `first_to` restrict the smallest id of non-empty sets;
// the empty set is visited only when first_from == 0.
template <typename Fn>
void for_each_fault_set(EdgeId m, int f, Fn&& fn, EdgeId first_from = 0,
                        EdgeId first_to = -1) {
  if (first_to < 0) first_to = m;
  std::vector<EdgeId> current;
  if (first_from == 0) {
    if (!fn(std::span<const EdgeId>(current))) return;
  }
  bool stop = false;
  auto rec = [&](auto&& self, EdgeId start, EdgeId end) -> void {
    for (EdgeId id = start; id < end && !stop; ++id) {
      current.push_back(id);
      if (!fn(std::span<const EdgeId>(current))) stop = true;
      if (!stop && static_cast<int>(current.size()) < f) self(self, id + 1, m);
      current.pop_back();
    }
  };
  if (f > 0) rec(rec, first_from, first_to);
}

inline std::uint64_t count_fault_sets(EdgeId m, int f) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;
  for (int k = 0; k <= f && k <= m; ++k) {
    total += c;
    c = c * static_cast<std::uint64_t>(m - k) / static_cast<std::uint64_t>(k + 1);
  }
  return total;
}

inline int oracle_distance(const Graph& g, Vertex s, Vertex v,
                           std::span<const EdgeId> faults) {
  return bfs_distance(g, s, v, without_edges(g, faults));
}

struct Violation {
  Vertex source = kNoVertex;
  Vertex target = kNoVertex;
  std::vector<EdgeId> faults;
  int dist_h = kUnreachable;
  int dist_g = kUnreachable;
};

struct VerifyOptions {
  bool stop_at_first = false;
  std::size_t max_recorded = 64;
  int jobs = 1;
};

struct VerifyReport {
  bool ok = true;
  std::uint64_t fault_sets_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  // first max_recorded, enumeration order
};

// Maps every edge of h (same vertex ids) to its id in g.
inline std::vector<EdgeId> embed_subgraph(const Graph& g, const Graph& h) {
  if (h.num_vertices() > g.num_vertices()) {
    throw std::invalid_argument("structure has more vertices than the graph");
  }
  std::vector<EdgeId> ids;
  ids.reserve(h.num_edges());
  for (const Edge& e : h.edges()) {
    auto id = g.find_edge(e.u, e.v);
    if (!id) {
      throw std::invalid_argument("structure edge " + std::to_string(e.u) +
                                  " " + std::to_string(e.v) +
                                  " is not an edge of the graph");
    }
    ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Exhaustive check of dist(s, v, H \ F) == dist(s, v, G \ F) for all s in S,
// all v and all |F| <= f. H is given by edge ids of G.
inline VerifyReport verify_ft(std::span<const EdgeId> h_edges, const Graph& g,
                              std::span<const Vertex> sources, int f,
                              const VerifyOptions& options = {}) {
  if (f < 0 || f > kMaxExhaustiveFaults) {
    throw std::invalid_argument("exhaustive verification supports f <= " +
                                std::to_string(kMaxExhaustiveFaults));
  }
  std::vector<char> in_h(g.num_edges(), 0);
  for (EdgeId id : h_edges) {
    if (id < 0 || id >= g.num_edges()) {
      throw std::invalid_argument("structure edge id outside the graph");
    }
    in_h[id] = 1;
  }
  for (Vertex s : sources) {
    if (s < 0 || s >= g.num_vertices()) {
      throw std::invalid_argument("source out of range");
    }
  }
  const EdgeId m = g.num_edges();
  int jobs = std::max(1, options.jobs);
  std::size_t chunks = jobs == 1 ? 1 : static_cast<std::size_t>(m) + 1;
  std::vector<VerifyReport> parts(chunks);

  auto run_chunk = [&](std::size_t chunk) {
    VerifyReport& rep = parts[chunk];
    SubgraphMask gm(g);
    SubgraphMask hm(g);
    for (EdgeId id = 0; id < m; ++id) {
      if (!in_h[id]) hm.remove_edge(id);
    }
    EdgeId from = 0;
    EdgeId to = m;
    if (chunks > 1) {
      // chunk 0 is the empty set alone; chunk c starts with edge c-1
      if (chunk == 0) {
        from = 0;
        to = 0;
      } else {
        from = static_cast<EdgeId>(chunk - 1);
        to = from + 1;
      }
    }
    auto check = [&](std::span<const EdgeId> faults) {
      if (chunks > 1 && chunk != 0 && faults.empty()) return true;
      ++rep.fault_sets_checked;
      for (EdgeId id : faults) {
        gm.remove_edge(id);
        hm.remove_edge(id);
      }
      for (Vertex s : sources) {
        auto dg = bfs_hops(g, s, gm);
        auto dh = bfs_hops(g, s, hm);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
          if (dg[v] == dh[v]) continue;
          rep.ok = false;
          ++rep.violation_count;
          if (rep.violations.size() < options.max_recorded) {
            rep.violations.push_back(
                {s, v, std::vector<EdgeId>(faults.begin(), faults.end()),
                 dh[v], dg[v]});
          }
        }
      }
      for (EdgeId id : faults) {
        gm.restore_edge(id);
        if (in_h[id]) hm.restore_edge(id);
      }
      return !(options.stop_at_first && !rep.ok);
    };
    if (chunks > 1 && chunk == 0) {
      check(std::span<const EdgeId>());
      return;
    }
    for_each_fault_set(m, f, check, from, to);
  };
  parallel_for(chunks, jobs, run_chunk);

  VerifyReport out;
  for (auto& part : parts) {
    out.fault_sets_checked += part.fault_sets_checked;
    out.violation_count += part.violation_count;
    out.ok = out.ok && part.ok;
    for (auto& viol : part.violations) {
      if (out.violations.size() < options.max_recorded) {
        out.violations.push_back(std::move(viol));
      }
    }
    if (options.stop_at_first && !out.ok) break;
  }
  return out;
}

struct NecessityWitness {
  Vertex source = kNoVertex;
  Vertex target = kNoVertex;
  std::vector<EdgeId> faults;
};

struct NecessityResult {
  bool necessary = false;
  std::optional<NecessityWitness> witness;
};

// First vertex whose distance from s grows when e is removed on top of F.
inline std::optional<Vertex> necessity_target(const Graph& g, Vertex s,
                                              std::span<const EdgeId> faults,
                                              EdgeId e) {
  for (EdgeId id : faults) {
    if (id == e) return std::nullopt;
  }
  SubgraphMask mask = without_edges(g, faults);
  auto before = bfs_hops(g, s, mask);
  mask.remove_edge(e);
  auto after = bfs_hops(g, s, mask);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (after[v] > before[v]) return v;
  }
  return std::nullopt;
}

// Is e needed by every f-failure FT-MBFS for S? Searches fault sets in
// lexicographic order and returns the first witness.
inline NecessityResult edge_necessity(const Graph& g,
                                      std::span<const Vertex> sources, int f,
                                      EdgeId e) {
  if (e < 0 || e >= g.num_edges()) {
    throw std::invalid_argument("edge id outside the graph");
  }
  if (f < 0 || f > kMaxExhaustiveFaults) {
    throw std::invalid_argument("exhaustive search supports f <= " +
                                std::to_string(kMaxExhaustiveFaults));
  }
  NecessityResult out;
  for_each_fault_set(g.num_edges(), f, [&](std::span<const EdgeId> faults) {
    for (Vertex s : sources) {
      if (auto v = necessity_target(g, s, faults, e)) {
        out.necessary = true;
        out.witness = NecessityWitness{
            s, *v, std::vector<EdgeId>(faults.begin(), faults.end())};
        return false;
      }
    }
    return true;
  });
  return out;
}

struct FtDiameter {
  int diameter = 0;
  std::uint64_t unreachable = 0;  // (v, F) combinations with v cut off
};

// max over |F| <= f-1 and all v of the finite dist(s, v, G \ F).
inline FtDiameter ft_diameter(const Graph& g, Vertex s, int f) {
  if (f < 1) throw std::invalid_argument("f must be at least 1");
  if (f - 1 > kMaxExhaustiveFaults) {
    throw std::invalid_argument("fault budget too large for enumeration");
  }
  FtDiameter out;
  SubgraphMask mask(g);
  for_each_fault_set(g.num_edges(), f - 1, [&](std::span<const EdgeId> faults) {
    for (EdgeId id : faults) mask.remove_edge(id);
    auto d = bfs_hops(g, s, mask);
    for (int x : d) {
      if (x == kUnreachable) {
        ++out.unreachable;
      } else {
        out.diameter = std::max(out.diameter, x);
      }
    }
    for (EdgeId id : faults) mask.restore_edge(id);
    return true;
  });
  return out;
}

}  // namespace ftbfs
