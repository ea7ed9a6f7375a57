#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "ftbfs/builder.hpp"
#include "ftbfs/graph.hpp"
#include "ftbfs/parallel.hpp"
#include "ftbfs/sssp.hpp"
#include "ftbfs/verifier.hpp"

namespace ftbfs {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  std::size_t count_and(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      c += std::popcount(words_[k] & o.words_[k]);
    }
    return c;
  }
  void subtract(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
  }
  void unite(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w != 0; });
  }
  bool contains_all(const Bitset& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (o.words_[k] & ~words_[k]) return false;
    }
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Shared list of every fault set with |F| <= f, in enumeration order.
using FaultSetTable = std::vector<std::vector<EdgeId>>;

struct UniverseItem {
  int source_index = 0;      // into CoverInstance::sources
  std::uint32_t fault_set = 0;  // into the fault-set table
};

struct CoverInstance {
  Vertex vertex = kNoVertex;
  std::vector<Vertex> sources;
  std::shared_ptr<const FaultSetTable> fault_sets;
  std::vector<UniverseItem> universe;
  std::vector<Vertex> neighbors;  // ascending
  std::vector<Bitset> sets;       // sets[j] = S_{i,j} over universe indices

  const std::vector<EdgeId>& faults(const UniverseItem& item) const {
    return (*fault_sets)[item.fault_set];
  }
};

inline std::shared_ptr<const FaultSetTable> enumerate_fault_sets(const Graph& g,
                                                                 int f) {
  if (f < 0 || f > kMaxExhaustiveFaults) {
    throw std::invalid_argument("fault budget outside supported range");
  }
  auto table = std::make_shared<FaultSetTable>();
  for_each_fault_set(g.num_edges(), f, [&](std::span<const EdgeId> fs) {
    table->emplace_back(fs.begin(), fs.end());
    return true;
  });
  return table;
}

// One instance per vertex; a single BFS per (source, F) feeds all of them.
inline std::vector<CoverInstance> build_cover_instances(
    const Graph& g, std::span<const Vertex> sources, int f) {
  for (Vertex s : sources) {
    if (s < 0 || s >= g.num_vertices()) {
      throw std::invalid_argument("source out of range");
    }
  }
  auto table = enumerate_fault_sets(g, f);
  const Vertex n = g.num_vertices();
  std::vector<CoverInstance> out(n);
  for (Vertex v = 0; v < n; ++v) {
    out[v].vertex = v;
    out[v].sources.assign(sources.begin(), sources.end());
    out[v].fault_sets = table;
    for (const Neighbor& nb : g.neighbors(v)) out[v].neighbors.push_back(nb.to);
  }
  // Grow bitsets in chunks to avoid per-item reallocation.
  std::vector<std::vector<std::vector<std::size_t>>> members(n);
  for (Vertex v = 0; v < n; ++v) members[v].resize(g.degree(v));

  SubgraphMask mask(g);
  for (std::uint32_t fi = 0; fi < table->size(); ++fi) {
    const auto& faults = (*table)[fi];
    for (EdgeId id : faults) mask.remove_edge(id);
    for (int k = 0; k < static_cast<int>(sources.size()); ++k) {
      auto dist = bfs_hops(g, sources[k], mask);
      for (Vertex v = 0; v < n; ++v) {
        if (dist[v] == 0 || dist[v] == kUnreachable) continue;
        std::size_t item = out[v].universe.size();
        out[v].universe.push_back({k, fi});
        int j = 0;
        for (const Neighbor& nb : g.neighbors(v)) {
          if (!mask.edge_removed(nb.id) && dist[nb.to] == dist[v] - 1) {
            members[v][j].push_back(item);
          }
          ++j;
        }
      }
    }
    for (EdgeId id : faults) mask.restore_edge(id);
  }
  for (Vertex v = 0; v < n; ++v) {
    for (auto& list : members[v]) {
      Bitset b(out[v].universe.size());
      for (std::size_t item : list) b.set(item);
      out[v].sets.push_back(std::move(b));
    }
  }
  return out;
}

inline CoverInstance build_cover_instance(const Graph& g,
                                          std::span<const Vertex> sources,
                                          int f, Vertex v) {
  if (v < 0 || v >= g.num_vertices()) {
    throw std::invalid_argument("vertex out of range");
  }
  return std::move(build_cover_instances(g, sources, f)[v]);
}

// Indices into instance.sets, in pick order.
inline std::vector<int> greedy_cover(const CoverInstance& inst) {
  Bitset uncovered(inst.universe.size());
  for (std::size_t i = 0; i < inst.universe.size(); ++i) uncovered.set(i);
  std::vector<int> chosen;
  std::vector<bool> used(inst.sets.size(), false);
  while (uncovered.any()) {
    int best = -1;
    std::size_t best_gain = 0;
    for (int j = 0; j < static_cast<int>(inst.sets.size()); ++j) {
      if (used[j]) continue;
      std::size_t gain = inst.sets[j].count_and(uncovered);
      if (gain > best_gain) {
        best = j;
        best_gain = gain;
      }
    }
    if (best < 0) throw std::logic_error("universe item not coverable");
    used[best] = true;
    chosen.push_back(best);
    uncovered.subtract(inst.sets[best]);
  }
  return chosen;
}

inline double harmonic(std::size_t k) {
  double h = 0;
  for (std::size_t i = 1; i <= k; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

struct ApproxResult {
  FtStructure structure;
  std::vector<std::vector<Vertex>> chosen;  // per vertex, chosen neighbors
  std::vector<std::size_t> universe_sizes;
  std::vector<std::size_t> candidate_sets;  // degree, per vertex
};

inline ApproxResult approx_ftmbfs(const Graph& g,
                                  std::span<const Vertex> sources, int f,
                                  int jobs = 1) {
  if (sources.empty()) throw std::invalid_argument("no sources");
  if (f < 1) throw std::invalid_argument("f must be at least 1");
  auto instances = build_cover_instances(g, sources, f);
  const Vertex n = g.num_vertices();
  ApproxResult out;
  out.chosen.resize(n);
  out.universe_sizes.resize(n);
  out.candidate_sets.resize(n);
  std::vector<std::vector<int>> picks(n);
  parallel_for(n, jobs, [&](std::size_t v) {
    picks[v] = greedy_cover(instances[v]);
  });

  FtStructure& h = out.structure;
  h.host = &g;
  h.sources.assign(sources.begin(), sources.end());
  h.f = f;
  h.per_vertex_new.assign(n, {});
  for (Vertex s : sources) {
    auto t0 = unique_sssp(g, s, full_mask(g));
    detail::add_tree(h, g, s, t0);
  }
  for (Vertex v = 0; v < n; ++v) {
    out.universe_sizes[v] = instances[v].universe.size();
    out.candidate_sets[v] = instances[v].sets.size();
    for (int j : picks[v]) {
      Vertex u = instances[v].neighbors[j];
      out.chosen[v].push_back(u);
      EdgeId id = g.edge_id(u, v);
      if (h.provenance.emplace(id, Provenance{v, kNoVertex, {}, Step::kCover})
              .second) {
        ++h.step_histogram[static_cast<int>(Step::kCover)];
        h.per_vertex_new[v].push_back(id);
      }
    }
    std::sort(h.per_vertex_new[v].begin(), h.per_vertex_new[v].end());
  }
  detail::finalize_edges(h);
  return out;
}

}  // namespace ftbfs
