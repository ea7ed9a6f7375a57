#pragma once

#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ftbfs/graph.hpp"
#include "ftbfs/parallel.hpp"
#include "ftbfs/replacement.hpp"
#include "ftbfs/sssp.hpp"

namespace ftbfs {

enum class Step { kTree, kE1, kE2, kE3, kCover };

inline const char* to_string(Step s) {
  switch (s) {
    case Step::kTree: return "TREE";
    case Step::kE1: return "E1";
    case Step::kE2: return "E2";
    case Step::kE3: return "E3";
    case Step::kCover: return "COVER";
  }
  return "?";
}

struct Provenance {
  Vertex target = kNoVertex;
  Vertex source = kNoVertex;
  std::vector<EdgeId> faults;
  Step step = Step::kTree;
};

struct StepCounts {
  int e1 = 0;  // new-ending paths per step
  int e2 = 0;
  int e3 = 0;
  int unreachable = 0;
  int pairs = 0;          // |F_v(D)|
  int branch1 = 0;        // pairs satisfied by E_{tau-1}(v)
  int e1_size = 0;        // |E_1(pi)|
  int e2_size = 0;        // |E_2(pi)|
  bool monotone = true;   // |E_tau| <= |E_{tau-1}| + 1 throughout
};

// Everything build_h_of_v computed for one target, kept for analysis.
struct HvTrace {
  Vertex source = kNoVertex;
  Vertex target = kNoVertex;
  std::optional<TargetFrame> frame;
  std::vector<std::optional<Detour>> detours;  // indexed by pi edge
  std::vector<ReplacementPath> singles;
  std::vector<ReplacementPath> pipi;
  std::vector<ReplacementPath> pid;
};

struct HvResult {
  std::vector<EdgeId> edges;      // H(v) = final E_tau(v), sorted
  std::vector<EdgeId> tree_edges; // E(v, T_0)
  StepCounts counts;
  std::vector<std::pair<EdgeId, Provenance>> introduced;  // in order
  HvTrace trace;

  std::vector<EdgeId> new_edges() const {
    std::vector<EdgeId> out;
    std::set_difference(edges.begin(), edges.end(), tree_edges.begin(),
                        tree_edges.end(), std::back_inserter(out));
    return out;
  }
};

// Edges of T_0 incident to each vertex.
inline std::vector<std::vector<EdgeId>> tree_incidence(
    const Graph& g, const ShortestPathTree& t0) {
  std::vector<std::vector<EdgeId>> out(g.num_vertices());
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (t0.parent_edge[x] == kNoEdge) continue;
    out[x].push_back(t0.parent_edge[x]);
    out[t0.parent[x]].push_back(t0.parent_edge[x]);
  }
  for (auto& list : out) std::sort(list.begin(), list.end());
  return out;
}

namespace detail {

class EdgeSetBuilder {
 public:
  explicit EdgeSetBuilder(std::vector<EdgeId> init) : edges_(std::move(init)) {
    std::sort(edges_.begin(), edges_.end());
  }
  bool contains(EdgeId id) const {
    return std::binary_search(edges_.begin(), edges_.end(), id);
  }
  bool insert(EdgeId id) {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id);
    if (it != edges_.end() && *it == id) return false;
    edges_.insert(it, id);
    return true;
  }
  const std::vector<EdgeId>& edges() const { return edges_; }

 private:
  std::vector<EdgeId> edges_;
};

}  // namespace detail

// Per-target construction (steps 1-3). `tree_edges` is E(v, T_0).
inline HvResult build_h_of_v(const Graph& g, Vertex s, Vertex v,
                             const std::vector<EdgeId>& tree_edges) {
  if (v == s) throw std::invalid_argument("target equals source");
  HvResult out;
  out.tree_edges = tree_edges;
  std::sort(out.tree_edges.begin(), out.tree_edges.end());
  out.trace.source = s;
  out.trace.target = v;
  detail::EdgeSetBuilder current(out.tree_edges);
  auto frame = TargetFrame::make(g, s, v);
  if (!frame) {
    out.edges = current.edges();
    return out;
  }
  out.trace.frame = frame;
  const int depth = frame->depth();
  auto& detours = out.trace.detours;
  detours.assign(depth, std::nullopt);

  auto harvest = [&](ReplacementPath& rp, Step step) {
    EdgeId last = last_edge(g, rp.path);
    if (current.insert(last)) {
      rp.new_ending = true;
      out.introduced.push_back({last, Provenance{v, s, rp.faults, step}});
      return true;
    }
    return false;
  };

  std::vector<EdgeId> e1;
  for (int i = depth - 1; i >= 0; --i) {
    auto r = single_fault_at(*frame, i);
    if (!r) {
      ++out.counts.unreachable;
      continue;
    }
    detours[i] = r->detour;
    e1.push_back(last_edge(g, r->rp.path));
    out.trace.singles.push_back(std::move(r->rp));
  }
  // E1 is harvested top-down on pi.
  std::reverse(out.trace.singles.begin(), out.trace.singles.end());
  for (auto& rp : out.trace.singles) out.counts.e1 += harvest(rp, Step::kE1);
  std::sort(e1.begin(), e1.end());
  out.counts.e1_size =
      static_cast<int>(std::unique(e1.begin(), e1.end()) - e1.begin());

  std::vector<EdgeId> e2;
  for (int i = 0; i < depth; ++i) {
    for (int j = i + 1; j < depth; ++j) {
      auto rp = pipi_rp(*frame, i, j, detours[i] ? &*detours[i] : nullptr,
                        detours[j] ? &*detours[j] : nullptr);
      if (!rp) {
        ++out.counts.unreachable;
        continue;
      }
      e2.push_back(last_edge(g, rp->path));
      out.counts.e2 += harvest(*rp, Step::kE2);
      out.trace.pipi.push_back(std::move(*rp));
    }
  }
  std::sort(e2.begin(), e2.end());
  out.counts.e2_size =
      static_cast<int>(std::unique(e2.begin(), e2.end()) - e2.begin());

  for (const FaultPair& pair : order_fault_pairs(*frame, detours)) {
    ++out.counts.pairs;
    auto rp = pid_rp(*frame, pair, *detours[pair.pi_index], current.edges());
    if (!rp) {
      ++out.counts.unreachable;
      continue;
    }
    std::size_t before = current.edges().size();
    EdgeId last = last_edge(g, rp->path);
    bool added = current.insert(last);
    if (rp->new_ending != added) {
      throw std::logic_error("new-ending flag disagrees with edge insertion");
    }
    if (added) {
      ++out.counts.e3;
      out.introduced.push_back({last, Provenance{v, s, rp->faults, Step::kE3}});
    } else {
      ++out.counts.branch1;
    }
    if (current.edges().size() > before + 1) out.counts.monotone = false;
    out.trace.pid.push_back(std::move(*rp));
  }
  out.edges = current.edges();
  return out;
}

struct FtStructure {
  const Graph* host = nullptr;
  std::vector<Vertex> sources;
  int f = 2;
  std::vector<EdgeId> edges;  // sorted ids of H
  std::map<EdgeId, Provenance> provenance;
  std::vector<std::vector<EdgeId>> per_vertex_new;
  std::array<int, 5> step_histogram{};  // new edges per Step

  bool contains(EdgeId id) const {
    return std::binary_search(edges.begin(), edges.end(), id);
  }
  std::size_t size() const { return edges.size(); }
  std::size_t max_new() const {
    std::size_t best = 0;
    for (const auto& list : per_vertex_new) best = std::max(best, list.size());
    return best;
  }
};

struct BuildOptions {
  int jobs = 1;
  bool keep_traces = false;
};

struct BuildResult {
  FtStructure structure;
  std::vector<HvResult> per_vertex;  // indexed by v; traces only if kept
};

namespace detail {

inline void add_tree(FtStructure& h, const Graph& g, Vertex s,
                     const ShortestPathTree& t0) {
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    EdgeId id = t0.parent_edge[x];
    if (id == kNoEdge || h.provenance.count(id)) continue;
    h.provenance[id] = Provenance{x, s, {}, Step::kTree};
    ++h.step_histogram[static_cast<int>(Step::kTree)];
  }
}

inline void finalize_edges(FtStructure& h) {
  h.edges.clear();
  for (const auto& [id, prov] : h.provenance) h.edges.push_back(id);
}

}  // namespace detail

inline BuildResult build_ftbfs_detailed(const Graph& g, Vertex s,
                                        const BuildOptions& options = {}) {
  if (s < 0 || s >= g.num_vertices()) {
    throw std::invalid_argument("source out of range");
  }
  BuildResult result;
  FtStructure& h = result.structure;
  h.host = &g;
  h.sources = {s};
  h.f = 2;
  h.per_vertex_new.assign(g.num_vertices(), {});
  auto t0 = unique_sssp(g, s, full_mask(g));
  auto incidence = tree_incidence(g, t0);
  detail::add_tree(h, g, s, t0);

  result.per_vertex.resize(g.num_vertices());
  parallel_for(g.num_vertices(), options.jobs, [&](std::size_t idx) {
    Vertex v = static_cast<Vertex>(idx);
    if (v == s) return;
    result.per_vertex[v] = build_h_of_v(g, s, v, incidence[v]);
    if (!options.keep_traces) result.per_vertex[v].trace = HvTrace{};
  });
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v == s) continue;
    const HvResult& hv = result.per_vertex[v];
    h.per_vertex_new[v] = hv.new_edges();
    for (const auto& [id, prov] : hv.introduced) {
      if (h.provenance.emplace(id, prov).second) {
        ++h.step_histogram[static_cast<int>(prov.step)];
      }
    }
  }
  detail::finalize_edges(h);
  return result;
}

inline FtStructure build_ftbfs(const Graph& g, Vertex s, int jobs = 1) {
  return build_ftbfs_detailed(g, s, {jobs, false}).structure;
}

// Last edges of replacement paths for fault sets inside pi(s,v) only.
inline FtStructure build_f_pi_only(const Graph& g, Vertex s, int f) {
  if (f < 1) throw std::invalid_argument("f must be at least 1");
  FtStructure h;
  h.host = &g;
  h.sources = {s};
  h.f = f;
  h.per_vertex_new.assign(g.num_vertices(), {});
  auto t0 = unique_sssp(g, s, full_mask(g));
  auto incidence = tree_incidence(g, t0);
  detail::add_tree(h, g, s, t0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v == s || !t0.reachable(v)) continue;
    auto pi = *t0.path_to(v);
    auto pe = path_edges(g, pi);
    detail::EdgeSetBuilder current(incidence[v]);
    std::vector<int> idx;
    auto visit = [&](auto&& self, int start) -> void {
      if (!idx.empty()) {
        std::vector<EdgeId> faults;
        for (int i : idx) faults.push_back(pe[i]);
        auto p = unique_path(g, s, v, without_edges(g, faults));
        if (p) {
          EdgeId last = last_edge(g, *p);
          if (current.insert(last) && h.provenance.emplace(
                  last, Provenance{v, s, faults,
                                   idx.size() == 1 ? Step::kE1 : Step::kE2})
                                          .second) {
            ++h.step_histogram[idx.size() == 1 ? 1 : 2];
          }
        }
      }
      if (static_cast<int>(idx.size()) == f) return;
      for (int i = start; i < static_cast<int>(pe.size()); ++i) {
        idx.push_back(i);
        self(self, i + 1);
        idx.pop_back();
      }
    };
    visit(visit, 0);
    std::set_difference(current.edges().begin(), current.edges().end(),
                        incidence[v].begin(), incidence[v].end(),
                        std::back_inserter(h.per_vertex_new[v]));
  }
  detail::finalize_edges(h);
  return h;
}

}  // namespace ftbfs
