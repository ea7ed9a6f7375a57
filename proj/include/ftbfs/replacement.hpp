#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftbfs/graph.hpp"
#include "ftbfs/sssp.hpp"

namespace ftbfs {

enum class PathKind { kSingle, kPiPi, kPiD };

inline const char* to_string(PathKind k) {
  switch (k) {
    case PathKind::kSingle: return "SINGLE";
    case PathKind::kPiPi: return "PI_PI";
    case PathKind::kPiD: return "PI_D";
  }
  return "?";
}

// faults[0] is F_1 (on pi); faults[1], when present, is F_2.
struct ReplacementPath {
  Vertex target = kNoVertex;
  std::vector<EdgeId> faults;
  Path path;
  Vertex pi_divergence = kNoVertex;
  std::optional<Vertex> d_divergence;
  bool new_ending = false;
  PathKind kind = PathKind::kSingle;

  EdgeId first_fault() const { return faults.at(0); }
  EdgeId second_fault() const { return faults.size() > 1 ? faults[1] : kNoEdge; }
};

struct Detour {
  Vertex target = kNoVertex;
  EdgeId protected_edge = kNoEdge;
  int protected_index = -1;  // i of e_i = (u_i, u_{i+1})
  Vertex x = kNoVertex;
  Vertex y = kNoVertex;
  int x_pos = -1;  // positions of x and y on pi
  int y_pos = -1;
  Path segment;  // x .. y

  int length() const { return segment.length(); }
  bool same_segment(const Detour& o) const {
    return segment.vertices == o.segment.vertices;
  }
};

// pi(s,v) = SP(s, v, G, W) together with position lookups.
class TargetFrame {
 public:
  TargetFrame(const Graph& g, Path pi)
      : g_(&g), pi_(std::move(pi)), pos_(g.num_vertices(), -1) {
    for (int i = 0; i < static_cast<int>(pi_.vertices.size()); ++i) {
      pos_[pi_.vertices[i]] = i;
    }
    edges_ = path_edges(g, pi_);
  }

  static std::optional<TargetFrame> make(const Graph& g, Vertex s, Vertex v) {
    auto pi = unique_path(g, s, v, full_mask(g));
    if (!pi) return std::nullopt;
    return TargetFrame(g, std::move(*pi));
  }

  const Graph& graph() const { return *g_; }
  const Path& pi() const { return pi_; }
  Vertex source() const { return pi_.front(); }
  Vertex target() const { return pi_.back(); }
  int depth() const { return pi_.length(); }
  int pos(Vertex x) const { return pos_[x]; }
  bool on_pi(Vertex x) const { return pos_[x] >= 0; }
  Vertex at(int i) const { return pi_.vertices.at(i); }
  EdgeId pi_edge(int i) const { return edges_.at(i); }
  const std::vector<EdgeId>& pi_edges() const { return edges_; }

  int edge_index(EdgeId id) const {
    if (!pi_.key.contains(id)) return -1;
    const Edge& e = g_->edge(id);
    return std::min(pos_[e.u], pos_[e.v]);
  }

 private:
  const Graph* g_;
  Path pi_;
  std::vector<int> pos_;
  std::vector<EdgeId> edges_;
};

// G(u_k, u_l) by pi positions: drops u_{k+1} .. u_l, keeping v.
inline SubgraphMask restricted_mask(const TargetFrame& frame, int k, int l) {
  if (k < 0 || l > frame.depth() || k > l) {
    throw std::invalid_argument("restricted graph positions out of order");
  }
  SubgraphMask mask(frame.graph());
  for (int i = k + 1; i <= l; ++i) {
    if (i != frame.depth()) mask.remove_vertex(frame.at(i));
  }
  return mask;
}

inline SubgraphMask restricted_graph(const Graph& g, const Path& pi,
                                     Vertex u_k, Vertex u_ell) {
  TargetFrame frame(g, pi);
  if (u_k < 0 || u_ell < 0 || u_k >= g.num_vertices() ||
      u_ell >= g.num_vertices() || !frame.on_pi(u_k) || !frame.on_pi(u_ell)) {
    throw std::invalid_argument("restricted graph endpoints not on pi");
  }
  return restricted_mask(frame, frame.pos(u_k), frame.pos(u_ell));
}

// Position on pi of the first divergence point: the end of the longest
// common prefix of path and pi.
inline int pi_divergence_pos(const TargetFrame& frame, const Path& p) {
  const auto& a = p.vertices;
  const auto& b = frame.pi().vertices;
  std::size_t j = 0;
  while (j + 1 < a.size() && j + 1 < b.size() && a[j + 1] == b[j + 1]) ++j;
  return static_cast<int>(j);
}

struct SingleFaultResult {
  ReplacementPath rp;
  Detour detour;
  int k0 = 0;
};

inline SingleFaultResult make_single_result(const TargetFrame& frame, int i,
                                            Path path, int k0) {
  const Graph& g = frame.graph();
  SingleFaultResult out;
  out.k0 = k0;
  int xp = pi_divergence_pos(frame, path);
  int after = xp + 1;
  while (after < static_cast<int>(path.vertices.size()) &&
         !frame.on_pi(path.vertices[after])) {
    ++after;
  }
  if (after >= static_cast<int>(path.vertices.size())) {
    throw std::logic_error("single-fault path never returns to pi");
  }
  Detour& d = out.detour;
  d.target = frame.target();
  d.protected_edge = frame.pi_edge(i);
  d.protected_index = i;
  d.x = path.vertices[xp];
  d.y = path.vertices[after];
  d.x_pos = frame.pos(d.x);
  d.y_pos = frame.pos(d.y);
  d.segment = make_path(
      g, std::vector<Vertex>(path.vertices.begin() + xp,
                             path.vertices.begin() + after + 1));
  ReplacementPath& rp = out.rp;
  rp.target = frame.target();
  rp.faults = {frame.pi_edge(i)};
  rp.pi_divergence = d.x;
  rp.kind = PathKind::kSingle;
  rp.path = std::move(path);
  return out;
}

// Step (1): the replacement path for e_i whose divergence point from pi is
// closest to s. nullopt when v is cut off by e_i.
inline std::optional<SingleFaultResult> single_fault_at(
    const TargetFrame& frame, int i) {
  if (i < 0 || i >= frame.depth()) {
    throw std::invalid_argument("fault edge index not on pi");
  }
  const Graph& g = frame.graph();
  EdgeId e = frame.pi_edge(i);
  int want = bfs_distance(g, frame.source(), frame.target(),
                          without_edges(g, std::span<const EdgeId>(&e, 1)));
  if (want == kUnreachable) return std::nullopt;
  for (int k = 0; k <= i; ++k) {
    SubgraphMask mask = restricted_mask(frame, k, i);
    mask.remove_edge(e);
    if (bfs_distance(g, frame.source(), frame.target(), mask) != want) continue;
    auto path = unique_path(g, frame.source(), frame.target(), mask);
    return make_single_result(frame, i, std::move(*path), k);
  }
  throw std::logic_error("no divergence point found for single fault");
}

inline std::optional<SingleFaultResult> single_fault_rp(
    const TargetFrame& frame, EdgeId e) {
  int i = frame.edge_index(e);
  if (i < 0) throw std::invalid_argument("fault edge not on pi");
  return single_fault_at(frame, i);
}

inline std::optional<SingleFaultResult> single_fault_rp(const Graph& g,
                                                        Vertex s, Vertex v,
                                                        EdgeId e) {
  auto frame = TargetFrame::make(g, s, v);
  if (!frame) throw std::invalid_argument("target unreachable from source");
  return single_fault_rp(*frame, e);
}

namespace detail {

inline bool avoids(const Path& p, const std::vector<EdgeId>& faults) {
  for (EdgeId f : faults) {
    if (p.contains_edge(f)) return false;
  }
  return true;
}

inline std::optional<Path> try_make_path(const Graph& g,
                                         std::vector<Vertex> seq) {
  try {
    return make_path(g, std::move(seq));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace detail

// Step (2): both faults on pi, e_i above e_j (i < j).
inline std::optional<ReplacementPath> pipi_rp(const TargetFrame& frame, int i,
                                              int j, const Detour* di,
                                              const Detour* dj) {
  if (i < 0 || j < 0 || i >= frame.depth() || j >= frame.depth() || i == j) {
    throw std::invalid_argument("pi-pi faults must be two distinct pi edges");
  }
  if (i > j) std::swap(i, j), std::swap(di, dj);
  const Graph& g = frame.graph();
  std::vector<EdgeId> faults{frame.pi_edge(i), frame.pi_edge(j)};
  int want = bfs_distance(g, frame.source(), frame.target(),
                          without_edges(g, faults));
  if (want == kUnreachable) return std::nullopt;

  std::optional<Path> chosen;
  if (di != nullptr && dj != nullptr) {
    const auto& a = di->segment.vertices;
    const auto& b = dj->segment.vertices;
    int wb = -1;
    for (int q = static_cast<int>(b.size()) - 1; q >= 0 && wb < 0; --q) {
      if (std::find(a.begin(), a.end(), b[q]) != a.end()) wb = q;
    }
    if (wb >= 0) {
      auto wa = std::find(a.begin(), a.end(), b[wb]) - a.begin();
      const auto& pv = frame.pi().vertices;
      std::vector<Vertex> seq(pv.begin(), pv.begin() + di->x_pos);
      seq.insert(seq.end(), a.begin(), a.begin() + wa);
      seq.insert(seq.end(), b.begin() + wb, b.end());
      seq.insert(seq.end(), pv.begin() + dj->y_pos + 1, pv.end());
      auto p = detail::try_make_path(g, std::move(seq));
      if (p && p->length() == want && detail::avoids(*p, faults)) chosen = p;
    }
  }
  if (!chosen) {
    chosen = unique_path(g, frame.source(), frame.target(),
                         without_edges(g, faults));
  }
  ReplacementPath rp;
  rp.target = frame.target();
  rp.faults = faults;
  rp.pi_divergence = chosen->vertices[pi_divergence_pos(frame, *chosen)];
  rp.kind = PathKind::kPiPi;
  rp.path = std::move(*chosen);
  return rp;
}

struct FaultPair {
  int pi_index = -1;     // e = (u_i, u_{i+1})
  int detour_index = -1; // t = (w_j, w_{j+1}) on D_i
  EdgeId e = kNoEdge;
  EdgeId t = kNoEdge;
  friend bool operator==(const FaultPair&, const FaultPair&) = default;
};

// F_v(D) in decreasing order: deeper e first, then deeper t on its detour.
inline std::vector<FaultPair> order_fault_pairs(
    const TargetFrame& frame, const std::vector<std::optional<Detour>>& detours) {
  if (static_cast<int>(detours.size()) != frame.depth()) {
    throw std::invalid_argument("one detour slot per pi edge expected");
  }
  const Graph& g = frame.graph();
  std::vector<FaultPair> out;
  for (int i = frame.depth() - 1; i >= 0; --i) {
    if (!detours[i]) continue;
    auto tedges = path_edges(g, detours[i]->segment);
    for (int j = static_cast<int>(tedges.size()) - 1; j >= 0; --j) {
      out.push_back({i, j, frame.pi_edge(i), tedges[j]});
    }
  }
  return out;
}

// Step (3) for one pair. `current` holds E_{tau-1}(v).
inline std::optional<ReplacementPath> pid_rp(const TargetFrame& frame,
                                             const FaultPair& pair,
                                             const Detour& detour,
                                             const std::vector<EdgeId>& current) {
  const Graph& g = frame.graph();
  if (pair.pi_index < 0 || pair.pi_index >= frame.depth() ||
      frame.pi_edge(pair.pi_index) != pair.e ||
      detour.protected_index != pair.pi_index ||
      pair.detour_index < 0 || pair.detour_index >= detour.length() ||
      g.edge_id(detour.segment.vertices[pair.detour_index],
                detour.segment.vertices[pair.detour_index + 1]) != pair.t) {
    throw std::invalid_argument("fault pair is not in F_v(D)");
  }
  const Vertex s = frame.source();
  const Vertex v = frame.target();
  std::vector<EdgeId> faults{pair.e, pair.t};
  int want = bfs_distance(g, s, v, without_edges(g, faults));
  if (want == kUnreachable) return std::nullopt;

  ReplacementPath rp;
  rp.target = v;
  rp.faults = faults;
  rp.kind = PathKind::kPiD;

  SubgraphMask gt(g);
  for (const Neighbor& nb : g.neighbors(v)) gt.remove_edge(nb.id);
  for (EdgeId id : current) gt.restore_edge(id);
  gt.remove_edges(faults);
  if (bfs_distance(g, s, v, gt) == want) {
    rp.path = *unique_path(g, s, v, gt);
    rp.pi_divergence = rp.path.vertices[pi_divergence_pos(frame, rp.path)];
    return rp;
  }
  rp.new_ending = true;

  for (int k = 0; k <= pair.pi_index; ++k) {
    SubgraphMask mask = restricted_mask(frame, k, frame.depth());
    mask.remove_edges(faults);
    if (bfs_distance(g, s, v, mask) != want) continue;
    if (k != detour.x_pos) {
      rp.path = *unique_path(g, s, v, mask);
      rp.pi_divergence = frame.at(k);
      return rp;
    }
    // Divergence from pi coincides with the detour start: pick the exit
    // from the detour closest to x.
    const auto& w = detour.segment.vertices;
    const auto& pv = frame.pi().vertices;
    for (int l = 0; l <= pair.detour_index; ++l) {
      SubgraphMask gd = restricted_mask(frame, detour.x_pos, frame.depth());
      for (std::size_t q = l + 1; q < w.size(); ++q) {
        if (w[q] != v) gd.remove_vertex(w[q]);
      }
      gd.remove_edges(faults);
      for (int q = 0; q < detour.x_pos; ++q) gd.remove_vertex(pv[q]);
      for (int q = 0; q < l; ++q) gd.remove_vertex(w[q]);
      int tail = bfs_distance(g, w[l], v, gd);
      if (tail == kUnreachable || detour.x_pos + l + tail != want) continue;
      auto suffix = unique_path(g, w[l], v, gd);
      std::vector<Vertex> seq(pv.begin(), pv.begin() + detour.x_pos);
      seq.insert(seq.end(), w.begin(), w.begin() + l);
      seq.insert(seq.end(), suffix->vertices.begin(), suffix->vertices.end());
      rp.path = make_path(g, std::move(seq));
      rp.pi_divergence = detour.x;
      if (l >= 1) rp.d_divergence = w[l];
      return rp;
    }
    throw std::logic_error("no detour divergence point found");
  }
  throw std::logic_error("no pi divergence point found for fault pair");
}

}  // namespace ftbfs
