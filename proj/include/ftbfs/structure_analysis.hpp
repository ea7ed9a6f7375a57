#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ftbfs/builder.hpp"
#include "ftbfs/graph.hpp"
#include "ftbfs/replacement.hpp"
#include "ftbfs/sssp.hpp"

namespace ftbfs {

enum class DetourKind {
  kNonNested,
  kNested,
  kInterleaved,
  kXInterleaved,
  kYInterleaved,
  kXYInterleaved,
  kCoincident,  // x_1 = x_2 and y_1 = y_2
};

enum class Direction { kFw, kRev };

inline const char* to_string(DetourKind k) {
  switch (k) {
    case DetourKind::kNonNested: return "NON_NESTED";
    case DetourKind::kNested: return "NESTED";
    case DetourKind::kInterleaved: return "INTERLEAVED";
    case DetourKind::kXInterleaved: return "X_INTERLEAVED";
    case DetourKind::kYInterleaved: return "Y_INTERLEAVED";
    case DetourKind::kXYInterleaved: return "XY_INTERLEAVED";
    case DetourKind::kCoincident: return "COINCIDENT";
  }
  return "?";
}

inline const char* to_string(Direction d) {
  return d == Direction::kFw ? "FW" : "REV";
}

struct DetourConfig {
  DetourKind kind = DetourKind::kNonNested;
  bool dependent = false;
  std::optional<Direction> direction;
  bool swapped = false;  // true when the inputs were reordered
};

namespace detail {

inline std::unordered_set<Vertex> vertex_set(const Detour& d) {
  return {d.segment.vertices.begin(), d.segment.vertices.end()};
}

inline int index_of(const std::vector<Vertex>& seq, Vertex x) {
  auto it = std::find(seq.begin(), seq.end(), x);
  return it == seq.end() ? -1 : static_cast<int>(it - seq.begin());
}

inline bool detour_order_less(const Detour& a, const Detour& b) {
  if (a.x_pos != b.x_pos) return a.x_pos < b.x_pos;
  return a.y_pos < b.y_pos;
}

}  // namespace detail

// First vertex of a on the way from x to y that also lies on b.
inline std::optional<Vertex> first_common(const Detour& a, const Detour& b) {
  auto other = detail::vertex_set(b);
  for (Vertex x : a.segment.vertices) {
    if (other.count(x)) return x;
  }
  return std::nullopt;
}

inline std::optional<Vertex> last_common(const Detour& a, const Detour& b) {
  auto other = detail::vertex_set(b);
  const auto& seq = a.segment.vertices;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    if (other.count(*it)) return *it;
  }
  return std::nullopt;
}

inline DetourConfig classify_pair(const Detour& d1, const Detour& d2) {
  if (d1.target != d2.target) {
    throw std::invalid_argument("detours belong to different targets");
  }
  DetourConfig out;
  const Detour* a = &d1;
  const Detour* b = &d2;
  if (detail::detour_order_less(*b, *a)) {
    std::swap(a, b);
    out.swapped = true;
  }
  const int x1 = a->x_pos, y1 = a->y_pos, x2 = b->x_pos, y2 = b->y_pos;
  if (y1 < x2) {
    out.kind = DetourKind::kNonNested;
  } else if (x1 == x2 && y1 == y2) {
    out.kind = DetourKind::kCoincident;
  } else if (x1 == x2) {
    out.kind = DetourKind::kXInterleaved;
  } else if (y1 == x2) {
    out.kind = DetourKind::kXYInterleaved;
  } else if (y1 == y2) {
    out.kind = DetourKind::kYInterleaved;
  } else if (y2 < y1) {
    out.kind = DetourKind::kNested;
  } else {
    out.kind = DetourKind::kInterleaved;
  }
  auto f12 = first_common(*a, *b);
  out.dependent = f12.has_value();
  if (out.dependent && out.kind == DetourKind::kXYInterleaved) {
    out.direction = Direction::kRev;
  } else if (out.dependent && out.kind == DetourKind::kInterleaved) {
    out.direction =
        *f12 == *first_common(*b, *a) ? Direction::kFw : Direction::kRev;
  }
  return out;
}

// D_1[w, y_1] with w = Last(D_2, D_1); empty unless x_1 <= x_2 <= y_1 < y_2
// and the pair is dependent.
inline std::vector<Vertex> excluded_segment(const Detour& d1,
                                            const Detour& d2) {
  if (!(d1.x_pos <= d2.x_pos && d2.x_pos <= d1.y_pos && d1.y_pos < d2.y_pos)) {
    return {};
  }
  auto w = last_common(d2, d1);
  if (!w) return {};
  const auto& seq = d1.segment.vertices;
  int at = detail::index_of(seq, *w);
  return {seq.begin() + at, seq.end()};
}

struct KernelGraph {
  std::vector<Detour> ordering;
  std::vector<std::vector<Vertex>> fragments;  // D_i[x_i, w_i]
  std::vector<Vertex> cut;                     // w_i
  std::vector<bool> truncated;
  std::vector<int> breaker;  // ordering index, -1 when not truncated
  std::vector<EdgeId> edges; // sorted
  std::vector<Vertex> vertices;

  bool contains_edge(EdgeId id) const {
    return std::binary_search(edges.begin(), edges.end(), id);
  }
};

// (x,y)-ordering: deeper x first; on equal x the deeper y precedes.
inline std::vector<Detour> xy_order(std::vector<Detour> detours) {
  std::stable_sort(detours.begin(), detours.end(),
                   [](const Detour& a, const Detour& b) {
                     if (a.x_pos != b.x_pos) return a.x_pos > b.x_pos;
                     return a.y_pos > b.y_pos;
                   });
  std::vector<Detour> out;
  for (auto& d : detours) {
    bool dup = std::any_of(out.begin(), out.end(), [&](const Detour& o) {
      return o.same_segment(d);
    });
    if (!dup) out.push_back(std::move(d));
  }
  return out;
}

inline KernelGraph build_kernel(const Graph& g, std::vector<Detour> detours) {
  KernelGraph k;
  k.ordering = xy_order(std::move(detours));
  std::unordered_set<Vertex> in_kernel;
  std::vector<std::unordered_set<Vertex>> frag_sets;
  for (std::size_t i = 0; i < k.ordering.size(); ++i) {
    const auto& seq = k.ordering[i].segment.vertices;
    std::size_t stop = seq.size() - 1;
    if (i > 0) {
      for (std::size_t q = 0; q < seq.size(); ++q) {
        if (in_kernel.count(seq[q])) {
          stop = q;
          break;
        }
      }
    }
    std::vector<Vertex> frag(seq.begin(), seq.begin() + stop + 1);
    k.cut.push_back(seq[stop]);
    k.truncated.push_back(stop + 1 != seq.size());
    int breaker = -1;
    if (k.truncated.back()) {
      for (std::size_t j = 0; j < i && breaker < 0; ++j) {
        if (frag_sets[j].count(seq[stop])) breaker = static_cast<int>(j);
      }
    }
    k.breaker.push_back(breaker);
    for (std::size_t q = 0; q + 1 < frag.size(); ++q) {
      k.edges.push_back(g.edge_id(frag[q], frag[q + 1]));
    }
    frag_sets.emplace_back(frag.begin(), frag.end());
    in_kernel.insert(frag.begin(), frag.end());
    k.fragments.push_back(std::move(frag));
  }
  std::sort(k.edges.begin(), k.edges.end());
  k.edges.erase(std::unique(k.edges.begin(), k.edges.end()), k.edges.end());
  k.vertices.assign(in_kernel.begin(), in_kernel.end());
  std::sort(k.vertices.begin(), k.vertices.end());
  return k;
}

enum class PathClass { kPi, kNoDet, kIndep, kIPi, kID };

inline const char* to_string(PathClass c) {
  switch (c) {
    case PathClass::kPi: return "pi_pi";
    case PathClass::kNoDet: return "nodet";
    case PathClass::kIndep: return "indep";
    case PathClass::kIPi: return "i_pi";
    case PathClass::kID: return "i_d";
  }
  return "?";
}

struct Interference {
  int from = -1;  // index into PathClassReport::paths
  int to = -1;
  bool pi = false;
  bool d = false;
};

struct PathClassReport {
  Vertex v = kNoVertex;
  std::vector<ReplacementPath> paths;  // P_v
  std::vector<PathClass> classes;
  std::vector<Interference> interference;

  int count(PathClass c) const {
    return static_cast<int>(std::count(classes.begin(), classes.end(), c));
  }
};

namespace detail {

inline std::vector<EdgeId> sorted_edges(const Graph& g, const Path& p) {
  auto e = path_edges(g, p);
  std::sort(e.begin(), e.end());
  return e;
}

inline bool has(const std::vector<EdgeId>& sorted, EdgeId id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

inline const Detour& detour_of(const HvTrace& t, const ReplacementPath& rp) {
  int i = t.frame->edge_index(rp.first_fault());
  if (i < 0 || !t.detours[i]) throw std::logic_error("path without detour");
  return *t.detours[i];
}

// Endpoint of edge `id` that comes later along `seq`.
inline int later_endpoint_index(const Graph& g, const std::vector<Vertex>& seq,
                                EdgeId id) {
  const Edge& e = g.edge(id);
  return std::max(index_of(seq, e.u), index_of(seq, e.v));
}

inline bool edge_on_segment(const Graph& g, const std::vector<Vertex>& seg,
                            EdgeId id) {
  for (std::size_t q = 0; q + 1 < seg.size(); ++q) {
    if (g.edge_id(seg[q], seg[q + 1]) == id) return true;
  }
  return false;
}

}  // namespace detail

// Classes (A)-(E) over the new-ending paths of one target. Single-fault
// paths count toward P_pi. Interference is evaluated among (pi,D) paths.
inline PathClassReport classify_new_ending(const HvResult& hv) {
  const HvTrace& t = hv.trace;
  if (t.target == kNoVertex) throw std::invalid_argument("trace missing");
  PathClassReport out;
  out.v = t.target;
  if (!t.frame) return out;
  const Graph& g = t.frame->graph();

  std::vector<int> pid_index;
  for (const auto* list : {&t.singles, &t.pipi, &t.pid}) {
    for (const auto& rp : *list) {
      if (!rp.new_ending) continue;
      if (rp.kind == PathKind::kPiD) {
        pid_index.push_back(static_cast<int>(out.paths.size()));
      }
      out.paths.push_back(rp);
      out.classes.push_back(PathClass::kPi);
    }
  }

  const std::size_t m = pid_index.size();
  std::vector<std::vector<EdgeId>> off_detour(m);  // E(P) \ E(D(P))
  std::vector<const Detour*> det(m);
  std::vector<bool> nodet(m, false);
  for (std::size_t a = 0; a < m; ++a) {
    const ReplacementPath& rp = out.paths[pid_index[a]];
    det[a] = &detail::detour_of(t, rp);
    auto pe = detail::sorted_edges(g, rp.path);
    auto de = detail::sorted_edges(g, det[a]->segment);
    std::set_difference(pe.begin(), pe.end(), de.begin(), de.end(),
                        std::back_inserter(off_detour[a]));
    nodet[a] = off_detour[a].size() == pe.size();
  }

  std::vector<std::vector<int>> interfered(m);
  std::vector<bool> touched(m, false);
  for (std::size_t a = 0; a < m; ++a) {
    const ReplacementPath& pa = out.paths[pid_index[a]];
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const ReplacementPath& pb = out.paths[pid_index[b]];
      if (!detail::has(off_detour[a], pb.second_fault())) continue;
      Interference edge{pid_index[a], pid_index[b]};
      int e1 = t.frame->edge_index(pa.first_fault());
      edge.pi = e1 >= det[b]->y_pos;
      const auto& db = det[b]->segment.vertices;
      int q2 = detail::later_endpoint_index(g, db, pb.second_fault());
      edge.d = detail::edge_on_segment(
          g, std::vector<Vertex>(db.begin() + q2, db.end()), pa.second_fault());
      out.interference.push_back(edge);
      interfered[a].push_back(static_cast<int>(b));
      touched[a] = touched[b] = true;
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    PathClass& c = out.classes[pid_index[a]];
    if (nodet[a]) {
      c = PathClass::kNoDet;
    } else if (!touched[a]) {
      c = PathClass::kIndep;
    } else {
      bool all_pi = true;
      for (const auto& edge : out.interference) {
        if (edge.from == pid_index[a] && !edge.pi) all_pi = false;
      }
      c = all_pi ? PathClass::kIPi : PathClass::kID;
    }
  }
  return out;
}

// K(D) over the detours of the new-ending (pi,D) paths of one target.
inline KernelGraph kernel_for_target(const HvResult& hv) {
  const HvTrace& t = hv.trace;
  if (t.target == kNoVertex) throw std::invalid_argument("trace missing");
  if (!t.frame) return {};
  std::vector<Detour> input;
  for (const auto& rp : t.pid) {
    if (rp.new_ending) input.push_back(detail::detour_of(t, rp));
  }
  return build_kernel(t.frame->graph(), std::move(input));
}

struct StructuralReport {
  std::int64_t cl41 = 0;
  std::int64_t cl43_44 = 0;
  std::int64_t cl45 = 0;
  std::int64_t cl48 = 0;
  std::int64_t lemma49 = 0;
  std::int64_t obs11 = 0;
  std::int64_t cl35 = 0;
  std::int64_t d_div = 0;
  std::int64_t detour_pairs = 0;  // checked instances
  std::int64_t pid_paths = 0;

  std::int64_t violations() const {
    return cl41 + cl43_44 + cl45 + cl48 + lemma49 + obs11 + cl35 + d_div;
  }
  StructuralReport& operator+=(const StructuralReport& o) {
    cl41 += o.cl41;
    cl43_44 += o.cl43_44;
    cl45 += o.cl45;
    cl48 += o.cl48;
    lemma49 += o.lemma49;
    obs11 += o.obs11;
    cl35 += o.cl35;
    d_div += o.d_div;
    detour_pairs += o.detour_pairs;
    pid_paths += o.pid_paths;
    return *this;
  }
};

namespace detail {

// Shared vertices of a and b form one run on each, equal up to direction.
inline bool joint_segments_agree(const Detour& a, const Detour& b) {
  const auto& sa = a.segment.vertices;
  const auto& sb = b.segment.vertices;
  auto setb = vertex_set(b);
  int first = -1, last = -1, shared = 0;
  for (int q = 0; q < static_cast<int>(sa.size()); ++q) {
    if (!setb.count(sa[q])) continue;
    if (first < 0) first = q;
    last = q;
    ++shared;
  }
  if (shared < 2) return true;
  std::vector<Vertex> run(sa.begin() + first, sa.begin() + last + 1);
  int p = index_of(sb, run.front());
  int r = index_of(sb, run.back());
  std::vector<Vertex> other;
  if (p <= r) {
    other.assign(sb.begin() + p, sb.begin() + r + 1);
  } else {
    other.assign(sb.begin() + r, sb.begin() + p + 1);
    std::reverse(other.begin(), other.end());
  }
  return run == other;
}

}  // namespace detail

// Runs every structural check that applies to one traced target.
inline StructuralReport check_structure(const HvResult& hv) {
  const HvTrace& t = hv.trace;
  if (t.target == kNoVertex) throw std::invalid_argument("trace missing");
  StructuralReport r;
  if (!t.frame) return r;
  const TargetFrame& frame = *t.frame;
  const Graph& g = frame.graph();

  std::vector<const Detour*> ds;
  for (const auto& d : t.detours) {
    if (d) ds.push_back(&*d);
  }
  for (std::size_t a = 0; a < ds.size(); ++a) {
    for (std::size_t b = a + 1; b < ds.size(); ++b) {
      if (ds[a]->same_segment(*ds[b])) continue;
      ++r.detour_pairs;
      const Detour* d1 = ds[a];
      const Detour* d2 = ds[b];
      if (detail::detour_order_less(*d2, *d1)) std::swap(d1, d2);
      DetourConfig c = classify_pair(*d1, *d2);
      if (c.dependent && !detail::joint_segments_agree(*d1, *d2)) ++r.cl41;
      if (c.dependent && (c.kind == DetourKind::kNonNested ||
                          c.kind == DetourKind::kNested)) {
        ++r.cl43_44;
        continue;
      }
      if (!c.dependent) continue;
      const int e1 = d1->protected_index, e2 = d2->protected_index;
      if (d1->x_pos != d2->x_pos && !(d1->x_pos <= e1 && e1 < d2->x_pos)) {
        ++r.cl45;
      }
      if (d1->y_pos != d2->y_pos && !(d1->y_pos <= e2 && e2 < d2->y_pos)) {
        ++r.cl45;
      }
    }
  }

  // Obs. 1.1 over new-ending single-fault paths.
  std::unordered_map<Vertex, int> owner;
  int single_id = 0;
  for (const auto& rp : t.singles) {
    if (!rp.new_ending) continue;
    ++single_id;
    const auto& seq = rp.path.vertices;
    int b = pi_divergence_pos(frame, rp.path);
    for (std::size_t q = b; q + 1 < seq.size(); ++q) {
      auto [it, fresh] = owner.emplace(seq[q], single_id);
      if (!fresh && it->second != single_id) {
        ++r.obs11;
        break;
      }
    }
  }

  std::vector<const ReplacementPath*> fresh_pid;
  for (const auto& rp : t.pid) {
    if (rp.new_ending) fresh_pid.push_back(&rp);
  }
  r.pid_paths = static_cast<std::int64_t>(fresh_pid.size());

  KernelGraph kernel = kernel_for_target(hv);

  std::vector<Vertex> c_points;
  for (const auto* rp : fresh_pid) {
    const Detour& d = detail::detour_of(t, *rp);
    const auto& seq = rp->path.vertices;

    // Cl. 3.5: after b the path meets pi only at v.
    int b = pi_divergence_pos(frame, rp->path);
    for (std::size_t q = b + 1; q + 1 < seq.size(); ++q) {
      if (frame.on_pi(seq[q])) {
        ++r.cl35;
        break;
      }
    }

    // Cl. 4.8 against every detour of this target.
    for (const Detour* other : ds) {
      if (other->same_segment(d)) continue;
      if (!classify_pair(d, *other).dependent) continue;
      auto ex = excluded_segment(d, *other);
      if (ex.size() >= 2 && detail::edge_on_segment(g, ex, rp->second_fault())) {
        ++r.cl48;
      }
    }

    // Lemma 4.9.
    const auto& dv = d.segment.vertices;
    int q2 = detail::later_endpoint_index(g, dv, rp->second_fault());
    for (int q = 0; q < q2; ++q) {
      if (!kernel.contains_edge(g.edge_id(dv[q], dv[q + 1]))) {
        ++r.lemma49;
        break;
      }
    }

    // D-divergence point for paths that use an edge of their detour.
    auto pe = detail::sorted_edges(g, rp->path);
    bool uses_detour = false;
    for (std::size_t q = 0; q + 1 < dv.size(); ++q) {
      if (detail::has(pe, g.edge_id(dv[q], dv[q + 1]))) uses_detour = true;
    }
    if (uses_detour) {
      int at = detail::index_of(seq, d.x);
      if (at < 0 || at + 1 >= static_cast<int>(seq.size()) ||
          seq[at + 1] != dv[1]) {
        ++r.d_div;
        continue;
      }
      std::size_t k = 0;
      while (at + k + 1 < seq.size() && k + 1 < dv.size() &&
             seq[at + k + 1] == dv[k + 1]) {
        ++k;
      }
      Vertex c = dv[k];
      if (std::find(c_points.begin(), c_points.end(), c) != c_points.end()) {
        ++r.d_div;
      }
      c_points.push_back(c);
    }
  }
  return r;
}

}  // namespace ftbfs
