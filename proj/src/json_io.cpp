#include "json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace ftbfs::cli {

json edge_json(const Graph& g, EdgeId id) {
  const Edge& e = g.edge(id);
  return json::array({e.u, e.v});
}

json edges_json(const Graph& g, const std::vector<EdgeId>& ids) {
  json out = json::array();
  for (EdgeId id : ids) out.push_back(edge_json(g, id));
  return out;
}

json structure_json(const FtStructure& h) {
  json steps = json::object();
  for (int k = 0; k < 5; ++k) {
    steps[to_string(static_cast<Step>(k))] = h.step_histogram[k];
  }
  json per_vertex = json::array();
  for (const auto& list : h.per_vertex_new) per_vertex.push_back(list.size());
  return {{"schema", kSchema},
          {"n", h.host ? h.host->num_vertices() : 0},
          {"m", h.host ? h.host->num_edges() : 0},
          {"sources", h.sources},
          {"f", h.f},
          {"edges", h.edges.size()},
          {"max_new", h.max_new()},
          {"new_per_vertex", per_vertex},
          {"steps", steps}};
}

json verify_json(const Graph& g, const VerifyReport& r, int f) {
  json viol = json::array();
  for (const auto& v : r.violations) {
    json d_h = v.dist_h == kUnreachable ? json(nullptr) : json(v.dist_h);
    json d_g = v.dist_g == kUnreachable ? json(nullptr) : json(v.dist_g);
    viol.push_back({{"source", v.source},
                    {"target", v.target},
                    {"faults", edges_json(g, v.faults)},
                    {"dist_h", d_h},
                    {"dist_g", d_g}});
  }
  return {{"schema", kSchema},
          {"ok", r.ok},
          {"f", f},
          {"fault_sets_checked", r.fault_sets_checked},
          {"violation_count", r.violation_count},
          {"violations", viol}};
}

json star_json(const StarInstance& star) {
  const Graph& g = star.graph;
  json labels = json::array();
  for (const auto& copy : star.labels) {
    json per = json::array();
    for (const auto& l : copy) per.push_back(edges_json(g, l));
    labels.push_back(per);
  }
  json forced = json::array();
  for (const auto& fe : star.forced) {
    forced.push_back({{"edge", edge_json(g, fe.edge)},
                      {"source", fe.source},
                      {"witness", edges_json(g, fe.witness)}});
  }
  return {{"schema", kSchema},
          {"f", star.f},
          {"d", star.d},
          {"n", g.num_vertices()},
          {"m", g.num_edges()},
          {"roots", star.sources},
          {"hub", star.hub},
          {"x", star.x},
          {"leaves", star.leaves},
          {"labels", labels},
          {"forced_edges", forced}};
}

json class_report_json(const Graph& g, const PathClassReport& r) {
  json classes = json::object();
  for (auto c : {PathClass::kPi, PathClass::kNoDet, PathClass::kIndep,
                 PathClass::kIPi, PathClass::kID}) {
    classes[to_string(c)] = r.count(c);
  }
  json inter = json::array();
  for (const auto& e : r.interference) {
    std::string type = e.pi && e.d ? "pi+d" : (e.pi ? "pi" : (e.d ? "d" : "none"));
    inter.push_back({{"from", edge_json(g, last_edge(g, r.paths[e.from].path))},
                     {"to", edge_json(g, last_edge(g, r.paths[e.to].path))},
                     {"type", type}});
  }
  return {{"v", r.v}, {"classes", classes}, {"interference_edges", inter}};
}

json kernel_json(const KernelGraph& k) {
  int truncated = 0;
  for (bool t : k.truncated) truncated += t;
  return {{"detours", k.ordering.size()},
          {"truncated", truncated},
          {"edges", k.edges.size()},
          {"breakers", k.breaker}};
}

json structural_json(const StructuralReport& r) {
  return {{"cl41", r.cl41},       {"cl43_44", r.cl43_44},
          {"cl45", r.cl45},       {"cl48", r.cl48},
          {"lemma49", r.lemma49}, {"obs11", r.obs11},
          {"cl35", r.cl35},       {"d_div", r.d_div},
          {"detour_pairs", r.detour_pairs},
          {"pid_paths", r.pid_paths}};
}

json approx_json(const ApproxResult& r) {
  json out = structure_json(r.structure);
  out["per_vertex_chosen"] = r.chosen;
  out["universe_sizes"] = r.universe_sizes;
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw std::invalid_argument("not an integer list: " + text);
    }
    out.push_back(value);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

}  // namespace ftbfs::cli
