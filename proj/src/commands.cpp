#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "ftbfs/approx.hpp"
#include "ftbfs/builder.hpp"
#include "ftbfs/edge_list.hpp"
#include "ftbfs/generators.hpp"
#include "ftbfs/lower_bound.hpp"
#include "ftbfs/structure_analysis.hpp"
#include "ftbfs/verifier.hpp"
#include "json_io.hpp"

namespace ftbfs::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw std::runtime_error("write to " + path + " failed");
}

std::string edge_list_text(const Graph& g, const std::vector<EdgeId>& ids) {
  std::vector<Edge> edges;
  for (EdgeId id : ids) edges.push_back(g.edge(id));
  std::ostringstream os;
  write_edge_list(os, g.num_vertices(), edges);
  return os.str();
}

std::string graph_text(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("FTBFS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("FTBFS_SEED is not an integer: ") + env);
    }
  }
  return flag;
}

std::vector<Vertex> vertex_list(const Graph& g, const std::string& text) {
  std::vector<Vertex> out;
  for (int x : parse_int_list(text)) {
    if (x < 0 || x >= g.num_vertices()) {
      throw UsageError("source " + std::to_string(x) + " out of range");
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vertex checked_source(const Graph& g, int s) {
  if (s < 0 || s >= g.num_vertices()) {
    throw UsageError("source " + std::to_string(s) + " out of range");
  }
  return s;
}

Graph family_graph(const std::string& family, int n, double p,
                   std::uint64_t seed, int rows, int cols) {
  if (family == "gnp") return gnp_graph(n, p, seed);
  if (family == "cycle") return cycle_graph(n);
  if (family == "path") return path_graph(n);
  if (family == "complete") return complete_graph(n);
  if (family == "star") return star_graph(n);
  if (family == "tree") return random_tree(n, seed);
  if (family == "grid") {
    if (rows <= 0 || cols <= 0) {
      rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
      cols = (n + rows - 1) / rows;
    }
    return grid_graph(rows, cols);
  }
  throw UsageError("unknown family: " + family);
}

double loglog_slope(const std::map<int, std::pair<double, int>>& by_n) {
  std::vector<double> xs, ys;
  for (const auto& [n, acc] : by_n) {
    if (n <= 0 || acc.first <= 0) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(acc.first / acc.second));
  }
  if (xs.size() < 2) return std::nan("");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return den == 0 ? std::nan("") : num / den;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fault-tolerant BFS structures"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int jobs = 1;

  auto* gen = app.add_subcommand("gen", "Generate a graph as an edge list");
  std::string gen_family = "gnp";
  int gen_n = 20;
  double gen_p = 0.3;
  int gen_rows = 0, gen_cols = 0;
  std::string gen_out;
  gen->add_option("--family", gen_family,
                  "gnp | cycle | path | complete | star | grid | tree");
  gen->add_option("--n", gen_n, "Number of vertices")->check(CLI::PositiveNumber);
  gen->add_option("--p", gen_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", seed, "Random seed (FTBFS_SEED overrides)");
  gen->add_option("--rows", gen_rows, "Grid rows");
  gen->add_option("--cols", gen_cols, "Grid columns");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  auto* build = app.add_subcommand("build", "Build a dual-failure FT-BFS");
  std::string build_graph, build_out, build_json;
  int build_source = 0;
  build->add_option("graph", build_graph, "Edge list")->required();
  build->add_option("--source,-s", build_source, "Source vertex");
  build->add_option("--out", build_out, "Structure edge list (default stdout)");
  build->add_option("--json", build_json, "Stats JSON file");
  build->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Exhaustively verify a structure");
  std::string verify_graph, verify_h, verify_sources = "0";
  int verify_f = 2;
  bool stop_first = false;
  verify->add_option("graph", verify_graph, "Edge list of G")->required();
  verify->add_option("structure", verify_h, "Edge list of H")->required();
  verify->add_option("--sources", verify_sources, "Comma-separated sources");
  verify->add_option("--f", verify_f, "Fault budget")->check(CLI::Range(0, 3));
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--stop-first", stop_first, "Stop at the first violation");

  auto* lower = app.add_subcommand("lowerbound", "Emit a lower-bound instance");
  int lb_f = 2, lb_d = 2, lb_chi = 2, lb_target = 0, lb_sigma = 1;
  std::string lb_out, lb_meta;
  lower->add_option("--f", lb_f, "Fault budget")->check(CLI::PositiveNumber);
  lower->add_option("--d", lb_d, "Gadget width")->check(CLI::PositiveNumber);
  lower->add_option("--chi", lb_chi, "|X|")->check(CLI::PositiveNumber);
  lower->add_option("--target-n", lb_target, "Solve d and chi for n vertices");
  lower->add_option("--multi-source", lb_sigma, "Number of gadget copies")
      ->check(CLI::PositiveNumber);
  lower->add_option("--out", lb_out, "Graph edge list (default stdout)");
  lower->add_option("--meta", lb_meta, "Metadata JSON file");

  auto* approx = app.add_subcommand("approx", "Greedy set-cover FT-MBFS");
  std::string ap_graph, ap_out, ap_json, ap_sources = "0";
  int ap_f = 1;
  approx->add_option("graph", ap_graph, "Edge list")->required();
  approx->add_option("--sources", ap_sources, "Comma-separated sources");
  approx->add_option("--f", ap_f, "Fault budget")->check(CLI::Range(1, 3));
  approx->add_option("--out", ap_out, "Structure edge list (default stdout)");
  approx->add_option("--json", ap_json, "Stats JSON file");
  approx->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* scaling = app.add_subcommand("scaling", "Size-scaling experiment (CSV)");
  std::string sc_family = "gnp", sc_sizes = "10,20,40", sc_out;
  int sc_seeds = 3;
  double sc_p = 0.3;
  bool no_timing = false;
  scaling->add_option("--family", sc_family, "gnp | cycle | grid | lowerbound");
  scaling->add_option("--sizes", sc_sizes, "Comma-separated n values");
  scaling->add_option("--seeds", sc_seeds, "Instances per size")
      ->check(CLI::PositiveNumber);
  scaling->add_option("--p", sc_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  scaling->add_option("--seed", seed, "Base seed (FTBFS_SEED overrides)");
  scaling->add_option("--out", sc_out, "CSV file (default stdout)");
  scaling->add_flag("--no-timing", no_timing, "Write 0 in the runtime column");
  scaling->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "Path classes and structure checks");
  std::string an_graph, an_out;
  int an_source = 0;
  analyze->add_option("graph", an_graph, "Edge list")->required();
  analyze->add_option("--source,-s", an_source, "Source vertex");
  analyze->add_option("--out", an_out, "JSON file (default stdout)");
  analyze->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      Graph g = family_graph(gen_family, gen_n, gen_p, effective_seed(seed),
                             gen_rows, gen_cols);
      emit(gen_out, graph_text(g), out);
      return 0;
    }

    if (*build) {
      Graph g = read_edge_list_file(build_graph);
      FtStructure h = build_ftbfs(g, checked_source(g, build_source), jobs);
      emit(build_out, edge_list_text(g, h.edges), out);
      if (!build_json.empty()) {
        emit(build_json, json_text(structure_json(h)), out);
      } else if (!build_out.empty() && build_out != "-") {
        out << json_text(structure_json(h));
      }
      return 0;
    }

    if (*verify) {
      Graph g = read_edge_list_file(verify_graph);
      Graph h = read_edge_list_file(verify_h);
      auto ids = embed_subgraph(g, h);
      auto sources = vertex_list(g, verify_sources);
      VerifyOptions opt;
      opt.jobs = jobs;
      opt.stop_at_first = stop_first;
      VerifyReport r = verify_ft(ids, g, sources, verify_f, opt);
      out << json_text(verify_json(g, r, verify_f));
      return r.ok ? 0 : 1;
    }

    if (*lower) {
      StarInstance star;
      if (lb_target > 0) {
        if (lb_sigma != 1) {
          throw UsageError("--target-n supports a single source only");
        }
        star = gen_star_for_n(lb_f, lb_target);
      } else {
        star = gen_multi_source(lb_f, lb_d, lb_sigma, lb_chi);
      }
      emit(lb_out, graph_text(star.graph), out);
      json meta = star_json(star);
      meta["n_gadget"] = lb_vertices(star.f, star.d);
      meta["depth"] = lb_depth(star.f, star.d);
      meta["n_leaf"] = lb_leaves(star.f, star.d);
      if (!lb_meta.empty()) {
        emit(lb_meta, json_text(meta), out);
      } else if (!lb_out.empty() && lb_out != "-") {
        out << json_text(meta);
      }
      return 0;
    }

    if (*approx) {
      Graph g = read_edge_list_file(ap_graph);
      auto sources = vertex_list(g, ap_sources);
      ApproxResult r = approx_ftmbfs(g, sources, ap_f, jobs);
      emit(ap_out, edge_list_text(g, r.structure.edges), out);
      if (!ap_json.empty()) {
        emit(ap_json, json_text(approx_json(r)), out);
      } else if (!ap_out.empty() && ap_out != "-") {
        out << json_text(approx_json(r));
      }
      return 0;
    }

    if (*scaling) {
      std::ostringstream csv;
      csv << "family,n,seed,m,h_edges,max_new,runtime_ms\n";
      std::map<int, std::pair<double, int>> by_n;
      const std::uint64_t base = effective_seed(seed);
      for (int n : parse_int_list(sc_sizes)) {
        if (n < 2) throw UsageError("sizes must be >= 2");
        int runs = sc_family == "gnp" ? sc_seeds : 1;
        for (int k = 0; k < runs; ++k) {
          std::uint64_t inst_seed = base + static_cast<std::uint64_t>(k);
          Graph g(0, {});
          Vertex s = 0;
          if (sc_family == "lowerbound") {
            StarInstance star = gen_star_for_n(2, n);
            s = star.sources.front();
            g = std::move(star.graph);
          } else if (sc_family == "gnp" || sc_family == "cycle" ||
                     sc_family == "grid") {
            g = family_graph(sc_family, n, sc_p, inst_seed, 0, 0);
          } else {
            throw UsageError("unknown scaling family: " + sc_family);
          }
          auto t0 = std::chrono::steady_clock::now();
          FtStructure h = build_ftbfs(g, s, jobs);
          double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
          if (no_timing) ms = 0;
          csv << sc_family << ',' << g.num_vertices() << ','
              << (sc_family == "gnp" ? inst_seed : 0) << ',' << g.num_edges()
              << ',' << h.size() << ',' << h.max_new() << ',' << std::fixed
              << std::setprecision(3) << ms << '\n';
          auto& acc = by_n[g.num_vertices()];
          acc.first += static_cast<double>(h.size());
          acc.second += 1;
        }
      }
      emit(sc_out, csv.str(), out);
      double slope = loglog_slope(by_n);
      if (std::isnan(slope)) {
        err << "log-log slope: n/a (need two sizes)\n";
      } else {
        err << "log-log slope of |E(H)| vs n: " << std::fixed
            << std::setprecision(4) << slope << " (reference 5/3 = 1.6667)\n";
      }
      return 0;
    }

    if (*analyze) {
      Graph g = read_edge_list_file(an_graph);
      Vertex s = checked_source(g, an_source);
      BuildOptions opt;
      opt.jobs = jobs;
      opt.keep_traces = true;
      BuildResult r = build_ftbfs_detailed(g, s, opt);
      json vertices = json::array();
      StructuralReport total;
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (v == s) continue;
        const HvResult& hv = r.per_vertex[v];
        json entry = class_report_json(g, classify_new_ending(hv));
        entry["new"] = hv.new_edges().size();
        entry["kernel"] = kernel_json(kernel_for_target(hv));
        vertices.push_back(entry);
        total += check_structure(hv);
      }
      json doc = {{"schema", kSchema},
                  {"source", s},
                  {"n", g.num_vertices()},
                  {"m", g.num_edges()},
                  {"edges", r.structure.size()},
                  {"vertices", vertices},
                  {"structural", structural_json(total)}};
      emit(an_out, json_text(doc), out);
      return 0;
    }
  } catch (const ParseError& e) {
    err << "parse error: line " << e.line() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ftbfs::cli
