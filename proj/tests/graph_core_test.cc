#include <random>
#include <sstream>
#include <vector>

#include "ftbfs/edge_list.hpp"
#include "ftbfs/generators.hpp"
#include "ftbfs/graph.hpp"
#include "ftbfs/path_key.hpp"
#include "ftbfs/replacement.hpp"
#include "ftbfs/sssp.hpp"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace ftbfs {
namespace {

using ::testing::ElementsAre;

TEST(GraphTest, EdgeIdsFollowEndpointOrder) {
  Graph g(4, {{3, 1}, {0, 2}, {1, 0}, {2, 3}});
  ASSERT_EQ(g.num_edges(), 4);
  EXPECT_EQ(g.edge(0), (Edge{0, 1}));
  EXPECT_EQ(g.edge(1), (Edge{0, 2}));
  EXPECT_EQ(g.edge(2), (Edge{1, 3}));
  EXPECT_EQ(g.edge(3), (Edge{2, 3}));
  EXPECT_EQ(g.edge_id(3, 1), 2);
  EXPECT_FALSE(g.find_edge(0, 3).has_value());
}

TEST(GraphTest, AdjacencyIsSymmetricAndSorted) {
  Graph g = gnp_graph(30, 0.3, 7);
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    Vertex prev = -1;
    for (const Neighbor& nb : g.neighbors(x)) {
      EXPECT_LT(prev, nb.to);
      prev = nb.to;
      EXPECT_EQ(g.find_edge(nb.to, x), nb.id);
    }
  }
}

TEST(GraphTest, RejectsSelfLoopsAndParallelEdges) {
  EXPECT_THROW(Graph(3, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(Graph(2, {{0, 2}}), std::invalid_argument);
}

TEST(PathKeyTest, HopsDominateThenHighestIdDecides) {
  PathKey a(10), b(10);
  a.extend(1);
  a.extend(3);
  b.extend(2);
  b.extend(4);
  EXPECT_LT(a, b);
  PathKey c(10);
  c.extend(9);
  EXPECT_LT(c, a);  // fewer hops
  PathKey d(10);
  d.extend(0);
  d.extend(4);
  EXPECT_LT(d, b);  // same top id, next id decides
}

TEST(PathKeyTest, DistinctSetsNeverEqual) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    PathKey a(130), b(130);
    std::vector<EdgeId> ids(130);
    for (EdgeId i = 0; i < 130; ++i) ids[i] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    for (int k = 0; k < 5; ++k) a.extend(ids[k]);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (int k = 0; k < 5; ++k) b.extend(ids[k]);
    EXPECT_EQ(a == b, a.edge_ids() == b.edge_ids());
  }
}

TEST(PathKeyTest, RepeatedEdgeIsRejected) {
  PathKey a(4);
  a.extend(2);
  EXPECT_THROW(a.extend(2), std::logic_error);
  EXPECT_EQ(a.hops(), 1);
}

TEST(PathKeyTest, CompareExtendedMatchesMaterializedKeys) {
  PathKey a(200), b(200);
  a.extend(150);
  b.extend(70);
  for (EdgeId ea : {3, 71, 199}) {
    for (EdgeId eb : {4, 151, 198}) {
      EXPECT_EQ(PathKey::compare_extended(a, ea, b, eb),
                a.extended(ea) <=> b.extended(eb));
    }
  }
}

TEST(UniqueSsspTest, CycleTakesShortArc) {
  Graph g = cycle_graph(5);
  auto tree = unique_sssp(g, 0, full_mask(g));
  EXPECT_EQ(tree.hops[2], 2);
  EXPECT_THAT(tree.path_to(2)->vertices, ElementsAre(0, 1, 2));
}

TEST(UniqueSsspTest, K4TieBrokenTowardLowerIds) {
  Graph g = complete_graph(4);
  EdgeId forbidden = g.edge_id(0, 1);
  auto tree = unique_sssp(g, 0, std::span<const EdgeId>(&forbidden, 1), {});
  EXPECT_EQ(tree.hops[1], 2);
  EXPECT_THAT(tree.path_to(1)->vertices, ElementsAre(0, 2, 1));
}

TEST(UniqueSsspTest, BridgeRemovalDisconnects) {
  Graph g = path_graph(3);
  EdgeId forbidden = g.edge_id(0, 1);
  auto tree = unique_sssp(g, 0, std::span<const EdgeId>(&forbidden, 1), {});
  EXPECT_FALSE(tree.reachable(1));
  EXPECT_FALSE(tree.reachable(2));
  EXPECT_EQ(tree.hops[2], kUnreachable);
}

TEST(UniqueSsspTest, ForbiddenSourceThrows) {
  Graph g = path_graph(3);
  SubgraphMask mask(g);
  mask.remove_vertex(0);
  EXPECT_THROW(unique_sssp(g, 0, mask), std::invalid_argument);
}

// Exhaustive: every (v, F) with |F| <= 2 on small random graphs.
TEST(UniqueSsspTest, MatchesSimplePathEnumeration) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Graph g = gnp_graph(8, 0.45, seed);
    const EdgeId m = g.num_edges();
    std::vector<std::vector<EdgeId>> fault_sets{{}};
    for (EdgeId a = 0; a < m; ++a) {
      fault_sets.push_back({a});
      for (EdgeId b = a + 1; b < m; ++b) fault_sets.push_back({a, b});
    }
    for (const auto& faults : fault_sets) {
      auto tree = unique_sssp(g, 0, without_edges(g, faults));
      for (Vertex v = 1; v < g.num_vertices(); ++v) {
        auto paths = oracle::all_simple_paths(g, 0, v, faults);
        if (paths.empty()) {
          EXPECT_FALSE(tree.reachable(v));
          continue;
        }
        auto best = *std::min_element(paths.begin(), paths.end(),
                                      oracle::key_less);
        int ties = 0;
        for (const auto& p : paths) {
          if (!oracle::key_less(p, best) && !oracle::key_less(best, p)) ++ties;
        }
        EXPECT_EQ(ties, 1);
        ASSERT_TRUE(tree.reachable(v));
        EXPECT_EQ(tree.path_to(v)->vertices, best.vertices);
        auto single = unique_path(g, 0, v, without_edges(g, faults));
        EXPECT_EQ(single->vertices, best.vertices);
      }
    }
  }
}

TEST(UniqueSsspTest, PrefixesAreThemselvesUnique) {
  Graph g = gnp_graph(40, 0.15, 11);
  auto tree = unique_sssp(g, 0, full_mask(g));
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto p = tree.path_to(v);
    if (!p) continue;
    for (std::size_t i = 0; i < p->vertices.size(); ++i) {
      auto prefix = tree.path_to(p->vertices[i]);
      EXPECT_TRUE(std::equal(prefix->vertices.begin(), prefix->vertices.end(),
                             p->vertices.begin()));
    }
    EXPECT_EQ(p->key.hops(), p->length());
    EXPECT_EQ(p->key.edge_ids().size(), static_cast<std::size_t>(p->length()));
  }
}

TEST(UniqueSsspTest, HopsAgreeWithOracleBfs) {
  Graph g = gnp_graph(25, 0.2, 5);
  std::vector<EdgeId> faults{0, 3};
  auto tree = unique_sssp(g, 2, without_edges(g, faults));
  auto want = oracle::distances(g, 2, faults);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    EXPECT_EQ(tree.hops[v] == kUnreachable ? oracle::kInf : tree.hops[v],
              want[v]);
  }
}

TEST(RestrictedGraphTest, DropsInteriorAndKeepsEnds) {
  Graph g = path_graph(4);
  Path pi = make_path(g, {0, 1, 2, 3});
  SubgraphMask mask = restricted_graph(g, pi, 0, 3);
  EXPECT_TRUE(mask.has_vertex(0));
  EXPECT_FALSE(mask.has_vertex(1));
  EXPECT_FALSE(mask.has_vertex(2));
  EXPECT_TRUE(mask.has_vertex(3));
}

TEST(RestrictedGraphTest, DegenerateSegmentIsWholeGraph) {
  Graph g = path_graph(4);
  Path pi = make_path(g, {0, 1, 2, 3});
  SubgraphMask mask = restricted_graph(g, pi, 1, 1);
  for (Vertex x = 0; x < 4; ++x) EXPECT_TRUE(mask.has_vertex(x));
}

TEST(RestrictedGraphTest, CycleKeepsOtherArc) {
  Graph g = cycle_graph(5);
  Path pi = make_path(g, {0, 1, 2});
  SubgraphMask mask = restricted_graph(g, pi, 0, 2);
  EXPECT_FALSE(mask.has_vertex(1));
  EXPECT_EQ(bfs_distance(g, 0, 2, mask), 3);
  EXPECT_THROW(restricted_graph(g, pi, 0, 4), std::invalid_argument);
}

TEST(EdgeListTest, ParsesHeaderAndComments) {
  std::istringstream in("# cycle\np 5 5\n0 1\n1 2\n# mid\n2 3\n3 4\n4 0\n");
  Graph g = read_edge_list(in);
  EXPECT_EQ(g.num_vertices(), 5);
  EXPECT_EQ(g.num_edges(), 5);
}

TEST(EdgeListTest, InfersVertexCount) {
  std::istringstream in("0 1\n1 6\n");
  EXPECT_EQ(read_edge_list(in).num_vertices(), 7);
}

TEST(EdgeListTest, ErrorsNameTheLine) {
  std::istringstream in("0 1\n# ok\n1 x\n");
  try {
    read_edge_list(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  std::istringstream dup("0 1\n1 0\n");
  EXPECT_THROW(read_edge_list(dup), ParseError);
}

TEST(EdgeListTest, RoundTrips) {
  Graph g = gnp_graph(12, 0.4, 2);
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  Graph h = read_edge_list(in);
  ASSERT_EQ(h.num_edges(), g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) EXPECT_EQ(h.edge(id), g.edge(id));
}

}  // namespace
}  // namespace ftbfs
