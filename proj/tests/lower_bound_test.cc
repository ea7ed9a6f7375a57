#include <algorithm>
#include <vector>

#include "ftbfs/lower_bound.hpp"
#include "ftbfs/verifier.hpp"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace ftbfs {
namespace {

std::vector<EdgeId> Ids(const Graph& g, const std::vector<Vertex>& seq) {
  std::vector<EdgeId> out;
  for (std::size_t q = 0; q + 1 < seq.size(); ++q) {
    out.push_back(g.edge_id(seq[q], seq[q + 1]));
  }
  return out;
}

bool Intersects(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  return std::any_of(a.begin(), a.end(), [&](EdgeId e) {
    return std::find(b.begin(), b.end(), e) != b.end();
  });
}

TEST(ClosedFormTest, DepthLeavesAndVertexCount) {
  for (int d = 1; d <= 5; ++d) {
    EXPECT_EQ(lb_depth(1, d), 6 + 2 * (d - 1));
    EXPECT_LE(lb_vertices(1, d), 7 * d * d);
    for (int f = 1; f <= 3; ++f) {
      std::int64_t pow = 1;
      for (int k = 0; k < f; ++k) pow *= d;
      EXPECT_EQ(lb_leaves(f, d), pow);
      if (f >= 2) {
        std::int64_t rec = d * lb_vertices(f - 1, d);
        for (int i = 1; i <= d; ++i) rec += (d - i) * lb_depth(f - 1, d);
        EXPECT_EQ(lb_vertices(f, d), rec);
      }
    }
  }
  EXPECT_THROW(lb_depth(0, 2), std::invalid_argument);
  EXPECT_THROW(gen_base(0), std::invalid_argument);
}

TEST(GadgetTest, GeneratedGraphMatchesClosedForms) {
  for (int f = 1; f <= 3; ++f) {
    for (int d = 1; d <= 3; ++d) {
      LabeledGadget gd = gen_recursive(f, d);
      const Graph& g = gd.graph;
      EXPECT_EQ(g.num_vertices(), lb_vertices(f, d)) << f << "," << d;
      EXPECT_EQ(static_cast<std::int64_t>(gd.leaves.size()), lb_leaves(f, d));
      auto dist = oracle::distances(g, gd.root, {});
      int depth = 0;
      for (Vertex z : gd.leaves) depth = std::max(depth, dist[z]);
      EXPECT_EQ(depth, lb_depth(f, d)) << f << "," << d;
      for (const auto& label : gd.labels) {
        EXPECT_LE(static_cast<int>(label.size()), f);
        for (EdgeId e : label) EXPECT_LT(e, g.num_edges());
      }
    }
  }
}

TEST(GadgetTest, BaseConnectorLengths) {
  LabeledGadget gd = gen_base(3);
  EXPECT_EQ(gd.root, gd.canonical_paths[0].front());
  // P(z_i) runs i-1 spine edges then Q_i.
  for (int i = 0; i < 3; ++i) {
    int q = static_cast<int>(gd.canonical_paths[i].size()) - 1 - i;
    EXPECT_EQ(q, 6 + 2 * (3 - (i + 1)));
  }
  EXPECT_EQ(gen_base(1).labels[0].size(), 0u);
  EXPECT_EQ(gen_base(1).canonical_paths[0].size(), 7u);
}

TEST(GadgetTest, SecondLevelConnectors) {
  LabeledGadget gd = gen_recursive(2, 2);
  // Block 1 hangs by |Q| = depth(1,2) = 8; block 2 attaches directly.
  EXPECT_EQ(gd.canonical_paths[0].size() - 1, 8u + 8u);
  EXPECT_EQ(gd.canonical_paths[2].size() - 1, 1u + 8u);
  EXPECT_EQ(gd.canonical_paths[2][1], gd.spine_end);
  EXPECT_EQ(gen_recursive(2, 3).leaves.size(), 9u);
}

// Lemma 5.2 (1)-(4), exhaustively on the gadget itself.
TEST(GadgetTest, LeafPathProperties) {
  for (int f = 1; f <= 2; ++f) {
    for (int d = 1; d <= 3; ++d) {
      LabeledGadget gd = gen_recursive(f, d);
      const Graph& g = gd.graph;
      const std::size_t lambda = gd.leaves.size();
      for (std::size_t j = 0; j < lambda; ++j) {
        auto all = oracle::all_simple_paths(g, gd.root, gd.leaves[j], {});
        ASSERT_EQ(all.size(), 1u);
        EXPECT_EQ(all[0].vertices, gd.canonical_paths[j]);
        auto pj = Ids(g, gd.canonical_paths[j]);
        EXPECT_FALSE(Intersects(pj, gd.labels[j]));
        for (std::size_t i = j + 1; i < lambda; ++i) {
          EXPECT_TRUE(Intersects(Ids(g, gd.canonical_paths[i]), gd.labels[j]))
              << "f=" << f << " d=" << d << " i=" << i << " j=" << j;
        }
        for (std::size_t i = 0; i < j; ++i) {
          EXPECT_GT(gd.canonical_paths[i].size(), gd.canonical_paths[j].size());
        }
      }
    }
  }
}

TEST(StarTest, Counts) {
  for (auto [f, d, chi] : {std::tuple{1, 2, 2}, {2, 2, 3}, {2, 3, 2}, {1, 3, 4}}) {
    StarInstance st = gen_star(f, d, chi);
    std::int64_t n_gadget = lb_vertices(f, d);
    std::int64_t leaves = lb_leaves(f, d);
    EXPECT_EQ(st.graph.num_vertices(), n_gadget + 1 + chi);
    EXPECT_EQ(st.graph.num_edges(), (n_gadget - 1) + 1 + chi + chi * leaves);
    EXPECT_EQ(static_cast<std::int64_t>(st.forced.size()), chi * leaves);
    for (const auto& fe : st.forced) {
      EXPECT_LE(static_cast<int>(fe.witness.size()), f);
    }
  }
  EXPECT_EQ(gen_star(1, 2, 2).forced.size(), 4u);
  EXPECT_EQ(gen_star(2, 2, 3).forced.size(), 12u);
}

// The witness fault set must lengthen some distance once the edge is gone.
// Checked with the brute-force distance oracle.
void ExpectForcedEdgesNecessary(const StarInstance& st) {
  const Graph& g = st.graph;
  for (const auto& fe : st.forced) {
    auto with = oracle::distances(g, fe.source, fe.witness);
    auto faults = fe.witness;
    faults.push_back(fe.edge);
    auto without = oracle::distances(g, fe.source, faults);
    bool grows = false;
    for (Vertex v = 0; v < g.num_vertices(); ++v) grows |= without[v] > with[v];
    EXPECT_TRUE(grows) << "edge " << fe.edge;
    std::vector<Vertex> s{fe.source};
    EXPECT_TRUE(edge_necessity(g, s, st.f, fe.edge).necessary);
  }
}

TEST(StarTest, ForcedEdgesAreNecessary) {
  ExpectForcedEdgesNecessary(gen_star(2, 2, 2));
  ExpectForcedEdgesNecessary(gen_star(2, 2, 3));
  ExpectForcedEdgesNecessary(gen_star(1, 2, 3));
  ExpectForcedEdgesNecessary(gen_star(1, 3, 3));
}

TEST(MultiSourceTest, SingleCopyMatchesStar) {
  StarInstance a = gen_multi_source(2, 2, 1, 3);
  StarInstance b = gen_star(2, 2, 3);
  EXPECT_EQ(a.graph.num_vertices(), b.graph.num_vertices());
  EXPECT_EQ(a.graph.edges().size(), b.graph.edges().size());
  EXPECT_TRUE(std::equal(a.graph.edges().begin(), a.graph.edges().end(),
                         b.graph.edges().begin(), [](const Edge& x, const Edge& y) {
                           return x.u == y.u && x.v == y.v;
                         }));
}

TEST(MultiSourceTest, TwoCopies) {
  StarInstance st = gen_multi_source(1, 2, 2, 2);
  EXPECT_EQ(st.sources.size(), 2u);
  EXPECT_EQ(st.forced.size(), 2u * 2u * 2u);
  ExpectForcedEdgesNecessary(st);
}

TEST(StarForNTest, HitsTargetExactly) {
  for (int n : {30, 50, 100, 200}) {
    EXPECT_EQ(gen_star_for_n(2, n).graph.num_vertices(), n);
  }
  EXPECT_THROW(gen_star_for_n(2, 5), std::invalid_argument);
}

}  // namespace
}  // namespace ftbfs
