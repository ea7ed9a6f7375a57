#include <algorithm>
#include <functional>
#include <vector>

#include "ftbfs/approx.hpp"
#include "ftbfs/builder.hpp"
#include "ftbfs/generators.hpp"
#include "ftbfs/verifier.hpp"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ftbfs {
namespace {

using ::testing::ElementsAre;

std::vector<EdgeId> AllEdges(const Graph& g) {
  std::vector<EdgeId> ids(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) ids[id] = id;
  return ids;
}

// Universe index of <source 0, faults>, or -1.
int ItemOf(const CoverInstance& inst, std::vector<EdgeId> faults) {
  std::sort(faults.begin(), faults.end());
  for (std::size_t i = 0; i < inst.universe.size(); ++i) {
    auto f = inst.faults(inst.universe[i]);
    std::sort(f.begin(), f.end());
    if (f == faults && inst.universe[i].source_index == 0) return static_cast<int>(i);
  }
  return -1;
}

std::vector<Vertex> Holders(const CoverInstance& inst, int item) {
  std::vector<Vertex> out;
  for (std::size_t j = 0; j < inst.sets.size(); ++j) {
    if (inst.sets[j].test(item)) out.push_back(inst.neighbors[j]);
  }
  return out;
}

TEST(CoverInstanceTest, PathDropsUnreachablePairs) {
  Graph g = path_graph(3);
  std::vector<Vertex> s{0};
  CoverInstance inst = build_cover_instance(g, s, 1, 2);
  ASSERT_EQ(inst.universe.size(), 1u);
  EXPECT_TRUE(inst.faults(inst.universe[0]).empty());
  EXPECT_THAT(Holders(inst, 0), ElementsAre(1));
}

TEST(CoverInstanceTest, Cycle) {
  Graph g = cycle_graph(5);
  std::vector<Vertex> s{0};
  CoverInstance inst = build_cover_instance(g, s, 1, 2);
  EXPECT_EQ(inst.universe.size(), 6u);
  EXPECT_THAT(Holders(inst, ItemOf(inst, {})), ElementsAre(1));
  EXPECT_THAT(Holders(inst, ItemOf(inst, {g.edge_id(1, 2)})), ElementsAre(3));
  EXPECT_THAT(Holders(inst, ItemOf(inst, {g.edge_id(0, 1)})), ElementsAre(3));
  EXPECT_THAT(greedy_cover(inst), ::testing::UnorderedElementsAre(0, 1));
}

TEST(CoverInstanceTest, K4DoubleFault) {
  Graph g = complete_graph(4);
  std::vector<Vertex> s{0};
  CoverInstance inst = build_cover_instance(g, s, 2, 1);
  int item = ItemOf(inst, {g.edge_id(0, 1), g.edge_id(0, 2)});
  ASSERT_GE(item, 0);
  EXPECT_THAT(Holders(inst, item), ElementsAre(3));
}

TEST(CoverInstanceTest, RejectsLargeBudget) {
  Graph g = cycle_graph(4);
  std::vector<Vertex> s{0};
  EXPECT_THROW(build_cover_instances(g, s, 4), std::invalid_argument);
}

CoverInstance Synthetic(std::size_t universe,
                        const std::vector<std::vector<int>>& sets) {
  CoverInstance inst;
  inst.universe.resize(universe);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    inst.neighbors.push_back(static_cast<Vertex>(j));
    Bitset b(universe);
    for (int i : sets[j]) b.set(i);
    inst.sets.push_back(b);
  }
  return inst;
}

TEST(GreedyTest, SingleSetSuffices) {
  auto inst = Synthetic(4, {{0, 1}, {0, 1, 2, 3}, {3}});
  EXPECT_THAT(greedy_cover(inst), ElementsAre(1));
}

TEST(GreedyTest, PartitionForcesAllBySize) {
  auto inst = Synthetic(7, {{3, 4}, {0, 1, 2}, {5, 6}});
  EXPECT_THAT(greedy_cover(inst), ElementsAre(1, 0, 2));
}

TEST(GreedyTest, TiesGoToSmallestNeighbor) {
  auto inst = Synthetic(2, {{0}, {1}, {0}});
  EXPECT_THAT(greedy_cover(inst), ElementsAre(0, 1));
}

TEST(GreedyTest, UncoverableThrows) {
  auto inst = Synthetic(3, {{0}, {1}});
  EXPECT_THROW(greedy_cover(inst), std::logic_error);
}

// Smallest k such that some k sets cover everything.
std::size_t ExactMinCover(const CoverInstance& inst) {
  const std::size_t u = inst.universe.size();
  const int k = static_cast<int>(inst.sets.size());
  Bitset all(u);
  for (std::size_t i = 0; i < u; ++i) all.set(i);
  if (u == 0) return 0;
  for (int size = 1; size <= k; ++size) {
    std::vector<int> pick;
    std::function<bool(int, Bitset)> rec = [&](int from, Bitset acc) {
      if (static_cast<int>(pick.size()) == size) return acc.contains_all(all);
      for (int j = from; j < k; ++j) {
        Bitset next = acc;
        next.unite(inst.sets[j]);
        pick.push_back(j);
        bool ok = rec(j + 1, next);
        pick.pop_back();
        if (ok) return true;
      }
      return false;
    };
    if (rec(0, Bitset(u))) return static_cast<std::size_t>(size);
  }
  return SIZE_MAX;
}

TEST(GreedyTest, WithinHarmonicFactorOfOptimum) {
  int checked = 0;
  for (Vertex n : {8, 12, 16}) {
    for (double p : {0.3, 0.5, 0.8}) {
      Graph g = gnp_graph(n, p, 100 + n);
      std::vector<Vertex> s{0, n / 2};
      for (int f : {1, 2}) {
        auto instances = build_cover_instances(g, s, f);
        for (const auto& inst : instances) {
          if (inst.sets.size() > 20 || inst.universe.empty()) continue;
          std::size_t opt = ExactMinCover(inst);
          std::size_t greedy = greedy_cover(inst).size();
          EXPECT_GE(greedy, opt);
          EXPECT_LE(static_cast<double>(greedy),
                    harmonic(inst.universe.size()) * static_cast<double>(opt));
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ApproxTest, Fixtures) {
  std::vector<Vertex> s0{0};
  Graph c5 = cycle_graph(5);
  Graph k4 = complete_graph(4);
  Graph tree = random_tree(20, 9);
  for (int f : {1, 2}) {
    EXPECT_EQ(approx_ftmbfs(c5, s0, f).structure.edges, AllEdges(c5));
    EXPECT_EQ(approx_ftmbfs(tree, s0, f).structure.edges, AllEdges(tree));
  }
  EXPECT_EQ(approx_ftmbfs(k4, s0, 2).structure.edges, AllEdges(k4));
  Graph star = star_graph(7);
  EXPECT_EQ(approx_ftmbfs(star, s0, 1).structure.edges, AllEdges(star));
}

TEST(ApproxTest, ProvenanceAndStats) {
  Graph g = gnp_graph(15, 0.4, 3);
  std::vector<Vertex> s{0, 5};
  ApproxResult r = approx_ftmbfs(g, s, 1);
  EXPECT_EQ(r.universe_sizes.size(), 15u);
  for (Vertex v = 0; v < 15; ++v) {
    EXPECT_EQ(r.candidate_sets[v], static_cast<std::size_t>(g.degree(v)));
  }
  for (const auto& [id, prov] : r.structure.provenance) {
    EXPECT_TRUE(prov.step == Step::kTree || prov.step == Step::kCover);
  }
  EXPECT_THROW(approx_ftmbfs(g, std::vector<Vertex>{}, 1), std::invalid_argument);
  EXPECT_THROW(approx_ftmbfs(g, s, 0), std::invalid_argument);
}

TEST(ApproxTest, VerifiesOnCorpus) {
  for (Vertex n : {10, 20, 40}) {
    for (double p : {0.1, 0.3, 0.5}) {
      Graph g = gnp_graph(n, p, 7 * n + static_cast<int>(p * 10));
      for (int f : {1, 2}) {
        std::vector<Vertex> s{0};
        if (f == 1) s.push_back(n - 1);
        ApproxResult r = approx_ftmbfs(g, s, f);
        VerifyReport rep = verify_ft(r.structure.edges, g, s, f, {});
        EXPECT_TRUE(rep.ok) << "n=" << n << " p=" << p << " f=" << f;
      }
    }
  }
}

TEST(ApproxTest, JobsDoNotChangeOutput) {
  Graph g = gnp_graph(25, 0.3, 11);
  std::vector<Vertex> s{0};
  EXPECT_EQ(approx_ftmbfs(g, s, 2, 1).structure.edges,
            approx_ftmbfs(g, s, 2, 3).structure.edges);
}

// Any valid H yields, per vertex, last-edge sets that cover the universe.
TEST(CoverPropertyTest, BuilderOutputCoversEveryUniverse) {
  for (Vertex n : {12, 20, 30}) {
    for (double p : {0.2, 0.4}) {
      Graph g = gnp_graph(n, p, 31 * n);
      FtStructure h = build_ftbfs(g, 0);
      std::vector<Vertex> s{0};
      auto instances = build_cover_instances(g, s, 2);
      for (Vertex v = 0; v < n; ++v) {
        const auto& inst = instances[v];
        Bitset all(inst.universe.size());
        for (std::size_t i = 0; i < inst.universe.size(); ++i) all.set(i);
        Bitset got(inst.universe.size());
        for (std::size_t j = 0; j < inst.neighbors.size(); ++j) {
          EdgeId id = g.edge_id(inst.neighbors[j], v);
          if (std::binary_search(h.edges.begin(), h.edges.end(), id)) {
            got.unite(inst.sets[j]);
          }
        }
        EXPECT_TRUE(got.contains_all(all)) << "n=" << n << " v=" << v;
      }
    }
  }
}

}  // namespace
}  // namespace ftbfs
