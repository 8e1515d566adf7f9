#include "chipfire/generators.hpp"
#include "chipfire/graph.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace chipfire;

namespace {

MultiGraph k2() { return build_graph({{"a", "b", 1}}); }
MultiGraph k3() { return build_graph({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}}); }

// Independent oracle: every vertex subset.
int brute_alpha(const MultiGraph& g) {
  const auto n = g.num_vertices();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& e : g.edge_groups())
      if ((mask >> e.u & 1) && (mask >> e.v & 1)) ok = false;
    if (ok) best = std::max(best, std::popcount(mask));
  }
  return best;
}

// Independent oracle: every bipartition separating s from t.
Chips brute_cut(const MultiGraph& g, std::size_t s, std::size_t t) {
  const auto n = g.num_vertices();
  Chips best = std::numeric_limits<Chips>::max();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> s & 1) || (mask >> t & 1)) continue;
    Chips crossing = 0;
    for (const auto& e : g.edge_groups())
      if ((mask >> e.u & 1) != (mask >> e.v & 1)) crossing += e.multiplicity;
    best = std::min(best, crossing);
  }
  return best;
}

// Contracts chains of non-original 2-valent vertices; returns, for each pair of
// original vertices, the sorted lengths of the paths joining them.
std::map<std::pair<std::string, std::string>, std::vector<int>> path_signature(const MultiGraph& g,
                                                                               std::size_t originals) {
  std::map<std::pair<std::string, std::string>, std::vector<int>> sig;
  for (std::size_t s = 0; s < originals; ++s)
    for (const auto& nb : g.neighbors(s))
      for (Chips copy = 0; copy < nb.multiplicity; ++copy) {
        std::size_t prev = s, cur = nb.vertex;
        int len = 1;
        while (cur >= originals) {
          auto nbs = g.neighbors(cur);
          std::size_t nxt = nbs[0].vertex == prev ? nbs[1].vertex : nbs[0].vertex;
          prev = cur;
          cur = nxt;
          ++len;
        }
        if (s < cur) sig[{g.name(s), g.name(cur)}].push_back(len);
      }
  for (auto& [k, v] : sig) std::sort(v.begin(), v.end());
  return sig;
}

}  // namespace

TEST(BuildGraph, SmallestGraphs) {
  auto g = k2();
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.num_edges(), 1);
  auto banana = build_graph({{"a", "b", 2}});
  EXPECT_EQ(banana.multiplicity(0, 1), 2);
  EXPECT_EQ(banana.valence(0), 2);
}

TEST(BuildGraph, RepeatedPairsSum) {
  auto g = build_graph({{"a", "b", 1}, {"b", "a", 3}});
  EXPECT_EQ(g.edge_groups().size(), 1u);
  EXPECT_EQ(g.multiplicity(0, 1), 4);
}

TEST(BuildGraph, Errors) {
  auto expect_kind = [](auto&& fn, ErrorKind kind) {
    try {
      fn();
      FAIL() << "no error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), kind);
    }
  };
  expect_kind([] { build_graph({{"a", "a", 1}}); }, ErrorKind::SelfLoop);
  expect_kind([] { build_graph({{"a", "b", 0}}); }, ErrorKind::BadMultiplicity);
  expect_kind([] { build_graph({{"a", "b", 1}, {"c", "d", 1}}); }, ErrorKind::Disconnected);
  expect_kind([] { build_graph({"x"}, {{"a", "b", 1}}); }, ErrorKind::Disconnected);
  expect_kind([] { build_graph({}); }, ErrorKind::Disconnected);
}

TEST(BuildGraph, SingleVertex) {
  auto g = build_graph({"x"}, {});
  EXPECT_EQ(g.num_vertices(), 1u);
  EXPECT_EQ(g.genus(), 0);
}

TEST(Laplacian, Examples) {
  EXPECT_EQ(laplacian(k2()), (IntMatrix{{1, -1}, {-1, 1}}));
  EXPECT_EQ(laplacian(build_graph({{"a", "b", 2}})), (IntMatrix{{2, -2}, {-2, 2}}));
  EXPECT_EQ(laplacian(k3()), (IntMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
}

TEST(Laplacian, RowsSumToZero) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = generate_random_graph(2 + seed % 7, EdgeProbability{0.5}, seed);
    auto lap = laplacian(g);
    for (std::size_t i = 0; i < lap.size(); ++i) {
      Chips sum = 0;
      for (std::size_t j = 0; j < lap.size(); ++j) {
        sum += lap[i][j];
        EXPECT_EQ(lap[i][j], lap[j][i]);
      }
      EXPECT_EQ(sum, 0);
    }
  }
}

TEST(Subdivide, Examples) {
  EXPECT_EQ(subdivide_uniform(k2(), 1), k2());
  auto p4 = subdivide_uniform(k2(), 3);
  EXPECT_EQ(p4.num_vertices(), 4u);
  EXPECT_EQ(p4.num_edges(), 3);
  EXPECT_FALSE(is_bipartite(k3()).bipartite);
  auto c6 = subdivide_uniform(k3(), 2);
  EXPECT_EQ(c6.num_vertices(), 6u);
  for (std::size_t v = 0; v < 6; ++v) EXPECT_EQ(c6.valence(v), 2);
  EXPECT_EQ(c6.genus(), 1);
}

TEST(Subdivide, BadK) {
  try {
    subdivide_uniform(k2(), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadK);
  }
}

TEST(Subdivide, NoParallelEdgesAndVertexGrowth) {
  auto g = build_graph({{"a", "b", 3}, {"b", "c", 2}});
  auto s = subdivide_uniform(g, 2);
  EXPECT_EQ(s.num_vertices(), g.num_vertices() + static_cast<std::size_t>(g.num_edges()));
  for (const auto& e : s.edge_groups()) EXPECT_EQ(e.multiplicity, 1);
}

TEST(Subdivide, CompositionMatchesProduct) {
  std::vector<MultiGraph> graphs{k3(), build_graph({{"a", "b", 2}, {"b", "c", 1}}), petersen_graph()};
  for (const auto& g : graphs)
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) {
        auto twice = subdivide_uniform(subdivide_uniform(g, a), b);
        auto once = subdivide_uniform(g, a * b);
        ASSERT_EQ(twice.num_vertices(), once.num_vertices());
        ASSERT_EQ(twice.num_edges(), once.num_edges());
        EXPECT_EQ(path_signature(twice, g.num_vertices()), path_signature(once, g.num_vertices()));
      }
}

TEST(Independence, Examples) {
  EXPECT_EQ(independence_number(k3()).alpha, 1);
  EXPECT_EQ(independence_number(cycle_graph(5)).alpha, 2);
  auto pet = petersen_graph();
  EXPECT_EQ(brute_alpha(pet), 4);
  auto res = independence_number(pet);
  EXPECT_EQ(res.alpha, 4);
  EXPECT_TRUE(is_independent(pet, res.witness));
  EXPECT_EQ(res.witness.size(), 4u);
}

TEST(Independence, AgreesWithExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto n = 1 + seed % 10;
    auto g = generate_random_graph(n, EdgeProbability{0.2 + 0.1 * static_cast<double>(seed % 6)}, seed);
    auto res = independence_number(g);
    EXPECT_EQ(res.alpha, brute_alpha(g)) << "seed " << seed;
    EXPECT_TRUE(is_independent(g, res.witness));
    EXPECT_EQ(static_cast<int>(res.witness.size()), res.alpha);
  }
}

TEST(MinEdgeCut, Examples) {
  auto banana = build_graph({{"u", "v", 17}});
  EXPECT_EQ(min_edge_cut(banana, 0, 1), 17);
  auto path = build_graph({{"a", "b", 1}, {"b", "c", 1}});
  EXPECT_EQ(min_edge_cut(path, 0, 2), 1);
  auto tri = k3();
  EXPECT_EQ(brute_cut(tri, 0, 1), 2);
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t t = 0; t < 3; ++t)
      if (s != t) {
        EXPECT_EQ(min_edge_cut(tri, s, t), 2);
      }
  try {
    min_edge_cut(tri, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SameVertex);
  }
}

TEST(MinEdgeCut, AgreesWithBipartitionEnumeration) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto base = generate_random_graph(2 + seed % 7, EdgeProbability{0.5}, seed);
    std::vector<EdgeSpec> edges;
    std::uniform_int_distribution<Chips> mult(1, 4);
    for (const auto& e : base.edge_groups()) edges.push_back({base.name(e.u), base.name(e.v), mult(rng)});
    auto g = build_graph(base.names(), edges);
    for (std::size_t s = 0; s < g.num_vertices(); ++s)
      for (std::size_t t = s + 1; t < g.num_vertices(); ++t) EXPECT_EQ(min_edge_cut(g, s, t), brute_cut(g, s, t));
  }
}

TEST(InducedSubgraph, Examples) {
  auto tri = k3();
  EXPECT_EQ(induced_subgraph(tri, VertexSet(3, {0, 1})).edge_count, 1);
  EXPECT_EQ(induced_subgraph(tri, VertexSet(3, {0})).edge_count, 0);
  auto banana = build_graph({{"a", "b", 2}});
  EXPECT_EQ(induced_subgraph(banana, VertexSet(2, {0, 1})).edge_count, 2);
  try {
    induced_subgraph(tri, VertexSet(5, {4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownVertex);
  }
}

TEST(Bipartite, Examples) {
  auto two = is_bipartite(k2());
  EXPECT_TRUE(two.bipartite);
  EXPECT_EQ(two.left.size() + two.right.size(), 2u);
  EXPECT_FALSE(is_bipartite(k3()).bipartite);
  auto c6 = is_bipartite(subdivide_uniform(k3(), 2));
  ASSERT_TRUE(c6.bipartite);
  // Original vertices on one side, subdivision vertices on the other.
  EXPECT_EQ(c6.left, VertexSet(6, {0, 1, 2}));
}

TEST(Generators, RandomGraph) {
  EXPECT_EQ(generate_random_graph(1, EdgeProbability{0.5}, 3).num_vertices(), 1u);
  auto g2 = generate_random_graph(2, EdgeProbability{1.0}, 3);
  EXPECT_EQ(g2.num_edges(), 1);
  auto a = generate_random_graph(6, EdgeProbability{0.5}, 42);
  auto b = generate_random_graph(6, EdgeProbability{0.5}, 42);
  EXPECT_EQ(a, b);
  auto m = generate_random_graph(6, EdgeCount{7}, 9);
  EXPECT_EQ(m.num_edges(), 7);
  try {
    generate_random_graph(0, EdgeProbability{0.5}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadParams);
  }
}
