#include "chipfire/generators.hpp"
#include "chipfire/stopping.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chipfire;
using chipfire::testing::div;
using chipfire::testing::share;

namespace {

GraphPtr k2() { return share(build_graph({{"a", "b", 1}})); }

// a - m - b with `bundle` extra parallel a-b edges.
GraphPtr path_with_bundle(Chips bundle) {
  return share(build_graph({"a", "m", "b"}, {{"a", "m", 1}, {"m", "b", 1}, {"a", "b", bundle}}));
}

GraphPtr random_multigraph(std::uint64_t seed, std::size_t n) {
  auto base = generate_random_graph(n, EdgeProbability{0.5}, seed);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Chips> mult(1, 3);
  std::vector<EdgeSpec> edges;
  for (const auto& e : base.edge_groups()) edges.push_back({base.name(e.u), base.name(e.v), mult(rng)});
  return share(build_graph(base.names(), edges));
}

}  // namespace

TEST(EnumerateClass, Examples) {
  auto g = k2();
  auto zero = enumerate_effective_class(div(g, {0, 0}));
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0], div(g, {0, 0}));
  auto one = enumerate_effective_class(div(g, {1, 0}));
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one[0], div(g, {0, 1}));
  EXPECT_EQ(one[1], div(g, {1, 0}));
  auto tri = share(cycle_graph(3));
  // C_3 has genus 1: distinct points are never equivalent, so 1*a is alone.
  auto lone = enumerate_effective_class(div(tri, {1, 0, 0}));
  ASSERT_EQ(lone.size(), 1u);
  EXPECT_EQ(lone[0], div(tri, {1, 0, 0}));
  EXPECT_FALSE(is_equivalent(div(tri, {1, 0, 0}), div(tri, {0, 1, 0})));
  EXPECT_EQ(enumerate_effective_class(div(tri, {2, 0, 0})).size(), 2u);
}

TEST(EnumerateClass, LimitsRaiseBudgetExceeded) {
  auto g = share(complete_graph(4));
  try {
    enumerate_effective_class(div(g, {6, 0, 0, 0}), ClassLimits{5, 20});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(VerticesEquivalent, Examples) {
  auto g = k2();
  EXPECT_FALSE(vertices_equivalent_under(div(g, {1, 0}), 0, 1));
  EXPECT_FALSE(vertices_equivalent_by_closure(div(g, {1, 0}), 0, 1));
  auto banana = share(banana_graph(2));
  EXPECT_TRUE(vertices_equivalent_under(div(banana, {1, 0}), 0, 1));
  EXPECT_TRUE(vertices_equivalent_by_closure(div(banana, {1, 0}), 0, 1));
  auto big = share(banana_graph(17));
  EXPECT_TRUE(vertices_equivalent_under(div(big, {16, 0}), 0, 1));
  EXPECT_FALSE(vertices_equivalent_under(div(big, {17, 0}), 0, 1));
}

TEST(VerticesEquivalent, DharAgreesWithClosure) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    auto g = random_multigraph(seed, 2 + seed % 5);
    auto d = random_effective_divisor(g, static_cast<Chips>(seed % 6), rng);
    StoppingRelation rel(d);
    for (std::size_t u = 0; u < g->num_vertices(); ++u)
      for (std::size_t v = u + 1; v < g->num_vertices(); ++v) {
        bool oracle = vertices_equivalent_by_closure(d, u, v);
        EXPECT_EQ(vertices_equivalent_under(d, u, v), oracle) << d << " " << u << "," << v;
        EXPECT_EQ(rel.equivalent(u, v), oracle);
        ++checked;
      }
  }
  EXPECT_GT(checked, 300);
}

TEST(GreatestScript, IsDebtFreeAndMaximal) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = random_multigraph(seed, 2 + seed % 4);
    auto d = random_effective_divisor(g, static_cast<Chips>(seed % 5), rng);
    for (std::size_t v = 0; v < g->num_vertices(); ++v) {
      auto tau = greatest_script_fixing(d, v);
      EXPECT_EQ(tau[v], 0);
      EXPECT_TRUE(apply_script(d, tau).is_effective());
      // Raising any single entry breaks debt-freeness or the constraint at v.
      for (std::size_t w = 0; w < g->num_vertices(); ++w) {
        if (w == v) continue;
        auto up = tau;
        ++up[w];
        EXPECT_FALSE(apply_script(d, up).is_effective()) << d << " fixing " << v << " raise " << w;
      }
    }
  }
}

TEST(StoppingEdges, Examples) {
  auto banana = share(banana_graph(2));
  auto e = d_stopping_edges(div(banana, {1, 0}));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].multiplicity, 2);
  EXPECT_TRUE(d_stopping_edges(div(k2(), {1, 0})).empty());
  auto pet = share(petersen_graph());
  Divisor two(pet);
  two[3] = 2;
  EXPECT_EQ(d_stopping_edges(two).size(), pet->edge_groups().size());
}

TEST(StoppingComponents, ChipTotalsAreConserved) {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = random_multigraph(seed, 2 + seed % 7);
    auto d = random_effective_divisor(g, static_cast<Chips>(seed % 7), rng);
    auto comps = stopping_components(d);
    std::size_t covered = 0;
    for (const auto& c : comps) covered += c.size();
    EXPECT_EQ(covered, g->num_vertices());
    for (const auto& member : enumerate_effective_class(d))
      for (const auto& c : comps) EXPECT_EQ(member.total_on(c), d.total_on(c));
  }
}

TEST(InteriorChains, CycleAndPath) {
  auto c5 = cycle_graph(5);
  auto chains = interior_chains(c5);
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0].size(), 6u);
  EXPECT_EQ(chains[0].front(), chains[0].back());
  auto p = *path_with_bundle(3);
  auto pc = interior_chains(p);
  ASSERT_EQ(pc.size(), 1u);
  EXPECT_EQ(pc[0].size(), 3u);
}

TEST(CleanPaths, Examples) {
  auto g = path_with_bundle(3);
  auto empty = div(g, {2, 0, 1});
  EXPECT_EQ(clean_stopping_paths(empty), empty);
  auto single = div(g, {0, 1, 1});
  EXPECT_EQ(clean_stopping_paths(single), single);

  auto loaded = div(g, {0, 2, 0});
  ASSERT_TRUE(vertices_equivalent_under(loaded, 0, 2));
  auto clean = clean_stopping_paths(loaded);
  EXPECT_LE(clean[1], 1);
  EXPECT_TRUE(clean.is_effective());
  EXPECT_TRUE(is_equivalent(clean, loaded));

  // a-m-b alone: a and b are separated by firing {a, m}, so nothing is a
  // stopping path and the divisor is left alone.
  auto bare = share(subdivide_uniform(build_graph({{"a", "b", 1}}), 2));
  auto two = div(bare, {0, 0, 2});
  EXPECT_FALSE(vertices_equivalent_under(two, 0, 1));
  EXPECT_EQ(clean_stopping_paths(two), two);
}

TEST(CleanPaths, LongPathsEndClean) {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    // Two hubs tied by a heavy bundle and by a subdivided path.
    std::vector<EdgeSpec> edges{{"x", "y", 8}};
    const int len = 3 + static_cast<int>(seed % 4);
    std::string prev = "x";
    for (int i = 1; i < len; ++i) {
      std::string cur = "m" + std::to_string(i);
      edges.push_back({prev, cur, 1});
      prev = cur;
    }
    edges.push_back({prev, "y", 1});
    auto g = share(build_graph(edges));
    auto d = random_effective_divisor(g, 1 + static_cast<Chips>(seed % 5), rng);
    auto clean = clean_stopping_paths(d);
    EXPECT_TRUE(clean.is_effective());
    EXPECT_TRUE(is_equivalent(clean, d));
    for (const auto& path : d_stopping_paths(clean)) EXPECT_LE(interior_chips(clean, path), 1) << d;
  }
}
