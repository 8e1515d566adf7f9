#include "chipfire/generators.hpp"
#include "chipfire/gonality.hpp"
#include "chipfire/reduction.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace chipfire;
using chipfire::testing::div;
using chipfire::testing::share;

namespace {

GraphPtr k1_gadget(int r) { return build_reduction(share(build_graph({"x"}, {})), r).gadget; }

// Oracle: minimum degree of an effective divisor of rank >= r, by scanning
// every effective divisor degree by degree.
int brute_dgon(const GraphPtr& g, int r) {
  for (int k = r;; ++k)
    for (EffectiveDivisorCursor c(g->num_vertices(), k); !c.done(); c.advance())
      if (rank_at_least(Divisor(g, c.counts()), r).holds) return k;
}

}  // namespace

TEST(Dgon, Trees) {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto res = dgon(share(path_graph(n)), 1);
    EXPECT_EQ(res.degree, 1);
    EXPECT_TRUE(rank_at_least(res.witness, 1).holds);
  }
  auto star = share(build_graph({{"c", "a", 1}, {"c", "b", 1}, {"c", "d", 1}}));
  EXPECT_EQ(dgon(star, 1).degree, 1);
}

TEST(Dgon, Cycles) {
  for (std::size_t n = 3; n <= 5; ++n)
    for (int r = 1; r <= 3; ++r) EXPECT_EQ(dgon(share(cycle_graph(n)), r).degree, r + 1) << "C_" << n << " r=" << r;
}

TEST(Dgon, K1Gadget) {
  auto res = dgon(k1_gadget(1), 1);
  EXPECT_EQ(res.degree, 4);
  EXPECT_EQ(res.witness.degree(), 4);
  EXPECT_TRUE(res.witness.is_effective());
  EXPECT_TRUE(rank_at_least(res.witness, 1).holds);
}

TEST(Dgon, AgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto g = share(generate_random_graph(2 + seed % 4, EdgeProbability{0.6}, seed));
    for (int r = 1; r <= 2; ++r) EXPECT_EQ(dgon(g, r).degree, brute_dgon(g, r)) << "seed " << seed << " r " << r;
  }
  auto banana = share(banana_graph(3));
  EXPECT_EQ(dgon(banana, 1).degree, brute_dgon(banana, 1));
  EXPECT_EQ(dgon(share(complete_graph(4)), 1).degree, 3);
}

TEST(Dgon, TraceIsExhaustiveBelowOptimum) {
  auto g = share(cycle_graph(5));
  auto res = dgon(g, 2);
  ASSERT_EQ(res.trace.size(), 2u);
  EXPECT_EQ(res.trace[0].degree, 2);
  EXPECT_EQ(res.trace[0].candidates, reduced_representatives(g, 2).size());
  EXPECT_EQ(res.trace[0].failures, res.trace[0].candidates);
  EXPECT_EQ(res.trace.back().degree, 3);
  EXPECT_EQ(res.trace.back().failures + 1, res.trace.back().candidates);
}

TEST(Dgon, NondecreasingInR) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = share(generate_random_graph(3 + seed % 3, EdgeProbability{0.5}, seed));
    int prev = 0;
    for (int r = 1; r <= 3; ++r) {
      int d = dgon(g, r).degree;
      EXPECT_GT(d, prev);
      prev = d;
    }
  }
}

TEST(Dgon, BadRank) {
  try {
    dgon(share(path_graph(2)), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadParams);
  }
}

TEST(Dgon, BudgetExceeded) {
  Budget tiny(1);
  try {
    dgon(k1_gadget(2), 2, &tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(ReducedRepresentatives, OnePerClass) {
  // Every effective divisor of degree k reduces to exactly one listed representative.
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto g = share(generate_random_graph(2 + seed % 4, EdgeProbability{0.6}, seed));
    for (int k = 0; k <= 3; ++k) {
      auto reps = reduced_representatives(g, k);
      std::set<std::vector<Chips>> listed;
      for (const auto& d : reps) {
        EXPECT_TRUE(is_q_reduced(d, 0));
        listed.insert(d.coeffs());
      }
      EXPECT_EQ(listed.size(), reps.size());
      std::set<std::vector<Chips>> reached;
      for (EffectiveDivisorCursor c(g->num_vertices(), k); !c.done(); c.advance())
        reached.insert(q_reduce(Divisor(g, c.counts()), 0).coeffs());
      EXPECT_EQ(reached, listed);
    }
  }
}

TEST(UpperWitness, Examples) {
  auto g = share(petersen_graph());
  for (int r = 1; r <= 2; ++r) {
    Divisor everywhere(g, std::vector<Chips>(g->num_vertices(), r));
    EXPECT_TRUE(dgon_upper_witness(everywhere, r));
    EXPECT_FALSE(dgon_upper_witness(Divisor(g), r));
  }
  auto c3 = share(cycle_graph(3));
  EXPECT_TRUE(dgon_upper_witness(div(c3, {2, 0, 0}), 1));
  try {
    dgon_upper_witness(div(c3, {3, -1, 0}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEffectiveTarget);
  }
}

TEST(Subdivision, StableUpper) {
  auto gadget = sdgon_upper(k1_gadget(1), 1, 2);
  EXPECT_EQ(gadget.degree, 4);
  EXPECT_EQ(gadget.best_k, 1);
  auto k2 = sdgon_upper(share(path_graph(2)), 1, 3);
  EXPECT_EQ(k2.degree, 1);
  EXPECT_EQ(k2.best_k, 1);
  auto c4 = sdgon_upper(share(cycle_graph(4)), 1, 2);
  EXPECT_EQ(c4.degree, 2);
  EXPECT_EQ(c4.best_k, 1);
  EXPECT_EQ(dgon(share(subdivide_uniform(cycle_graph(4), 2)), 1).degree, 2);
  try {
    sdgon_upper(share(path_graph(2)), 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadK);
  }
}

TEST(Subdivision, BananaStaysHyperelliptic) {
  // The 3-banana has gonality 2 already; subdividing keeps it hyperelliptic.
  auto b = sdgon_upper(share(banana_graph(3)), 1, 2);
  EXPECT_EQ(b.degree, 2);
  EXPECT_LE(b.degree, dgon(share(banana_graph(3)), 1).degree);
}

TEST(Subdivision, MetricUpper) {
  EXPECT_EQ(metric_dgon_upper(share(path_graph(2)), 1, 3).degree, 1);
  EXPECT_EQ(metric_dgon_upper(share(cycle_graph(3)), 2, 2).degree, 3);
}

TEST(Sandwich, Examples) {
  auto tree = sandwich_check(share(path_graph(4)), 1, 2);
  EXPECT_TRUE(tree.consistent);
  EXPECT_EQ(tree.dgon, 1);
  EXPECT_EQ(tree.metric_upper.degree, 1);
  auto c5 = sandwich_check(share(cycle_graph(5)), 1, 2);
  EXPECT_TRUE(c5.consistent);
  EXPECT_EQ(c5.dgon, 2);
  EXPECT_EQ(c5.stable_upper.degree, 2);
  auto gadget = sandwich_check(k1_gadget(1), 1, 2);
  EXPECT_TRUE(gadget.consistent) << (gadget.notes.empty() ? "" : gadget.notes[0]);
  EXPECT_EQ(gadget.dgon, 4);
  EXPECT_EQ(gadget.metric_upper.degree, 4);
}
