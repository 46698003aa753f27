// Copyright 2026 The cayley-perc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cayley_perc/cayley.hpp"
#include "cayley_perc/verify.hpp"
#include "oracles.hpp"

namespace cperc {
namespace {

Permutation P(std::initializer_list<int> v) { return Permutation::from_values(v); }

std::vector<std::pair<int, int>> edge_pairs(const TranspositionTree& t) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : t.edges()) out.emplace_back(e.a, e.b);
  return out;
}

TEST(CayleyTest, StarNeighborsOfIdentity) {
  const CayleyGraph g(TranspositionTree::star(4));
  const auto nb = g.neighbors(Permutation::identity(4));
  EXPECT_EQ(nb, (std::vector<Permutation>{P({2, 1, 3, 4}), P({3, 2, 1, 4}), P({4, 2, 3, 1})}));
}

TEST(CayleyTest, RegularAndSymmetric) {
  for (const auto& t : all_trees(4)) {
    const CayleyGraph g(t);
    for (std::uint64_t r = 0; r < g.vertex_count(); ++r) {
      const auto v = unrank(r, 4);
      const auto nb = g.neighbors(v);
      ASSERT_EQ(nb.size(), 3u);
      std::set<Permutation> distinct(nb.begin(), nb.end());
      EXPECT_EQ(distinct.size(), 3u);
      for (const auto& w : nb) {
        const auto back = g.neighbors(w);
        EXPECT_NE(std::find(back.begin(), back.end(), v), back.end());
      }
    }
  }
}

TEST(CayleyTest, NeighborRanksAgreeWithNeighbors) {
  const CayleyGraph g(TranspositionTree::from_prufer(6, {3, 3, 5, 1}));
  for (std::uint64_t r = 0; r < g.vertex_count(); r += 7) {
    const auto nb = g.neighbors(unrank(r, 6));
    const auto nr = g.neighbor_ranks(r);
    ASSERT_EQ(nb.size(), nr.size());
    for (std::size_t i = 0; i < nb.size(); ++i) EXPECT_EQ(rank(nb[i]).value, nr[i]);
  }
}

TEST(CayleyTest, DistanceBasics) {
  const CayleyGraph g(TranspositionTree::bubble(4));
  const auto id = Permutation::identity(4);
  EXPECT_EQ(g.distance(id, id), 0);
  const auto& first = g.tree().order_sequence().front();
  EXPECT_EQ(g.distance(id, id.apply_transposition(first.v, first.s)), 1);
  int worst = 0;
  for (std::uint64_t a = 0; a < 24; ++a)
    for (std::uint64_t b = 0; b < 24; ++b) worst = std::max(worst, g.distance(unrank(a, 4), unrank(b, 4)));
  EXPECT_EQ(worst, 6);
}

TEST(CayleyTest, DistanceMatchesExplicitBfs) {
  for (const auto& t : {TranspositionTree::star(5), TranspositionTree::from_prufer(5, {2, 4, 2})}) {
    const CayleyGraph g(t);
    const auto ex = oracle::materialize(5, edge_pairs(t));
    for (int src : {0, 17, 93}) {
      const auto d = oracle::bfs(ex, src);
      for (std::size_t w = 0; w < ex.vertices.size(); ++w) {
        ASSERT_EQ(g.distance(Permutation::from_values(ex.vertices[static_cast<std::size_t>(src)]),
                             Permutation::from_values(ex.vertices[w])),
                  d[w]);
      }
    }
  }
}

TEST(CayleyTest, DistanceProfilesCoincideAcrossRoots) {
  std::mt19937_64 rng(5);
  for (int n = 3; n <= 5; ++n) {
    const CayleyGraph g(random_tree(n, rng));
    auto profile = [&](const Permutation& root) {
      auto d = g.bfs_distances(root);
      std::sort(d.begin(), d.end());
      return d;
    };
    const auto base = profile(Permutation::identity(n));
    for (int i = 0; i < 3; ++i) EXPECT_EQ(profile(unrank(rng() % factorial(n), n)), base);
  }
}

TEST(CayleyTest, BallsAndBoundaries) {
  const CayleyGraph g(TranspositionTree::star(4));
  const auto id = Permutation::identity(4);
  const RankSet center = g.make_set(std::vector<Permutation>{id});
  EXPECT_EQ(g.ball(center, 0), center);
  EXPECT_EQ(g.ball(center, 1).size(), 4u);
  EXPECT_EQ(g.boundary(center).size(), 3u);

  const CayleyGraph g5(TranspositionTree::bubble(5));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    RankSet s(120);
    for (std::uint64_t r = 0; r < 120; ++r)
      if (rng() % 4 == 0) s.insert(r);
    const RankSet bd = g5.boundary(s);
    EXPECT_FALSE(bd.intersects(s));
    // B(A, j+1) = B(A, j) ∪ d(B(A, j))
    for (int j = 0; j < 3; ++j) {
      const RankSet bj = g5.ball(s, j);
      RankSet expect = bj;
      g5.boundary(bj).for_each([&](std::uint64_t r) { expect.insert(r); });
      EXPECT_EQ(g5.ball(s, j + 1), expect);
    }
  }
}

TEST(CayleyTest, CmpOrder) {
  const CayleyGraph g(TranspositionTree::star(4));
  const auto id = Permutation::identity(4);
  for (std::uint64_t r = 1; r < 24; ++r) EXPECT_EQ(g.cmp_order(id, unrank(r, 4)), std::strong_ordering::less);
  // two distance-1 vertices compare lexicographically
  EXPECT_EQ(g.cmp_order(P({2, 1, 3, 4}), P({3, 2, 1, 4})), std::strong_ordering::less);
  EXPECT_EQ(g.cmp_order(P({4, 2, 3, 1}), P({3, 2, 1, 4})), std::strong_ordering::greater);

  const auto ex = oracle::materialize(4, edge_pairs(g.tree()));
  const auto d = oracle::bfs(ex, 0);
  std::vector<Permutation> all;
  for (const auto& t : ex.vertices) all.push_back(Permutation::from_values(t));
  std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) { return g.cmp_order(a, b) < 0; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    EXPECT_LE(d[rank(all[i - 1]).value], d[rank(all[i]).value]);
  }
}

TEST(CayleyTest, ExactDiameters) {
  EXPECT_EQ(CayleyGraph(TranspositionTree::star(2)).exact_diameter(), 1);
  EXPECT_EQ(CayleyGraph(TranspositionTree::bubble(5)).exact_diameter(), 10);
  EXPECT_EQ(CayleyGraph(TranspositionTree::star(4)).exact_diameter(), 4);
}

TEST(CayleyTest, ExactDiameterMatchesExplicitEccentricity) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 5; ++i) {
    const auto t = random_tree(5, rng);
    const auto ex = oracle::materialize(5, edge_pairs(t));
    int ecc = 0;
    for (std::size_t r = 0; r < ex.vertices.size(); r += 11) {
      const auto d = oracle::bfs(ex, static_cast<int>(r));
      ecc = std::max(ecc, *std::max_element(d.begin(), d.end()));
    }
    EXPECT_EQ(CayleyGraph(t).exact_diameter(), ecc);
  }
}

TEST(CayleyTest, DiameterChainForAllTreesUpToSix) {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& t : all_trees(n)) {
      const auto b = t.diameter_bounds();
      const int exact = CayleyGraph(t).exact_diameter();
      EXPECT_LE(exact, b.subtree_sum) << t.id();
      EXPECT_LE(static_cast<std::uint64_t>(b.subtree_sum), b.universal) << t.id();
    }
  }
}

TEST(CayleyTest, AldousBound) {
  const CayleyGraph g(TranspositionTree::star(4));
  RankSet all(24);
  for (std::uint64_t r = 0; r < 24; ++r) all.insert(r);
  EXPECT_DOUBLE_EQ(g.aldous_boundary_bound(all), 0.0);
  EXPECT_TRUE(g.boundary(all).empty());
  const RankSet center = g.make_set(std::vector<Permutation>{Permutation::identity(4)});
  EXPECT_NEAR(g.aldous_boundary_bound(center), 0.25 * 23.0 / 24.0, 1e-12);
  EXPECT_LE(g.aldous_boundary_bound(center), static_cast<double>(g.boundary(center).size()));

  const CayleyGraph g5(TranspositionTree::from_prufer(5, {1, 2, 3}));
  std::mt19937_64 rng(21);
  std::vector<std::uint64_t> ranks(120);
  std::iota(ranks.begin(), ranks.end(), 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::shuffle(ranks.begin(), ranks.end(), rng);
    RankSet s(120);
    for (int i = 0; i < 60; ++i) s.insert(ranks[static_cast<std::size_t>(i)]);
    EXPECT_LE(g5.aldous_boundary_bound(s), static_cast<double>(g5.boundary(s).size()));
  }
}

TEST(CayleyTest, CapabilityCap) {
  const CayleyGraph g(TranspositionTree::star(9));
  const auto id = Permutation::identity(9);
  EXPECT_THROW(g.distance(id, id), CapabilityError);
  EXPECT_THROW(g.exact_diameter(), CapabilityError);
  EXPECT_THROW(g.cmp_order(id, id), CapabilityError);
  EXPECT_THROW(g.ball(RankSet(factorial(9)), 1), CapabilityError);
  EXPECT_EQ(g.neighbors(id).size(), 8u);
  // bound falls back to Σ diam(T_i)
  EXPECT_EQ(g.best_diameter(), TranspositionTree::star(9).diameter_bound());
  // a larger cap is a constructor choice
  EXPECT_EQ(CayleyGraph(TranspositionTree::bubble(9), 9).exact_diameter(), 36);
}

TEST(CayleyTest, SingleVertexGraph) {
  const CayleyGraph g(TranspositionTree::star(1));
  const auto id = Permutation::identity(1);
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_TRUE(g.neighbors(id).empty());
  EXPECT_EQ(g.distance(id, id), 0);
  EXPECT_EQ(g.exact_diameter(), 0);
  EXPECT_TRUE(g.boundary(g.make_set(std::vector<Permutation>{id})).empty());
  EXPECT_EQ(g.aldous_boundary_bound(1), 0.0);
}

}  // namespace
}  // namespace cperc
