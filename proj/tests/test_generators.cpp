#include "ordlab/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace ordlab;

namespace {

// Straight scan for triangles.
bool has_triangle(const Hypergraph& g) {
  for (int a = 0; a < g.size(); ++a) {
    for (int b = a + 1; b < g.size(); ++b) {
      if (!g.adjacent(a, b)) continue;
      for (int c = b + 1; c < g.size(); ++c) {
        if (g.adjacent(a, c) && g.adjacent(b, c)) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST(RandomHypergraph, Extremes) {
  EXPECT_EQ(random_hypergraph(6, 3, 0.0, 1).edge_count(), 0u);
  EXPECT_EQ(random_hypergraph(6, 3, 1.0, 1).edge_count(), 20u);
  EXPECT_EQ(random_hypergraph(6, 2, 1.0, 1), make_complete(6));
  EXPECT_THROW(random_hypergraph(6, 2, 1.5, 1), std::invalid_argument);
}

TEST(RandomHypergraph, MeanEdgeCount) {
  double sum = 0;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) sum += static_cast<double>(random_hypergraph(6, 2, 0.5, s).edge_count());
  const double sigma = std::sqrt(15 * 0.25 / seeds);
  EXPECT_NEAR(sum / seeds, 7.5, 3 * sigma);
}

TEST(Girth, ParamsValidate) {
  EXPECT_THROW((GirthParams{10, 1, 4, 0.5}).validate(), std::invalid_argument);
  EXPECT_THROW((GirthParams{10, 2, 2, 0.5}).validate(), std::invalid_argument);
  EXPECT_THROW((GirthParams{1, 2, 4, 0.5}).validate(), std::invalid_argument);
  EXPECT_THROW((GirthParams{10, 2, 4, 1.0}).validate(), std::invalid_argument);
  // a / n^(r - (g-1)/(g-2)) with r=2, g=4: exponent 1/2.
  EXPECT_NEAR((GirthParams{100, 2, 4, 0.5}).edge_probability(), 0.5 / 10.0, 1e-15);
}

TEST(Girth, OutputAlwaysHasGirth) {
  for (auto [r, g] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 3}, {3, 4}}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto res = large_girth_hypergraph({30, r, g, 0.5}, s);
      EXPECT_FALSE(hypergraph_girth(res.graph, g).has_value());
      EXPECT_GT(res.graph.edge_count(), 0u);
      EXPECT_LE(res.graph.edge_count(), res.drawn_edges);
    }
  }
}

TEST(Girth, MostSmallGraphRunsSucceedFirstTime) {
  int first_try = 0;
  for (std::uint64_t s = 0; s < 10; ++s) first_try += large_girth_hypergraph({30, 2, 4, 0.5}, s).attempts == 1;
  EXPECT_GE(first_try, 9);
}

TEST(Girth, Deterministic) {
  EXPECT_EQ(large_girth_hypergraph({40, 3, 4, 0.5}, 3).graph, large_girth_hypergraph({40, 3, 4, 0.5}, 3).graph);
}

TEST(MakeConnected, Cases) {
  EXPECT_EQ(make_connected(make_path(4)), make_path(4));
  const auto forest = make_connected(Hypergraph::empty(5));
  EXPECT_EQ(forest.size(), 5);
  EXPECT_EQ(forest.edge_count(), 4u);
  EXPECT_TRUE(is_connected(forest));
  EXPECT_FALSE(hypergraph_girth(forest, 100).has_value());
  const Hypergraph two(6, 3, {{0, 1, 2}, {3, 4, 5}});
  const auto joined = make_connected(two);
  EXPECT_EQ(joined.size(), 7);
  EXPECT_EQ(joined.edge_count(), 3u);
  EXPECT_TRUE(is_connected(joined));
}

TEST(MakeConnected, NeverLowersGirth) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = large_girth_hypergraph({40, 3, 5, 0.5}, s).graph;
    const auto c = make_connected(g);
    EXPECT_TRUE(is_connected(c));
    EXPECT_FALSE(hypergraph_girth(c, 5).has_value());
    EXPECT_LE(c.size(), g.size() + 1);
  }
}

TEST(Forb, TriangleFreePathCopies) {
  const auto path = make_path(4);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = forb_construction(path, 40, 4, 0.5, s);
    EXPECT_FALSE(has_triangle(f.graph));
    EXPECT_FALSE(contains_induced(f.graph, {make_complete(3)}));
    EXPECT_EQ(f.pattern_automorphisms, 2u);
    EXPECT_EQ(f.restricted.size(), 2 * f.host.edge_count());
    ASSERT_EQ(f.placements.size(), f.host.edge_count());
    for (std::size_t i = 0; i < f.placements.size(); ++i) {
      auto sorted = f.placements[i];
      std::sort(sorted.begin(), sorted.end());
      EXPECT_EQ(sorted, f.host.edges()[i]);
      const auto [sub, map] = induced_substructure(f.graph, f.placements[i]);
      EXPECT_TRUE(is_isomorphic(Structure(sub), Structure(path)));
    }
  }
}

TEST(Forb, ClassCountsCoverPlacements) {
  const auto f = forb_construction(make_path(4), 40, 4, 0.5, 9);
  const auto classes = planted_class_counts(make_path(4), f.placements);
  EXPECT_EQ(classes.size(), 12u);  // 4! / |Aut|
  std::uint64_t total = 0;
  for (auto c : classes) total += c;
  EXPECT_EQ(total, f.placements.size());
  EXPECT_THROW(forb_construction(make_path(2), 10, 4, 0.5, 1), std::invalid_argument);
}

TEST(ContainsInduced, Basic) {
  EXPECT_TRUE(contains_induced(make_complete(4), {make_complete(3)}));
  EXPECT_FALSE(contains_induced(make_complete(4), {make_path(3)}));
  EXPECT_TRUE(contains_induced(make_cycle(5), {make_complete(3), make_path(3)}));
}

TEST(Metric, EquilateralCopiesStayExact) {
  ExactMetric x{3, {0, 1, 1, 1, 0, 1, 1, 1, 0}};
  const auto res = metric_construction(x, 15, 0.5, 2);
  EXPECT_TRUE(res.metric_valid);
  EXPECT_TRUE(res.planted_preserved);
  EXPECT_EQ(res.girth, 3);
  for (const auto& place : res.placements) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) EXPECT_EQ(res.exact(place[i], place[j]), x(i, j));
    }
  }
}

TEST(Metric, SkewTriangle) {
  ExactMetric x{3, {0, 1, parse_rational("1.2"), 1, 0, 1, parse_rational("1.2"), 1, 0}};
  const auto res = metric_construction(x, 20, 0.5, 4);
  EXPECT_EQ(res.girth, 3);  // ceil(1.2) + 1
  EXPECT_TRUE(res.metric_valid);
  EXPECT_TRUE(res.semigroup_membership);
  EXPECT_TRUE(check_metric(res.space));
  const std::vector<Rational> gens{1, parse_rational("1.2")};
  for (int a = 0; a < 20; ++a) {
    for (int b = a + 1; b < 20; ++b) {
      const auto& d = res.exact(a, b);
      EXPECT_TRUE(d == res.beta || in_additive_semigroup(d, gens));
    }
  }
  ExactMetric bad{3, {0, 1, 3, 1, 0, 1, 3, 1, 0}};
  EXPECT_THROW(metric_construction(bad, 10, 0.5, 1), std::invalid_argument);
}

TEST(Semigroup, Membership) {
  const std::vector<Rational> gens{make_rational(3), make_rational(5)};
  EXPECT_TRUE(in_additive_semigroup(0, gens));
  EXPECT_TRUE(in_additive_semigroup(8, gens));
  EXPECT_FALSE(in_additive_semigroup(7, gens));
  EXPECT_TRUE(in_additive_semigroup(make_rational(11, 5), {make_rational(1), make_rational(6, 5)}));
  EXPECT_FALSE(in_additive_semigroup(make_rational(3, 2), {make_rational(1), make_rational(6, 5)}));
}
