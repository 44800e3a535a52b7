#include "ordlab/structures.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace ordlab;

namespace {

// Brute-force induced embedding count over all injective maps.
std::size_t naive_embedding_count(const Hypergraph& h, const Hypergraph& g) {
  const int k = h.size();
  const int n = g.size();
  std::vector<int> choose(n, 0);
  std::fill(choose.begin(), choose.begin() + std::min(k, n), 1);
  if (k > n) return 0;
  std::size_t count = 0;
  std::sort(choose.begin(), choose.end(), std::greater<>());
  do {
    std::vector<int> image;
    for (int i = 0; i < n; ++i) {
      if (choose[i]) image.push_back(i);
    }
    do {
      bool ok = true;
      for (int a = 0; a < k && ok; ++a) {
        for (int b = a + 1; b < k && ok; ++b) ok = h.adjacent(a, b) == g.adjacent(image[a], image[b]);
      }
      if (ok) ++count;
    } while (std::next_permutation(image.begin(), image.end()));
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return count;
}

Hypergraph random_graph(int n, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.coin()) edges.emplace_back(i, j);
    }
  }
  return Hypergraph::graph(n, edges);
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(std::span(p));
  return p;
}

bool pairs_share_two(const Hypergraph& g) {
  for (std::size_t a = 0; a < g.edge_count(); ++a) {
    for (std::size_t b = a + 1; b < g.edge_count(); ++b) {
      std::vector<int> common;
      std::set_intersection(g.edges()[a].begin(), g.edges()[a].end(), g.edges()[b].begin(), g.edges()[b].end(),
                            std::back_inserter(common));
      if (common.size() >= 2) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Hypergraph, RejectsMalformedEdges) {
  EXPECT_THROW(Hypergraph(3, 2, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(3, 2, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(3, 2, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(4, 3, {{0, 1}}), std::invalid_argument);
}

TEST(Hypergraph, EdgesAreSortedAndIndexed) {
  Hypergraph g(4, 3, {{3, 1, 0}, {2, 1, 0}});
  EXPECT_EQ(g.edges()[0], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(g.edges()[1], (std::vector<int>{0, 1, 3}));
  EXPECT_TRUE(g.has_edge({3, 0, 1}));
  EXPECT_EQ(g.edge_index({1, 3, 0}), 1);
  EXPECT_EQ(g.degree(0), 2);
  EXPECT_EQ(g.degree(2), 1);
  EXPECT_TRUE(g.adjacent(2, 1));
  EXPECT_FALSE(g.adjacent(2, 3));
}

TEST(Embeddings, SmallCounts) {
  EXPECT_EQ(count_embeddings(Structure(make_complete(2)), Structure(make_complete(4))), 12u);
  EXPECT_EQ(count_embeddings(Structure(make_path(3)), Structure(make_complete(4))), 0u);
  // Ordered non-adjacent pairs of the 5-cycle.
  EXPECT_EQ(count_embeddings(Structure(Hypergraph::empty(2)), Structure(make_cycle(5))), 10u);
  EXPECT_EQ(automorphisms(Structure(make_cycle(5))).size(), 10u);
  EXPECT_EQ(automorphisms(Structure(make_path(4))).size(), 2u);
}

TEST(Embeddings, MatchBruteForceOnRandomGraphs) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto h = random_graph(1 + static_cast<int>(rng.below(4)), rng);
    const auto g = random_graph(1 + static_cast<int>(rng.below(5)), rng);
    EXPECT_EQ(count_embeddings(Structure(h), Structure(g)), naive_embedding_count(h, g));
  }
}

TEST(Embeddings, CountInvariantUnderRelabeling) {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_graph(1 + static_cast<int>(rng.below(4)), rng);
    const auto b = random_graph(1 + static_cast<int>(rng.below(5)), rng);
    const Structure sa(a);
    const Structure sb(b);
    const auto base = count_embeddings(sa, sb);
    const auto ra = relabel(sa, random_permutation(a.size(), rng));
    const auto rb = relabel(sb, random_permutation(b.size(), rng));
    EXPECT_EQ(count_embeddings(ra, sb), base);
    EXPECT_EQ(count_embeddings(sa, rb), base);
  }
}

TEST(Embeddings, AutomorphismsFormAGroup) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Structure s(random_graph(1 + static_cast<int>(rng.below(5)), rng));
    const auto autos = automorphisms(s);
    std::set<std::vector<int>> group;
    for (const auto& e : autos) group.insert(e.map);
    const int n = universe_size(s);
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    EXPECT_TRUE(group.count(id));
    for (const auto& a : group) {
      std::vector<int> inv(n);
      for (int i = 0; i < n; ++i) inv[a[i]] = i;
      EXPECT_TRUE(group.count(inv));
      for (const auto& b : group) {
        std::vector<int> ab(n);
        for (int i = 0; i < n; ++i) ab[i] = a[b[i]];
        EXPECT_TRUE(group.count(ab));
      }
    }
  }
}

TEST(Embeddings, OtherStructureKinds) {
  const Structure eq(EquivStructure::from_class_sizes({2, 2}));
  EXPECT_EQ(automorphisms(eq).size(), 8u);
  const Structure v22(VectorSpace(2, 2));
  EXPECT_EQ(automorphisms(v22).size(), 6u);
  const Structure v32(VectorSpace(3, 2));
  EXPECT_EQ(automorphisms(v32).size(), 48u);
  const Structure tri(MetricSpace(3, {0, 1, 1, 1, 0, 1, 1, 1, 0}));
  EXPECT_EQ(automorphisms(tri).size(), 6u);
  const Structure iso(MetricSpace(3, {0, 1, 2, 1, 0, 1, 2, 1, 0}));
  EXPECT_EQ(automorphisms(iso).size(), 2u);
}

TEST(Substructure, RestrictionComposes) {
  Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const Structure s(random_graph(6, rng));
    auto perm = random_permutation(6, rng);
    std::vector<int> outer(perm.begin(), perm.begin() + 4);
    const auto first = induced_substructure(s, outer);
    const std::vector<int> inner_local{2, 0};
    const auto second = induced_substructure(first.structure, inner_local);
    std::vector<int> inner_global;
    for (int x : inner_local) inner_global.push_back(first.to_parent[x]);
    const auto direct = induced_substructure(s, inner_global);
    // Relabel both to global ids and compare adjacency.
    const auto& a = std::get<Hypergraph>(second.structure);
    const auto& b = std::get<Hypergraph>(direct.structure);
    ASSERT_EQ(a.size(), b.size());
    std::vector<int> ga;
    for (int x : second.to_parent) ga.push_back(first.to_parent[x]);
    for (int i = 0; i < a.size(); ++i) {
      for (int j = 0; j < a.size(); ++j) {
        const int bi = static_cast<int>(std::find(direct.to_parent.begin(), direct.to_parent.end(), ga[i]) -
                                        direct.to_parent.begin());
        const int bj = static_cast<int>(std::find(direct.to_parent.begin(), direct.to_parent.end(), ga[j]) -
                                        direct.to_parent.begin());
        if (i != j) EXPECT_EQ(a.adjacent(i, j), b.adjacent(bi, bj));
      }
    }
  }
}

TEST(Substructure, VectorSubspaceOnly) {
  const Structure v(VectorSpace(2, 2));
  EXPECT_THROW(induced_substructure(v, std::vector<int>{0, 1, 2}), std::invalid_argument);
  const auto line = induced_substructure(v, std::vector<int>{0, 3});
  EXPECT_EQ(universe_size(line.structure), 2);
}

TEST(Girth, CyclesAndCompleteGraphs) {
  for (int n = 3; n <= 8; ++n) {
    EXPECT_EQ(hypergraph_girth(make_cycle(n), n + 1), n);
    EXPECT_FALSE(hypergraph_girth(make_cycle(n), n).has_value());
  }
  EXPECT_EQ(hypergraph_girth(make_complete(4), 10), 3);
  EXPECT_FALSE(hypergraph_girth(make_path(6), 20).has_value());
  // Two triples sharing two vertices form a 2-cycle.
  EXPECT_EQ(hypergraph_girth(Hypergraph(4, 3, {{0, 1, 2}, {1, 2, 3}}), 5), 2);
  // Loose 3-cycle of triples.
  EXPECT_EQ(hypergraph_girth(Hypergraph(6, 3, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}}), 5), 3);
}

TEST(Girth, AtLeastThreeIffNoSharedPair) {
  Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_hypergraph(7, 3, 0.08 + 0.1 * rng.uniform(), rng);
    EXPECT_EQ(!hypergraph_girth(g, 3).has_value(), !pairs_share_two(g));
  }
}

TEST(Girth, ShortCycleEdgesCoverTheCycle) {
  const auto c = make_cycle(5);
  const auto flags = edges_on_short_cycles(c, 6);
  EXPECT_TRUE(std::all_of(flags.begin(), flags.end(), [](bool b) { return b; }));
  const auto none = edges_on_short_cycles(c, 5);
  EXPECT_TRUE(std::none_of(none.begin(), none.end(), [](bool b) { return b; }));
}

TEST(GraphProperties, ConnectivityAndCutpoints) {
  EXPECT_TRUE(is_connected(make_path(4)));
  EXPECT_FALSE(is_connected(Hypergraph::empty(3)));
  EXPECT_TRUE(has_cutpoint(make_path(3)));
  EXPECT_FALSE(has_cutpoint(make_cycle(4)));
  EXPECT_TRUE(is_bipartite(make_cycle(6)));
  EXPECT_FALSE(is_bipartite(make_cycle(5)));
  EXPECT_EQ(cycle_space_dimension(make_complete(4)), 3);
  EXPECT_EQ(simple_cycles(make_complete(4), 4).size(), 4u);  // the four triangles
  EXPECT_EQ(simple_cycles(make_complete(4), 5).size(), 7u);  // plus three 4-cycles
}

TEST(GraphProperties, GSmallness) {
  EXPECT_FALSE(is_g_small(make_complete(2), 10));  // no cycles
  EXPECT_FALSE(is_g_small(make_path(3), 10));
  EXPECT_FALSE(is_g_small(make_cycle(5), 5));
  EXPECT_TRUE(is_g_small(make_cycle(5), 6));
  EXPECT_TRUE(is_g_small(make_complete(4), 4));
  Rng rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_graph(5, rng);
    bool seen = false;
    for (int cap = 3; cap <= 7; ++cap) {
      const bool now = is_g_small(g, cap);
      if (seen) EXPECT_TRUE(now) << g.key() << " cap " << cap;
      seen = seen || now;
    }
  }
}

TEST(Metric, Validation) {
  EXPECT_TRUE(check_metric(MetricSpace(3, {0, 1, 1.2, 1, 0, 1, 1.2, 1, 0})));
  EXPECT_FALSE(check_metric(MetricSpace(3, {0, 1, 3, 1, 0, 1, 3, 1, 0})));
  EXPECT_FALSE(check_metric(MetricSpace(2, {0, 1, 2, 0})));
  EXPECT_FALSE(check_metric(MetricSpace(2, {0, 0, 0, 0})));
  EXPECT_THROW(MetricSpace(2, {0, 1, 1}), std::invalid_argument);
}

TEST(VectorSpaceOps, ArithmeticAndSpan) {
  const VectorSpace v(3, 2);
  EXPECT_EQ(v.size(), 9);
  for (int a = 0; a < 9; ++a) {
    EXPECT_EQ(v.index(v.coords(a)), a);
    EXPECT_EQ(v.add(a, v.scale(2, a)), 0);
  }
  EXPECT_EQ(v.span_of(std::vector<int>{1}).size(), 3u);
  EXPECT_EQ(v.rank_of(std::vector<int>{1, 2}), 1);
  EXPECT_EQ(v.rank_of(std::vector<int>{1, 3}), 2);
  EXPECT_THROW(VectorSpace(4, 2), std::invalid_argument);
  EXPECT_THROW(VectorSpace(2, 20), std::invalid_argument);
}

TEST(Equivalence, ClassesPartitionUniverse) {
  const EquivStructure e({5, 5, 7, 5});
  EXPECT_EQ(e.class_of(0), 0);
  EXPECT_EQ(e.class_of(2), 1);
  const auto classes = e.classes();
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0], (std::vector<int>{0, 1, 3}));
}
