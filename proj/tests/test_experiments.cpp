#include "ordlab/experiments.hpp"
#include "ordlab/consistency.hpp"
#include "ordlab/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

using namespace ordlab;

namespace {

LinearOrder random_order(int n, Rng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(std::span(p));
  return LinearOrder(p);
}

// Ordered counts by scanning every injective map.
std::map<LinearOrder, std::uint64_t> naive_ordered_counts(const Hypergraph& h, const Hypergraph& g,
                                                          const LinearOrder& host_order) {
  std::map<LinearOrder, std::uint64_t> out;
  const int k = h.size();
  std::vector<int> image(g.size());
  std::iota(image.begin(), image.end(), 0);
  std::set<std::vector<int>> seen;
  do {
    std::vector<int> map(image.begin(), image.begin() + k);
    if (!seen.insert(map).second) continue;
    bool ok = true;
    for (int a = 0; a < k && ok; ++a) {
      for (int b = a + 1; b < k && ok; ++b) ok = h.adjacent(a, b) == g.adjacent(map[a], map[b]);
    }
    if (ok) ++out[pull_back(host_order, map)];
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

}  // namespace

TEST(OrderedEmbeddings, SumToInducedCount) {
  Rng rng(1);
  const Structure pattern(make_path(3));
  for (const auto& s : enumerate_structures(StructureKind::graph, 5)) {
    if (universe_size(s) < 3) continue;
    for (int t = 0; t < 2; ++t) {
      const auto order = random_order(universe_size(s), rng);
      const auto counts = count_ordered_embeddings(pattern, s, order);
      std::uint64_t sum = 0;
      for (const auto& [o, c] : counts.n_ord) sum += c;
      EXPECT_EQ(sum, counts.n_ind);
      EXPECT_EQ(counts.n_ind, count_embeddings(pattern, s));
    }
  }
}

TEST(OrderedEmbeddings, MatchBruteForce) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_hypergraph(6, 2, 0.5, rng);
    const auto h = trial % 2 ? make_path(3) : Hypergraph::graph(3, {{0, 1}});
    const auto order = random_order(6, rng);
    const auto counts = count_ordered_embeddings(Structure(h), Structure(g), order);
    const auto expected = naive_ordered_counts(h, g, order);
    for (const auto& [o, c] : expected) EXPECT_EQ(counts.ordered(o), c);
    for (const auto& [o, c] : counts.n_ord) EXPECT_EQ(expected.count(o) ? expected.at(o) : 0, c);
  }
}

TEST(Capacity, EqualsExhaustiveMean) {
  struct Case {
    int n, k, r;
    StructureKind kind;
  };
  for (auto c : {Case{4, 3, 2, StructureKind::graph}, Case{5, 3, 2, StructureKind::graph},
                 Case{4, 4, 3, StructureKind::hypergraph3}}) {
    const Structure pattern(default_pattern(c.k, c.r));
    Rational total = 0;
    std::uint64_t hosts = 0;
    for (const auto& s : enumerate_structures(c.kind, c.n)) {
      if (universe_size(s) != c.n) continue;
      total += static_cast<unsigned long>(count_embeddings(pattern, s));
      ++hosts;
    }
    EXPECT_EQ(total / static_cast<unsigned long>(hosts), capacity(c.n, c.k, c.r)) << c.n << c.k << c.r;
  }
  // (5)_3 / 2^3 = 60 / 8.
  EXPECT_EQ(capacity(5, 3, 2), make_rational(15, 2));
}

TEST(TvBound, IsHalfDeltaTimesFactorial) {
  EXPECT_EQ(tv_bound_from_delta(make_rational(1, 10), 3), make_rational(3, 10));
  EXPECT_EQ(tv_bound_from_delta(make_rational(0), 4), 0);
  EXPECT_DOUBLE_EQ(tv_bound_from_delta(0.1, 3), 0.3);
  EXPECT_THROW(tv_bound_from_delta(make_rational(-1), 3), std::invalid_argument);
}

TEST(Deviation, ZeroOnHomogeneousHosts) {
  for (auto mode : {DeviationMode::exact, DeviationMode::sampled, DeviationMode::heuristics}) {
    const auto full = deviation_profile(make_complete(3), make_complete(6), mode, 20, 1, 2);
    EXPECT_EQ(full.delta, 0);
    EXPECT_EQ(full.tv_bound, 0);
    const auto empty = deviation_profile(Hypergraph::empty(3), Hypergraph::empty(6), mode, 20, 1, 2);
    EXPECT_EQ(empty.delta, 0);
  }
}

TEST(Deviation, SampledNeverExceedsExact) {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto host = random_hypergraph(6, 2, 0.5, s);
    if (count_embeddings(Structure(make_path(3)), Structure(host)) == 0) continue;
    const auto exact = deviation_profile(make_path(3), host, DeviationMode::exact, 0, s, 2);
    const auto sampled = deviation_profile(make_path(3), host, DeviationMode::sampled, 50, s, 2);
    const auto heur = deviation_profile(make_path(3), host, DeviationMode::heuristics, 50, s, 2);
    EXPECT_LE(sampled.delta, exact.delta);
    EXPECT_LE(heur.delta, exact.delta);
    EXPECT_GE(heur.delta, sampled.delta);
    EXPECT_EQ(exact.host_orders_tested, 720u);
  }
  EXPECT_THROW(deviation_profile(make_path(3), make_path(8), DeviationMode::exact, 0, 1, 1), std::out_of_range);
}

TEST(Deviation, WorkerIndependent) {
  const auto host = random_hypergraph(12, 2, 0.5, 4);
  const auto a = deviation_profile(make_path(3), host, DeviationMode::sampled, 30, 9, 1);
  const auto b = deviation_profile(make_path(3), host, DeviationMode::sampled, 30, 9, 4);
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.worst_host_order, b.worst_host_order);
}

TEST(Sweep, CsvAndDeterminism) {
  const auto a = concentration_sweep(make_path(3), {8, 10}, {1, 2}, 10, 1);
  const auto b = concentration_sweep(make_path(3), {8, 10}, {1, 2}, 10, 3);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  ASSERT_EQ(a.rows.size(), 4u);
  EXPECT_EQ(a.rows[0].n, 8);
  EXPECT_EQ(a.rows[1].seed, 2u);
  std::ostringstream os;
  a.write_csv(os);
  const auto csv = os.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,k,r,seed,samples,n_ind,capacity,capacity_deviation,delta,tv_bound");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(DefaultPattern, PathsAndTightPaths) {
  EXPECT_EQ(default_pattern(4, 2), make_path(4));
  EXPECT_EQ(default_pattern(5, 3), Hypergraph(5, 3, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}}));
}

TEST(Qop, ProportionsOverSubOrdersSumToOne) {
  Rng rng(5);
  struct Case {
    Structure big;
    std::vector<int> subset;
    AdmissibleFamily family;
  };
  std::vector<Case> cases{
      {Structure(make_cycle(5)), {0, 2}, AdmissibleFamily::all_orders()},
      {Structure(make_cycle(5)), {3, 1, 2}, AdmissibleFamily::all_orders()},
      {Structure(EquivStructure::from_class_sizes({2, 2})), {0, 2}, AdmissibleFamily::convex_equiv()},
      {Structure(VectorSpace(2, 2)), {0, 3}, AdmissibleFamily::vs_natural()},
  };
  for (const auto& c : cases) {
    const auto big_orders = admissible_orders(c.big, c.family);
    const auto& big_order = big_orders[rng.below(big_orders.size())];
    const int k = static_cast<int>(c.subset.size());
    Rational sum = 0;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const LinearOrder sub_order(perm);
      try {
        sum += qop_proportion(c.big, c.subset, sub_order, big_order, c.family, QopMode::automorphisms);
      } catch (const std::invalid_argument&) {
        // Inadmissible on the substructure: no automorphism lands there.
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(sum, 1) << kind_name(c.big);
  }
}

TEST(Qop, EmbeddingModeAndErrors) {
  const Structure c5(make_cycle(5));
  const std::vector<int> subset{0, 1};
  const auto identity = LinearOrder::identity(5);
  // Every edge of C5, both directions.
  std::vector<Embedding> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({{i, (i + 1) % 5}});
    edges.push_back({{(i + 1) % 5, i}});
  }
  EXPECT_EQ(qop_proportion(c5, subset, LinearOrder::parse("0,1"), identity, AdmissibleFamily::all_orders(),
                           QopMode::embeddings, &edges),
            make_rational(1, 2));
  EXPECT_THROW(qop_proportion(c5, subset, LinearOrder::parse("0,1"), identity, AdmissibleFamily::all_orders(),
                              QopMode::embeddings, nullptr),
               std::invalid_argument);
  EXPECT_EQ(qop_proportion(c5, subset, LinearOrder::parse("0,1"), identity, AdmissibleFamily::all_orders(),
                           QopMode::automorphisms),
            make_rational(1, 2));
}

TEST(ExtensionLemma, OneOverNPlusTwo) {
  for (int n = 1; n <= 5; ++n) {
    const auto e = extension_lemma_ratio(2, 1, LinearOrder::parse("0,2,1"), n);
    EXPECT_EQ(e.unconditional, make_rational(1, n + 2)) << n;
    EXPECT_EQ(e.conditional, make_rational(2, n + 2)) << n;
    EXPECT_EQ(e.total_orders, factorial_u64(2 + n));
  }
  EXPECT_EQ(default_extension_pattern(2, 1), LinearOrder::parse("0,2,1"));
  EXPECT_THROW(extension_lemma_ratio(3, 2, default_extension_pattern(3, 2), 4), std::out_of_range);
}

TEST(MonteCarlo, IntervalAndDeterminism) {
  auto draw = [](Rng& rng) {
    std::vector<int> p{0, 1, 2};
    rng.shuffle(std::span(p));
    return LinearOrder(p);
  };
  auto event = [](const LinearOrder& o) { return o.less(0, 1) && o.less(1, 2); };
  const auto a = mc_estimate(event, 3, draw, 30000, 3, 1);
  const auto b = mc_estimate(event, 3, draw, 30000, 3, 4);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_LE(a.ci_low, a.estimate);
  EXPECT_GE(a.ci_high, a.estimate);
  EXPECT_LT(a.ci_low, 1.0 / 6);
  EXPECT_GT(a.ci_high, 1.0 / 6);
  EXPECT_THROW(mc_estimate(event, 3, draw, 10, 3, 1), std::invalid_argument);
}

TEST(Qop, SmallExamples) {
  const Structure k2(make_complete(2));
  const std::vector<int> both{0, 1};
  for (const char* a : {"0,1", "1,0"}) {
    for (const char* b : {"0,1", "1,0"}) {
      EXPECT_EQ(qop_proportion(k2, both, LinearOrder::parse(a), LinearOrder::parse(b), AdmissibleFamily::all_orders(),
                               QopMode::automorphisms),
                make_rational(1, 2));
    }
  }
  // A one-point order is contained in every order, so every automorphism counts.
  const Structure empty(Hypergraph::empty(4));
  EXPECT_EQ(qop_proportion(empty, std::vector<int>{2}, LinearOrder::identity(1), LinearOrder::parse("3,1,0,2"),
                           AdmissibleFamily::all_orders(), QopMode::automorphisms),
            1);
  // Legs of length 1, 2 and 3 from vertex 0.
  const Structure rigid(Hypergraph::graph(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}}));
  ASSERT_EQ(automorphisms(rigid).size(), 1u);
  const auto o = LinearOrder::parse("4,0,6,5,1,3,2");
  std::vector<int> all(7);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(qop_proportion(rigid, all, o, o, AdmissibleFamily::all_orders(), QopMode::automorphisms), 1);
}
