#include "ordlab/generators.hpp"

#include "ordlab/orders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ordlab {

Hypergraph random_hypergraph(int n, int r, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random_hypergraph: p must lie in [0, 1]");
  if (r < 1 || n < 0) throw std::invalid_argument("random_hypergraph: bad size");
  std::vector<std::vector<int>> edges;
  if (r <= n) {
    std::vector<int> idx(static_cast<std::size_t>(r));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (rng.uniform() < p) edges.push_back(idx);
      int i = r - 1;
      while (i >= 0 && idx[i] == n - r + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return Hypergraph(n, r, std::move(edges));
}

Hypergraph random_hypergraph(int n, int r, double p, std::uint64_t seed) {
  Rng rng(seed);
  return random_hypergraph(n, r, p, rng);
}

void GirthParams::validate() const {
  if (r < 2) throw std::invalid_argument("girth params: r must be at least 2");
  if (g < 3) throw std::invalid_argument("girth params: g must be at least 3");
  if (n < r) throw std::invalid_argument("girth params: n must be at least r");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("girth params: a must lie in (0, 1)");
}

double GirthParams::edge_probability() const {
  const double exponent = r - static_cast<double>(g - 1) / static_cast<double>(g - 2);
  return std::min(1.0, a / std::pow(static_cast<double>(n), exponent));
}

GirthResult large_girth_hypergraph(const GirthParams& params, std::uint64_t seed) {
  params.validate();
  const Rng root(seed);
  const double p = params.edge_probability();
  for (int attempt = 0; attempt < kGirthRetries; ++attempt) {
    Rng rng = root.split(static_cast<std::uint64_t>(attempt));
    const Hypergraph drawn = random_hypergraph(params.n, params.r, p, rng);
    const auto flagged = edges_on_short_cycles(drawn, params.g);
    std::vector<std::vector<int>> kept;
    for (std::size_t e = 0; e < drawn.edge_count(); ++e) {
      if (!flagged[e]) kept.push_back(drawn.edges()[e]);
    }
    if (kept.empty()) continue;
    Hypergraph out(params.n, params.r, std::move(kept));
    if (hypergraph_girth(out, params.g).has_value()) {
      throw std::logic_error("large_girth_hypergraph: short cycle survived deletion");
    }
    return {std::move(out), attempt + 1, drawn.edge_count()};
  }
  throw std::runtime_error("large_girth_hypergraph: every draw came out empty; raise a or n");
}

Hypergraph make_connected(const Hypergraph& g) {
  const int r = g.uniformity();
  int n = g.size();
  std::vector<std::vector<int>> edges = g.edges();
  while (true) {
    const Hypergraph current(n, r, edges);
    const auto comp = connected_components(current);
    const int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    if (count <= 1) return current;
    std::vector<int> rep(static_cast<std::size_t>(count), -1);
    for (int v = 0; v < n; ++v) {
      if (rep[comp[v]] < 0) rep[comp[v]] = v;
    }
    std::vector<int> edge;
    if (count >= r) {
      edge.assign(rep.begin(), rep.begin() + r);
    } else {
      edge = rep;
      while (static_cast<int>(edge.size()) < r) edge.push_back(n++);
    }
    edges.push_back(std::move(edge));
  }
}

bool contains_induced(const Hypergraph& g, const std::vector<Hypergraph>& forbidden) {
  return std::any_of(forbidden.begin(), forbidden.end(),
                     [&](const Hypergraph& f) { return !enumerate_embeddings(Structure(f), Structure(g)).empty(); });
}

ForbResult forb_construction(const Hypergraph& pattern, int n, int g, double a, std::uint64_t seed) {
  if (!pattern.is_graph()) throw std::invalid_argument("forb construction: pattern must be a graph");
  const int k = pattern.size();
  if (k < 3) throw std::invalid_argument("forb construction: pattern needs at least 3 vertices");
  const Rng root(seed);
  auto host = large_girth_hypergraph({n, k, g, a}, root.split(0).seed());
  Rng rng = root.split(1);

  const auto autos = automorphisms(Structure(pattern));
  ForbResult out;
  out.host = host.graph;
  out.attempts = host.attempts;
  out.pattern_automorphisms = autos.size();
  std::set<std::vector<int>> edges;
  for (const auto& hyperedge : host.graph.edges()) {
    std::vector<int> place = hyperedge;
    rng.shuffle(std::span<int>(place));
    for (const auto& e : pattern.edges()) {
      edges.insert({std::min(place[e[0]], place[e[1]]), std::max(place[e[0]], place[e[1]])});
    }
    for (const auto& alpha : autos) {
      std::vector<int> map(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) map[i] = place[alpha.map[i]];
      out.restricted.push_back({std::move(map)});
    }
    out.placements.push_back(std::move(place));
  }
  out.graph = Hypergraph(n, 2, {edges.begin(), edges.end()});
  return out;
}

std::vector<std::uint64_t> planted_class_counts(const Hypergraph& pattern,
                                                const std::vector<std::vector<int>>& placements) {
  const int k = pattern.size();
  const auto autos = automorphisms(Structure(pattern));
  // Orbit index of every pattern order, numbered by smallest member.
  std::vector<int> orbit(factorial_u64(k), -1);
  int classes = 0;
  for (std::uint64_t r = 0; r < orbit.size(); ++r) {
    if (orbit[r] >= 0) continue;
    const auto order = LinearOrder::from_rank(k, r);
    for (const auto& alpha : autos) orbit[pushforward(order, alpha.map).rank()] = classes;
    ++classes;
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(classes), 0);
  for (const auto& place : placements) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return place[a] < place[b]; });
    ++counts[orbit[LinearOrder(std::move(perm)).rank()]];
  }
  return counts;
}

bool in_additive_semigroup(const Rational& value, const std::vector<Rational>& generators) {
  if (value < 0) return false;
  if (value == 0) return true;
  mpz_class lcm = value.get_den();
  for (const auto& q : generators) {
    if (q <= 0) throw std::invalid_argument("semigroup: generators must be positive");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  }
  const mpz_class target_z = value.get_num() * (lcm / value.get_den());
  if (target_z > 10'000'000) throw std::out_of_range("semigroup: target too large for the membership table");
  const auto target = static_cast<std::size_t>(target_z.get_ui());
  std::vector<std::size_t> steps;
  for (const auto& q : generators) {
    const mpz_class s = q.get_num() * (lcm / q.get_den());
    if (s <= target_z) steps.push_back(s.get_ui());
  }
  std::vector<char> reach(target + 1, 0);
  reach[0] = 1;
  for (std::size_t t = 1; t <= target; ++t) {
    for (std::size_t s : steps) {
      if (s <= t && reach[t - s]) {
        reach[t] = 1;
        break;
      }
    }
  }
  return reach[target] != 0;
}

MetricResult metric_construction(const ExactMetric& x, int n, double a, std::uint64_t seed) {
  const int k = x.n;
  if (k < 3) throw std::invalid_argument("metric construction: X needs at least 3 points");
  const MetricSpace xd = x.to_metric();
  if (!check_metric(xd)) throw std::invalid_argument("metric construction: X is not a metric");
  std::vector<Rational> gens;
  Rational lo, hi;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const Rational& d = x(i, j);
      if (d <= 0) throw std::invalid_argument("metric construction: distances must be positive");
      if (gens.empty() || d < lo) lo = d;
      if (gens.empty() || d > hi) hi = d;
      gens.push_back(d);
    }
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  // spread = ceil(hi / lo); all-equal X gives spread 1, which still needs girth 3.
  const Rational ratio = hi / lo;
  mpz_class spread = ratio.get_num() / ratio.get_den();
  if (spread * ratio.get_den() != ratio.get_num()) spread += 1;
  const int girth = std::max(3, static_cast<int>(spread.get_si()) + 1);

  const Rng root(seed);
  auto host = large_girth_hypergraph({n, k, girth, a}, root.split(0).seed());
  Rng rng = root.split(1);
  const auto isometries = automorphisms(Structure(xd));

  MetricResult out;
  out.host = host.graph;
  out.girth = girth;
  out.attempts = host.attempts;

  // Planted weights, then all-pairs shortest paths; nullopt = no path yet.
  std::vector<std::optional<Rational>> dist(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> std::optional<Rational>& { return dist[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) at(i, i) = Rational(0);
  for (const auto& hyperedge : host.graph.edges()) {
    std::vector<int> place = hyperedge;
    rng.shuffle(std::span<int>(place));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i != j) at(place[i], place[j]) = x(i, j);
      }
    }
    for (const auto& alpha : isometries) {
      std::vector<int> map(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) map[i] = place[alpha.map[i]];
      out.restricted.push_back({std::move(map)});
    }
    out.placements.push_back(std::move(place));
  }
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      if (!at(i, m)) continue;
      for (int j = 0; j < n; ++j) {
        if (!at(m, j)) continue;
        Rational via = *at(i, m) + *at(m, j);
        if (!at(i, j) || via < *at(i, j)) at(i, j) = std::move(via);
      }
    }
  }
  Rational beta = 0;
  for (const auto& d : dist) {
    if (d && *d > beta) beta = *d;
  }
  out.beta = beta;
  out.exact.n = n;
  out.exact.dist.resize(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) out.exact.dist[i] = dist[i] ? *dist[i] : beta;
  out.space = out.exact.to_metric();

  out.planted_preserved = true;
  for (const auto& place : out.placements) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        out.planted_preserved = out.planted_preserved && out.exact(place[i], place[j]) == x(i, j);
      }
    }
  }
  out.metric_valid = check_metric(out.space);
  out.semigroup_membership = true;
  for (int i = 0; i < n && out.semigroup_membership; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& d = dist[static_cast<std::size_t>(i) * n + j];
      if (d && !in_additive_semigroup(*d, gens)) {
        out.semigroup_membership = false;
        break;
      }
    }
  }
  if (!out.planted_preserved || !out.metric_valid) {
    throw std::logic_error("metric construction: glued space failed verification");
  }
  return out;
}

}  // namespace ordlab
