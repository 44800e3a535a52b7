#include "ordlab/experiments.hpp"

#include "ordlab/generators.hpp"
#include "ordlab/numeric.hpp"
#include "ordlab/parallel.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace ordlab {

namespace {

// Lexicographic rank of the pattern order pulled back through `map`, given
// host positions. Matches LinearOrder::rank for the same permutation.
std::uint64_t pulled_back_rank(const std::vector<int>& map, const LinearOrder& host_order) {
  const int k = static_cast<int>(map.size());
  std::array<int, kMaxExactOrderSize> perm{};
  for (int i = 0; i < k; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.begin() + k,
            [&](int a, int b) { return host_order.position(map[a]) < host_order.position(map[b]); });
  std::uint64_t rank = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j) smaller += perm[j] < perm[i];
    rank = rank * static_cast<std::uint64_t>(k - i) + static_cast<std::uint64_t>(smaller);
  }
  return rank;
}

Rational ratio_of(std::uint64_t num, std::uint64_t den) {
  Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

std::vector<LinearOrder> heuristic_orders(const Hypergraph& g) {
  const int n = g.size();
  std::vector<int> by_degree(static_cast<std::size_t>(n));
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
  std::vector<int> reversed(by_degree.rbegin(), by_degree.rend());

  std::vector<int> bfs;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      bfs.push_back(u);
      for (int v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
  }
  return {LinearOrder(std::move(by_degree)), LinearOrder(std::move(reversed)), LinearOrder(std::move(bfs))};
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

}  // namespace

std::uint64_t EmbedCounts::ordered(const LinearOrder& pattern_order) const {
  auto it = n_ord.find(pattern_order);
  return it == n_ord.end() ? 0 : it->second;
}

EmbedCounts count_ordered_embeddings(const std::vector<Embedding>& embeddings, int pattern_size,
                                     const LinearOrder& host_order) {
  EmbedCounts out;
  out.n_ind = embeddings.size();
  for (const auto& e : embeddings) {
    if (static_cast<int>(e.map.size()) != pattern_size) throw std::invalid_argument("embedding has wrong length");
    ++out.n_ord[pull_back(host_order, e.map)];
  }
  return out;
}

EmbedCounts count_ordered_embeddings(const Structure& pattern, const Structure& host, const LinearOrder& host_order,
                                     const std::vector<Embedding>* restricted) {
  if (host_order.size() != universe_size(host)) throw std::invalid_argument("host order has wrong size");
  if (restricted) return count_ordered_embeddings(*restricted, universe_size(pattern), host_order);
  return count_ordered_embeddings(enumerate_embeddings(pattern, host), universe_size(pattern), host_order);
}

Rational capacity(int n, int k, int r) {
  if (!(1 <= r && r <= k && k <= n)) throw std::invalid_argument("capacity needs 1 <= r <= k <= n");
  mpz_class falling = 1;
  for (int i = 0; i < k; ++i) falling *= n - i;
  mpz_class choose;
  mpz_bin_uiui(choose.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(r));
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 2, choose.get_ui());
  Rational q(falling, power);
  q.canonicalize();
  return q;
}

Rational tv_bound_from_delta(const Rational& delta, int k) {
  if (delta < 0) throw std::invalid_argument("tv bound needs delta >= 0");
  return delta * factorial(k) / 2;
}

double tv_bound_from_delta(double delta, int k) {
  if (delta < 0) throw std::invalid_argument("tv bound needs delta >= 0");
  return delta * static_cast<double>(factorial_u64(k)) / 2.0;
}

DeviationMode parse_deviation_mode(const std::string& name) {
  if (name == "exact") return DeviationMode::exact;
  if (name == "sampled") return DeviationMode::sampled;
  if (name == "heuristics") return DeviationMode::heuristics;
  throw std::invalid_argument("unknown deviation mode: " + name);
}

std::string to_string(DeviationMode mode) {
  switch (mode) {
    case DeviationMode::exact: return "exact";
    case DeviationMode::sampled: return "sampled";
    case DeviationMode::heuristics: return "heuristics";
  }
  return "?";
}

DeviationResult deviation_profile(const Hypergraph& pattern, const Hypergraph& host, DeviationMode mode,
                                  std::uint64_t samples, std::uint64_t seed, int workers) {
  const int k = pattern.size();
  const int n = host.size();
  if (k < 1 || k > kMaxExactOrderSize) throw std::out_of_range("deviation profile: pattern size must be 1..8");
  const auto embeddings = enumerate_embeddings(Structure(pattern), Structure(host));
  if (embeddings.empty()) throw std::invalid_argument("deviation profile: pattern does not embed in host");
  const std::uint64_t n_ind = embeddings.size();
  const std::uint64_t kfact = factorial_u64(k);

  std::vector<LinearOrder> fixed;
  std::uint64_t random_count = 0;
  if (mode == DeviationMode::exact) {
    if (n > 7) throw std::out_of_range("deviation profile: exact mode needs at most 7 host vertices");
    random_count = 0;
  } else {
    if (samples == 0) throw std::invalid_argument("deviation profile: sampled mode needs samples > 0");
    random_count = samples;
    if (mode == DeviationMode::heuristics) fixed = heuristic_orders(host);
  }
  const std::uint64_t total = mode == DeviationMode::exact ? factorial_u64(n) : random_count + fixed.size();
  const Rng root(seed);
  auto host_order = [&](std::uint64_t i) {
    if (mode == DeviationMode::exact) return LinearOrder::from_rank(n, i);
    if (i >= random_count) return fixed[i - random_count];
    Rng rng = root.split(i);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<int>(perm));
    return LinearOrder(std::move(perm));
  };

  struct Cell {
    std::uint64_t worst = 0;  // max |count k! - n_ind|
    std::uint64_t pattern_rank = 0;
  };
  std::vector<Cell> cells(total);
  parallel_for(total, workers, [&](std::size_t i) {
    const LinearOrder order = host_order(i);
    std::vector<std::uint64_t> counts(kfact, 0);
    for (const auto& e : embeddings) ++counts[pulled_back_rank(e.map, order)];
    Cell best;
    bool first = true;
    for (std::uint64_t r = 0; r < kfact; ++r) {
      const std::uint64_t scaled = counts[r] * kfact;
      const std::uint64_t gap = scaled > n_ind ? scaled - n_ind : n_ind - scaled;
      if (first || gap > best.worst) {
        best = {gap, r};
        first = false;
      }
    }
    cells[i] = best;
  });

  std::size_t arg = 0;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].worst > cells[arg].worst) arg = i;
  }
  DeviationResult out;
  out.n_ind = n_ind;
  out.host_orders_tested = total;
  out.delta = ratio_of(cells[arg].worst, n_ind * kfact);
  out.tv_bound = tv_bound_from_delta(out.delta, k);
  out.worst_host_order = host_order(arg);
  out.worst_pattern_order = LinearOrder::from_rank(k, cells[arg].pattern_rank);
  return out;
}

Hypergraph default_pattern(int k, int r) {
  if (r < 2 || k < r) throw std::invalid_argument("default pattern needs 2 <= r <= k");
  std::vector<std::vector<int>> edges;
  for (int i = 0; i + r <= k; ++i) {
    std::vector<int> e(static_cast<std::size_t>(r));
    std::iota(e.begin(), e.end(), i);
    edges.push_back(std::move(e));
  }
  return Hypergraph(k, r, std::move(edges));
}

SweepReport concentration_sweep(const Hypergraph& pattern, const std::vector<int>& ns,
                                const std::vector<std::uint64_t>& seeds, std::uint64_t samples, int workers) {
  SweepReport report;
  report.k = pattern.size();
  report.r = pattern.uniformity();
  report.samples = samples;
  report.rows.resize(ns.size() * seeds.size());
  parallel_for(report.rows.size(), workers, [&](std::size_t cell) {
    const int n = ns[cell / seeds.size()];
    const std::uint64_t seed = seeds[cell % seeds.size()];
    const Rng stream = Rng(seed).split(static_cast<std::uint64_t>(n));
    Rng graph_rng = stream.split(0);
    const Hypergraph g = random_hypergraph(n, report.r, 0.5, graph_rng);
    const auto dev = deviation_profile(pattern, g, DeviationMode::sampled, samples, stream.split(1).seed(), 1);
    SweepRow row;
    row.n = n;
    row.seed = seed;
    row.n_ind = dev.n_ind;
    const Rational cap = capacity(n, report.k, report.r);
    row.capacity = cap.get_d();
    const Rational rel = Rational(mpz_class(std::to_string(dev.n_ind))) / cap - 1;
    row.capacity_deviation = std::abs(rel.get_d());
    row.delta = dev.delta.get_d();
    row.tv_bound = dev.tv_bound.get_d();
    report.rows[cell] = row;
  });
  for (int n : ns) {
    std::vector<double> deltas, caps;
    for (const auto& row : report.rows) {
      if (row.n != n) continue;
      deltas.push_back(row.delta);
      caps.push_back(row.capacity_deviation);
    }
    report.median_delta[n] = median(deltas);
    report.median_capacity_deviation[n] = median(caps);
  }
  return report;
}

void SweepReport::write_csv(std::ostream& out) const {
  out << "n,k,r,seed,samples,n_ind,capacity,capacity_deviation,delta,tv_bound\n";
  out.precision(17);
  for (const auto& row : rows) {
    out << row.n << ',' << k << ',' << r << ',' << row.seed << ',' << samples << ',' << row.n_ind << ','
        << row.capacity << ',' << row.capacity_deviation << ',' << row.delta << ',' << row.tv_bound << '\n';
  }
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["r"] = r;
  j["samples"] = samples;
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_json.push_back({{"n", row.n},
                         {"seed", row.seed},
                         {"n_ind", row.n_ind},
                         {"capacity", row.capacity},
                         {"capacity_deviation", row.capacity_deviation},
                         {"delta", row.delta},
                         {"tv_bound", row.tv_bound}});
  }
  j["rows"] = std::move(rows_json);
  nlohmann::json medians = nlohmann::json::object();
  for (const auto& [n, d] : median_delta) {
    medians[std::to_string(n)] = {{"delta", d}, {"capacity_deviation", median_capacity_deviation.at(n)}};
  }
  j["medians"] = std::move(medians);
  return j;
}

Rational qop_proportion(const Structure& big, std::span<const int> subset, const LinearOrder& sub_order,
                        const LinearOrder& big_order, const AdmissibleFamily& f, QopMode mode,
                        const std::vector<Embedding>* embeddings) {
  if (sub_order.size() != static_cast<int>(subset.size())) throw std::invalid_argument("qop: order size mismatch");
  if (!is_admissible(big, f, big_order)) throw std::invalid_argument("qop: order on the big structure is not admissible");
  {
    // Admissibility of the small order is judged on the induced substructure.
    auto sub = induced_substructure(big, subset);
    std::vector<int> where(static_cast<std::size_t>(universe_size(big)), -1);
    for (int i = 0; i < static_cast<int>(subset.size()); ++i) where[subset[i]] = i;
    std::vector<int> local(sub.to_parent.size());
    std::iota(local.begin(), local.end(), 0);
    std::sort(local.begin(), local.end(), [&](int a, int b) {
      return sub_order.position(where[sub.to_parent[a]]) < sub_order.position(where[sub.to_parent[b]]);
    });
    if (!is_admissible(sub.structure, restrict_family(f, sub.to_parent), LinearOrder(std::move(local)))) {
      throw std::invalid_argument("qop: order on the substructure is not admissible");
    }
  }
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  if (mode == QopMode::automorphisms) {
    std::vector<int> map(subset.size());
    for (const auto& pi : automorphisms(big)) {
      for (std::size_t i = 0; i < subset.size(); ++i) map[i] = pi.map[subset[i]];
      hits += pull_back(big_order, map) == sub_order;
      ++total;
    }
  } else {
    if (!embeddings || embeddings->empty()) throw std::invalid_argument("qop: embeddings mode needs a nonempty list");
    for (const auto& e : *embeddings) {
      if (e.map.size() != subset.size()) throw std::invalid_argument("qop: embedding has wrong length");
      hits += pull_back(big_order, e.map) == sub_order;
      ++total;
    }
  }
  return ratio_of(hits, total);
}

LinearOrder default_extension_pattern(int k, int m) {
  if (k < 1 || m < 0) throw std::invalid_argument("extension pattern needs k >= 1, m >= 0");
  std::vector<int> perm{0};
  for (int l = 0; l < m; ++l) perm.push_back(k + l);
  for (int j = 1; j < k; ++j) perm.push_back(j);
  return LinearOrder(std::move(perm));
}

ExtensionLemmaResult extension_lemma_ratio(int k, int m, const LinearOrder& pattern, int n) {
  if (k < 1 || m < 1 || n < 1) throw std::invalid_argument("extension lemma needs k, m, n >= 1");
  if (pattern.size() != k + m) throw std::invalid_argument("extension lemma: pattern must order k + m elements");
  const int size = k + n * m;
  if (size > 10) throw std::out_of_range("extension lemma: k + n m must be at most 10");

  // Pattern sequences in host indices: X alone, then X + Y_i for each copy.
  std::vector<int> x_chain;
  for (int e : pattern.elements()) {
    if (e < k) x_chain.push_back(e);
  }
  std::vector<std::vector<int>> copy_chains(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int e : pattern.elements()) copy_chains[i].push_back(e < k ? e : k + i * m + (e - k));
  }
  auto increasing = [](const std::vector<int>& chain, const std::vector<int>& pos) {
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      if (pos[chain[j]] > pos[chain[j + 1]]) return false;
    }
    return true;
  };

  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pos(perm.size());
  ExtensionLemmaResult out;
  std::uint64_t agree_on_x = 0;
  do {
    ++out.total_orders;
    for (int p = 0; p < size; ++p) pos[perm[p]] = p;
    if (!increasing(x_chain, pos)) continue;
    ++agree_on_x;
    bool none = true;
    for (const auto& chain : copy_chains) {
      if (increasing(chain, pos)) {
        none = false;
        break;
      }
    }
    out.event_count += none;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.unconditional = ratio_of(out.event_count, out.total_orders);
  out.conditional = ratio_of(out.event_count, agree_on_x);
  return out;
}

nlohmann::json MCEstimate::to_json() const {
  return {{"estimate", estimate}, {"ci_low", ci_low}, {"ci_high", ci_high},
          {"hits", hits},         {"samples", samples}, {"seed", seed}};
}

MCEstimate mc_estimate(const std::function<bool(const LinearOrder&)>& event, int n,
                       const std::function<LinearOrder(Rng&)>& draw, std::uint64_t samples, std::uint64_t seed,
                       int workers) {
  if (samples < 100) throw std::invalid_argument("mc_estimate needs at least 100 samples");
  const auto dist = sample_distribution(n, samples, seed, workers, draw);
  MCEstimate out;
  for (auto [rank, count] : dist.counts()) {
    if (event(LinearOrder::from_rank(n, rank))) out.hits += count;
  }
  out.samples = samples;
  out.seed = seed;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  const auto ci = wilson_interval(out.hits, samples, kWilsonZ99);
  out.ci_low = std::min(ci.low, out.estimate);
  out.ci_high = std::max(ci.high, out.estimate);
  return out;
}

}  // namespace ordlab
