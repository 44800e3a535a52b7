#include "ordlab/consistency.hpp"

#include "ordlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace ordlab {

StructureKind parse_structure_kind(std::string_view name) {
  if (name == "graph") return StructureKind::graph;
  if (name == "hypergraph3" || name == "hypergraph") return StructureKind::hypergraph3;
  if (name == "equivalence" || name == "equiv") return StructureKind::equivalence;
  if (name == "vector" || name == "vector_space") return StructureKind::vector_space;
  throw std::invalid_argument("unknown structure kind: " + std::string(name));
}

std::string to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::graph: return "graph";
    case StructureKind::hypergraph3: return "hypergraph3";
    case StructureKind::equivalence: return "equivalence";
    case StructureKind::vector_space: return "vector";
  }
  return "?";
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  if (r > n) return out;
  while (true) {
    out.push_back(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

void append_set_partitions(int n, std::vector<Structure>& out) {
  // Restricted growth strings enumerate each labeled partition once.
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int max_label) {
    if (i == n) {
      out.emplace_back(EquivStructure(labels));
      return;
    }
    for (int c = 0; c <= max_label + 1; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(max_label, c));
    }
  };
  labels[0] = 0;
  rec(1, 0);
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Universe bijections whose images we compare against: every permutation for
// relational structures, the linear automorphisms for vector spaces.
std::vector<std::vector<int>> isomorphism_maps(const Structure& s) {
  if (std::holds_alternative<VectorSpace>(s)) {
    std::vector<std::vector<int>> out;
    for (auto& e : automorphisms(s)) out.push_back(std::move(e.map));
    return out;
  }
  return all_permutations(universe_size(s));
}

// Substructure universes: every nonempty subset, or every subspace.
std::vector<std::vector<int>> substructure_universes(const Structure& s) {
  const int n = universe_size(s);
  std::vector<std::vector<int>> out;
  if (const auto* v = std::get_if<VectorSpace>(&s)) {
    std::vector<std::vector<int>> seen;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> gens;
      for (int x = 0; x < n; ++x) {
        if (mask >> x & 1) gens.push_back(x);
      }
      auto span = v->span_of(gens);
      if (std::find(seen.begin(), seen.end(), span) == seen.end()) seen.push_back(span);
    }
    std::sort(seen.begin(), seen.end());
    return seen;
  }
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> subset;
    for (int x = 0; x < n; ++x) {
      if (mask >> x & 1) subset.push_back(x);
    }
    out.push_back(std::move(subset));
  }
  return out;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

using Comparator = std::function<std::optional<double>(const OrderDistribution& lhs, const OrderDistribution& rhs)>;

// Shared driver for exact and statistical modes.
void run_checks(const std::vector<Structure>& structures, const std::vector<OrderDistribution>& dists,
                const Comparator& compare, int workers, ConsistencyReport& report) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < structures.size(); ++i) index.emplace(structure_key(structures[i]), i);
  auto lookup = [&](const Structure& s) {
    auto it = index.find(structure_key(s));
    if (it == index.end()) throw std::logic_error("consistency: substructure missing from enumeration");
    return it->second;
  };

  struct Partial {
    std::vector<ConsistencyViolation> violations;
    std::vector<std::size_t> images;
    std::size_t iso_checks = 0;
    std::size_t restriction_checks = 0;
  };
  std::vector<Partial> partial(structures.size());
  parallel_for(structures.size(), workers, [&](std::size_t i) {
    const Structure& g = structures[i];
    Partial& out = partial[i];
    for (const auto& phi : isomorphism_maps(g)) {
      const std::size_t j = lookup(relabel(g, phi));
      out.images.push_back(j);
      ++out.iso_checks;
      if (auto d = compare(pushforward(dists[i], phi), dists[j])) {
        out.violations.push_back({ConsistencyViolation::Property::isomorphism, structure_key(g),
                                  structure_key(structures[j]), phi, *d});
      }
    }
    for (const auto& subset : substructure_universes(g)) {
      auto sub = induced_substructure(g, subset);
      const std::size_t j = lookup(sub.structure);
      ++out.restriction_checks;
      if (auto d = compare(restriction_marginal(dists[i], sub.to_parent), dists[j])) {
        out.violations.push_back({ConsistencyViolation::Property::restriction, structure_key(g),
                                  structure_key(structures[j]), subset, *d});
      }
    }
  });

  DisjointSets classes(structures.size());
  for (std::size_t i = 0; i < partial.size(); ++i) {
    for (std::size_t j : partial[i].images) classes.unite(i, j);
    report.isomorphism_checks += partial[i].iso_checks;
    report.restriction_checks += partial[i].restriction_checks;
    for (auto& v : partial[i].violations) report.violations.push_back(std::move(v));
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < structures.size(); ++i) roots += classes.find(i) == i;
  report.structures = structures.size();
  report.isomorphism_classes = roots;
}

}  // namespace

std::vector<Structure> enumerate_structures(StructureKind kind, int n_max) {
  std::vector<Structure> out;
  switch (kind) {
    case StructureKind::graph:
    case StructureKind::hypergraph3: {
      const int r = kind == StructureKind::graph ? 2 : 3;
      for (int n = 1; n <= n_max; ++n) {
        auto slots = subsets_of_size(n, r);
        if (slots.size() > 20) throw std::out_of_range("enumerate_structures: too many labeled structures");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
          std::vector<std::vector<int>> edges;
          for (std::size_t e = 0; e < slots.size(); ++e) {
            if (mask >> e & 1) edges.push_back(slots[e]);
          }
          out.emplace_back(Hypergraph(n, r, std::move(edges)));
        }
      }
      break;
    }
    case StructureKind::equivalence:
      for (int n = 1; n <= n_max; ++n) append_set_partitions(n, out);
      break;
    case StructureKind::vector_space:
      for (int q = 2; q <= n_max; ++q) {
        bool prime = true;
        for (int p = 2; p * p <= q; ++p) prime = prime && q % p != 0;
        if (!prime) continue;
        for (int d = 0, size = 1; size <= n_max; ++d, size *= q) out.emplace_back(VectorSpace(q, d));
      }
      break;
  }
  return out;
}

OrderingFamily uniform_family(int size_bound) {
  return {"uniform", size_bound, [size_bound](const Structure& s) {
            const int n = universe_size(s);
            if (n > size_bound) throw std::out_of_range("uniform family: structure exceeds size bound");
            return uniform_distribution(n);
          }};
}

OrderingFamily degree_sorted_family(int size_bound) {
  return {"degree-sorted", size_bound, [size_bound](const Structure& s) {
            const auto* g = std::get_if<Hypergraph>(&s);
            if (!g) throw std::invalid_argument("degree-sorted family is only defined on hypergraphs");
            const int n = g->size();
            if (n > size_bound || n > kMaxExactOrderSize) {
              throw std::out_of_range("degree-sorted family: structure exceeds size bound");
            }
            std::map<int, int> ties;
            for (int v = 0; v < n; ++v) ++ties[g->degree(v)];
            Rational admissible = 1;
            for (auto [deg, count] : ties) admissible *= factorial(count);
            const Rational w = 1 / admissible;
            std::vector<Rational> weights(factorial_u64(n), Rational(0));
            for (std::uint64_t r = 0; r < weights.size(); ++r) {
              auto order = LinearOrder::from_rank(n, r);
              bool sorted = true;
              for (int i = 0; i + 1 < n; ++i) sorted = sorted && g->degree(order[i]) <= g->degree(order[i + 1]);
              if (sorted) weights[r] = w;
            }
            return OrderDistribution::exact(n, std::move(weights));
          }};
}

double statistical_tv_threshold(int n, std::uint64_t samples, double delta) {
  return 4.0 * std::sqrt(static_cast<double>(factorial_u64(n)) * std::log(2.0 / delta) /
                         (2.0 * static_cast<double>(samples)));
}

ConsistencyReport check_consistency(const OrderingFamily& family, StructureKind kind, int n_max, int workers) {
  if (n_max < 1 || n_max > 5) throw std::out_of_range("exact consistency check needs 1 <= n_max <= 5");
  if (n_max > family.size_bound) throw std::invalid_argument("consistency: family undefined beyond its size bound");
  ConsistencyReport report;
  report.family = family.name;
  report.kind = to_string(kind);
  report.mode = "exact";
  report.n_max = n_max;
  const auto structures = enumerate_structures(kind, n_max);
  std::vector<OrderDistribution> dists(structures.size());
  parallel_for(structures.size(), workers, [&](std::size_t i) {
    auto d = family.assign(structures[i]);
    if (!d.is_exact() || d.size() != universe_size(structures[i])) {
      throw std::invalid_argument("consistency: family returned an unusable distribution");
    }
    dists[i] = std::move(d);
  });
  Comparator compare = [](const OrderDistribution& a, const OrderDistribution& b) -> std::optional<double> {
    if (a == b) return std::nullopt;
    return tv_distance_exact(a, b).get_d();
  };
  run_checks(structures, dists, compare, workers, report);
  return report;
}

ConsistencyReport check_consistency(const OrderSampler& sampler, StructureKind kind, int n_max, std::uint64_t samples,
                                    std::uint64_t seed, int workers, double delta) {
  if (n_max < 1 || n_max > 5) throw std::out_of_range("statistical consistency check needs 1 <= n_max <= 5");
  if (n_max > sampler.size_bound) throw std::invalid_argument("consistency: sampler undefined beyond its size bound");
  ConsistencyReport report;
  report.family = sampler.name;
  report.kind = to_string(kind);
  report.mode = "statistical";
  report.n_max = n_max;
  report.samples = samples;
  report.seed = seed;
  const auto structures = enumerate_structures(kind, n_max);
  std::vector<OrderDistribution> dists(structures.size());
  const Rng root(seed);
  parallel_for(structures.size(), workers, [&](std::size_t i) {
    const Structure& s = structures[i];
    dists[i] = sample_distribution(universe_size(s), samples, root.split(i).seed(), 1,
                                   [&](Rng& rng) { return sampler.draw(s, rng); });
  });
  Comparator compare = [samples, delta](const OrderDistribution& a, const OrderDistribution& b) -> std::optional<double> {
    const double tv = tv_distance(a, b);
    if (tv <= statistical_tv_threshold(a.size(), samples, delta)) return std::nullopt;
    return tv;
  };
  run_checks(structures, dists, compare, workers, report);
  return report;
}

nlohmann::json ConsistencyReport::to_json() const {
  nlohmann::json j;
  j["family"] = family;
  j["kind"] = kind;
  j["mode"] = mode;
  j["n_max"] = n_max;
  j["structures"] = structures;
  j["isomorphism_classes"] = isomorphism_classes;
  j["isomorphism_checks"] = isomorphism_checks;
  j["restriction_checks"] = restriction_checks;
  if (mode == "statistical") {
    j["samples"] = samples;
    j["seed"] = seed;
  }
  j["passed"] = passed();
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : violations) {
    vs.push_back({{"property", v.property == ConsistencyViolation::Property::isomorphism ? "isomorphism" : "restriction"},
                  {"structure", v.structure},
                  {"other", v.other},
                  {"witness", v.witness},
                  {"tv", v.discrepancy}});
  }
  j["violations"] = std::move(vs);
  return j;
}

}  // namespace ordlab
