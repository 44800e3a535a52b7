#pragma once

#include "ordlab/admissibility.hpp"
#include "ordlab/orders.hpp"
#include "ordlab/rational.hpp"
#include "ordlab/structures.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace ordlab {

/// Embedding counts of a pattern in an ordered host, split by the order each
/// embedding pulls back onto the pattern.
struct EmbedCounts {
  std::uint64_t n_ind = 0;
  std::map<LinearOrder, std::uint64_t> n_ord;  // pattern order -> embeddings inducing it

  std::uint64_t ordered(const LinearOrder& pattern_order) const;
};

/// If `restricted` is given only those embeddings are counted.
EmbedCounts count_ordered_embeddings(const Structure& pattern, const Structure& host, const LinearOrder& host_order,
                                     const std::vector<Embedding>* restricted = nullptr);
EmbedCounts count_ordered_embeddings(const std::vector<Embedding>& embeddings, int pattern_size,
                                     const LinearOrder& host_order);

/// (n)_k 2^-(k choose r): expected number of induced copies of a k-vertex
/// r-graph in the uniform random r-graph on n vertices.
Rational capacity(int n, int k, int r);

/// delta * k! / 2.
Rational tv_bound_from_delta(const Rational& delta, int k);
double tv_bound_from_delta(double delta, int k);

enum class DeviationMode { exact, sampled, heuristics };
DeviationMode parse_deviation_mode(const std::string& name);
std::string to_string(DeviationMode mode);

struct DeviationResult {
  Rational delta;        // max |n_ord / n_ind - 1/k!| over tested pairs
  Rational tv_bound;     // tv_bound_from_delta(delta, k)
  std::uint64_t n_ind = 0;
  std::uint64_t host_orders_tested = 0;
  LinearOrder worst_host_order;
  LinearOrder worst_pattern_order;
};

/// exact: every order of the host (n <= 7). sampled: `samples` uniform orders.
/// heuristics: sampled plus degree-sorted (both directions) and BFS orders.
DeviationResult deviation_profile(const Hypergraph& pattern, const Hypergraph& host, DeviationMode mode,
                                  std::uint64_t samples, std::uint64_t seed, int workers);

/// Path on k vertices for graphs, tight path (consecutive r-windows) otherwise.
Hypergraph default_pattern(int k, int r);

struct SweepRow {
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t n_ind = 0;
  double capacity = 0.0;
  double capacity_deviation = 0.0;  // |n_ind / capacity - 1|
  double delta = 0.0;
  double tv_bound = 0.0;
};

struct SweepReport {
  int k = 0;
  int r = 0;
  std::uint64_t samples = 0;
  std::vector<SweepRow> rows;  // ns outer, seeds inner
  std::map<int, double> median_delta;
  std::map<int, double> median_capacity_deviation;

  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

/// One G(n, r, 1/2) per (n, seed) cell; cells run in parallel, rows merged in cell order.
SweepReport concentration_sweep(const Hypergraph& pattern, const std::vector<int>& ns,
                                const std::vector<std::uint64_t>& seeds, std::uint64_t samples, int workers);

enum class QopMode { automorphisms, embeddings };

/// Fraction of maps (automorphisms of `big`, or the supplied embeddings of the
/// substructure on `subset`) under which the order on the subset lands inside
/// `big_order`. `sub_order` indexes the subset positionally.
Rational qop_proportion(const Structure& big, std::span<const int> subset, const LinearOrder& sub_order,
                        const LinearOrder& big_order, const AdmissibleFamily& f, QopMode mode,
                        const std::vector<Embedding>* embeddings = nullptr);

struct ExtensionLemmaResult {
  Rational unconditional;  // event count / (k + n m)!
  Rational conditional;    // event count / #orders extending the pattern on X
  std::uint64_t event_count = 0;
  std::uint64_t total_orders = 0;
};

/// Universe X + nY: X = 0..k-1, copy i of Y = k + i m .. k + i m + m - 1.
/// Event: the order agrees with `pattern` on X but contains none of the copies
/// of `pattern` on X + Y_i. `pattern` orders X + Y as 0..k+m-1.
ExtensionLemmaResult extension_lemma_ratio(int k, int m, const LinearOrder& pattern, int n);
/// x_0 < y_0 < ... < y_{m-1} < x_1 < ... < x_{k-1}.
LinearOrder default_extension_pattern(int k, int m);

struct MCEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

inline constexpr double kWilsonZ99 = 2.5758293035489;

/// Wilson 99% interval for P(event) under the sampler.
MCEstimate mc_estimate(const std::function<bool(const LinearOrder&)>& event, int n,
                       const std::function<LinearOrder(Rng&)>& draw, std::uint64_t samples, std::uint64_t seed,
                       int workers);

}  // namespace ordlab
