#pragma once

#include "ordlab/rational.hpp"
#include "ordlab/rng.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ordlab {

/// Largest universe for which exact distributions store all n! weights.
inline constexpr int kMaxExactOrderSize = 8;
/// Largest universe whose orders can be ranked in 64 bits.
inline constexpr int kMaxRankedOrderSize = 20;

std::uint64_t factorial_u64(int n);

/// A total order on 0..n-1, stored as the elements listed from least to greatest.
class LinearOrder {
 public:
  LinearOrder() = default;
  explicit LinearOrder(std::vector<int> perm);

  static LinearOrder identity(int n);
  /// Inverse of rank(): ranks enumerate orders in lexicographic order of perm.
  static LinearOrder from_rank(int n, std::uint64_t rank);
  /// "2,0,1" -> 2 < 0 < 1.
  static LinearOrder parse(std::string_view text);

  int size() const { return static_cast<int>(perm_.size()); }
  std::span<const int> elements() const { return perm_; }
  int operator[](int position) const { return perm_[position]; }
  int position(int x) const { return pos_[x]; }
  bool less(int a, int b) const { return pos_[a] < pos_[b]; }
  std::uint64_t rank() const;
  std::string to_string() const;

  friend bool operator==(const LinearOrder& a, const LinearOrder& b) { return a.perm_ == b.perm_; }
  friend auto operator<=>(const LinearOrder& a, const LinearOrder& b) { return a.perm_ <=> b.perm_; }

 private:
  std::vector<int> perm_;
  std::vector<int> pos_;
};

std::ostream& operator<<(std::ostream& out, const LinearOrder& order);

/// phi_*(order): phi(x) < phi(y) iff x < y. phi must be a bijection.
LinearOrder pushforward(const LinearOrder& order, std::span<const int> phi);
/// Order on local indices 0..k-1 where local i stands for to_parent[i]
/// (restriction to a subset, or pull-back along an embedding).
LinearOrder pull_back(const LinearOrder& order, std::span<const int> to_parent);
/// True when `order` restricted through to_parent equals `sub`.
bool extends(const LinearOrder& order, const LinearOrder& sub, std::span<const int> to_parent);

/// Probability distribution over the n! linear orders of 0..n-1.
/// Exact mode keeps one rational per order (n <= 8); empirical mode keeps
/// sample counts keyed by order rank (n <= 20).
class OrderDistribution {
 public:
  enum class Mode { exact, empirical };

  static OrderDistribution exact(int n, std::vector<Rational> weights_by_rank);
  static OrderDistribution empirical(int n, std::map<std::uint64_t, std::uint64_t> counts);
  static OrderDistribution point_mass(const LinearOrder& order);

  int size() const { return n_; }
  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::exact; }

  Rational weight(const LinearOrder& order) const;
  double probability(const LinearOrder& order) const;
  /// Non-zero entries in ascending rank order, as (rank, probability).
  std::vector<std::pair<std::uint64_t, double>> support() const;

  const std::vector<Rational>& exact_weights() const;
  const std::map<std::uint64_t, std::uint64_t>& counts() const;
  std::uint64_t total() const { return total_; }

  nlohmann::json to_json() const;
  static OrderDistribution from_json(const nlohmann::json& j);

  friend bool operator==(const OrderDistribution& a, const OrderDistribution& b) {
    return a.n_ == b.n_ && a.mode_ == b.mode_ && a.weights_ == b.weights_ && a.counts_ == b.counts_ &&
           a.total_ == b.total_;
  }

 private:
  int n_ = 0;
  Mode mode_ = Mode::exact;
  std::vector<Rational> weights_;
  std::map<std::uint64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

OrderDistribution uniform_distribution(int n);
OrderDistribution pushforward(const OrderDistribution& d, std::span<const int> phi);
/// Marginal on a subset; local index i of the result stands for subset[i].
OrderDistribution restriction_marginal(const OrderDistribution& d, std::span<const int> subset);

/// Half the L1 distance. Works across modes (empirical counts become frequencies).
double tv_distance(const OrderDistribution& a, const OrderDistribution& b);
/// Exact version; both inputs must be exact.
Rational tv_distance_exact(const OrderDistribution& a, const OrderDistribution& b);

/// Empirical distribution of `samples` draws. Samples are split into fixed
/// blocks with seeds derived from (seed, block index), so the counts do not
/// depend on the worker count.
OrderDistribution sample_distribution(int n, std::uint64_t samples, std::uint64_t seed, int workers,
                                      const std::function<LinearOrder(Rng&)>& draw);

inline constexpr std::uint64_t kSampleBlock = 4096;

}  // namespace ordlab
