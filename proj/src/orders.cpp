#include "ordlab/orders.hpp"

#include "ordlab/parallel.hpp"

#include <ostream>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ordlab {

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > kMaxRankedOrderSize) throw std::out_of_range("factorial_u64: n out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// ---------------------------------------------------------------------------
// LinearOrder

LinearOrder::LinearOrder(std::vector<int> perm) : perm_(std::move(perm)) {
  const int n = static_cast<int>(perm_.size());
  pos_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int x = perm_[i];
    if (x < 0 || x >= n || pos_[x] >= 0) throw std::invalid_argument("LinearOrder: not a permutation");
    pos_[x] = i;
  }
}

LinearOrder LinearOrder::identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return LinearOrder(std::move(p));
}

LinearOrder LinearOrder::from_rank(int n, std::uint64_t rank) {
  if (rank >= factorial_u64(n)) throw std::out_of_range("LinearOrder::from_rank: rank too large");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> perm;
  perm.reserve(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    const std::uint64_t block = factorial_u64(i - 1);
    const auto digit = static_cast<std::size_t>(rank / block);
    rank %= block;
    perm.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return LinearOrder(std::move(perm));
}

LinearOrder LinearOrder::parse(std::string_view text) {
  std::vector<int> perm;
  std::string s(text);
  if (s.find_first_not_of(" \t") == std::string::npos) return LinearOrder(std::move(perm));
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t used = 0;
      perm.push_back(std::stoi(tok, &used));
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("LinearOrder::parse: bad element '" + tok + "'");
    }
  }
  return LinearOrder(std::move(perm));
}

std::uint64_t LinearOrder::rank() const {
  const int n = size();
  if (n > kMaxRankedOrderSize) throw std::out_of_range("LinearOrder::rank: order too large");
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_later = 0;
    for (int j = i + 1; j < n; ++j) smaller_later += perm_[j] < perm_[i];
    r += static_cast<std::uint64_t>(smaller_later) * factorial_u64(n - 1 - i);
  }
  return r;
}

std::string LinearOrder::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(perm_[i]);
  }
  return out;
}

std::ostream& operator<<(std::ostream& out, const LinearOrder& order) { return out << order.to_string(); }

LinearOrder pushforward(const LinearOrder& order, std::span<const int> phi) {
  if (static_cast<int>(phi.size()) != order.size()) throw std::invalid_argument("pushforward: size mismatch");
  std::vector<int> perm;
  perm.reserve(phi.size());
  for (int x : order.elements()) perm.push_back(phi[x]);
  return LinearOrder(std::move(perm));  // validates bijectivity
}

LinearOrder pull_back(const LinearOrder& order, std::span<const int> to_parent) {
  std::vector<int> local(to_parent.size());
  std::iota(local.begin(), local.end(), 0);
  for (int p : to_parent) {
    if (p < 0 || p >= order.size()) throw std::out_of_range("pull_back: element out of range");
  }
  std::sort(local.begin(), local.end(),
            [&](int a, int b) { return order.position(to_parent[a]) < order.position(to_parent[b]); });
  return LinearOrder(std::move(local));
}

bool extends(const LinearOrder& order, const LinearOrder& sub, std::span<const int> to_parent) {
  if (sub.size() != static_cast<int>(to_parent.size())) return false;
  for (int i = 0; i + 1 < sub.size(); ++i) {
    if (order.position(to_parent[sub[i]]) > order.position(to_parent[sub[i + 1]])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// OrderDistribution

OrderDistribution OrderDistribution::exact(int n, std::vector<Rational> weights_by_rank) {
  if (n < 0 || n > kMaxExactOrderSize) throw std::out_of_range("exact distributions need 0 <= n <= 8");
  if (weights_by_rank.size() != factorial_u64(n)) throw std::invalid_argument("exact distribution: need n! weights");
  Rational sum = 0;
  for (const auto& w : weights_by_rank) {
    if (w < 0) throw std::invalid_argument("exact distribution: negative weight");
    sum += w;
  }
  if (sum != 1) throw std::invalid_argument("exact distribution: weights must sum to 1");
  OrderDistribution d;
  d.n_ = n;
  d.mode_ = Mode::exact;
  d.weights_ = std::move(weights_by_rank);
  return d;
}

OrderDistribution OrderDistribution::empirical(int n, std::map<std::uint64_t, std::uint64_t> counts) {
  if (n < 0 || n > kMaxRankedOrderSize) throw std::out_of_range("empirical distributions need 0 <= n <= 20");
  OrderDistribution d;
  d.n_ = n;
  d.mode_ = Mode::empirical;
  const std::uint64_t orders = factorial_u64(n);
  for (auto it = counts.begin(); it != counts.end();) {
    if (it->first >= orders) throw std::out_of_range("empirical distribution: rank out of range");
    if (it->second == 0) {
      it = counts.erase(it);
      continue;
    }
    d.total_ += it->second;
    ++it;
  }
  if (d.total_ == 0) throw std::invalid_argument("empirical distribution: no samples");
  d.counts_ = std::move(counts);
  return d;
}

OrderDistribution OrderDistribution::point_mass(const LinearOrder& order) {
  const int n = order.size();
  if (n <= kMaxExactOrderSize) {
    std::vector<Rational> w(factorial_u64(n), Rational(0));
    w[order.rank()] = 1;
    return exact(n, std::move(w));
  }
  return empirical(n, {{order.rank(), 1}});
}

Rational OrderDistribution::weight(const LinearOrder& order) const {
  if (order.size() != n_) throw std::invalid_argument("weight: order has wrong size");
  if (is_exact()) return weights_[order.rank()];
  auto it = counts_.find(order.rank());
  if (it == counts_.end()) return 0;
  Rational q(mpz_class(std::to_string(it->second)), mpz_class(std::to_string(total_)));
  q.canonicalize();
  return q;
}

double OrderDistribution::probability(const LinearOrder& order) const {
  if (is_exact()) return weights_[order.rank()].get_d();
  auto it = counts_.find(order.rank());
  return it == counts_.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total_);
}

std::vector<std::pair<std::uint64_t, double>> OrderDistribution::support() const {
  std::vector<std::pair<std::uint64_t, double>> out;
  if (is_exact()) {
    for (std::uint64_t r = 0; r < weights_.size(); ++r) {
      if (weights_[r] != 0) out.emplace_back(r, weights_[r].get_d());
    }
  } else {
    for (auto [r, c] : counts_) out.emplace_back(r, static_cast<double>(c) / static_cast<double>(total_));
  }
  return out;
}

const std::vector<Rational>& OrderDistribution::exact_weights() const {
  if (!is_exact()) throw std::logic_error("exact_weights: distribution is empirical");
  return weights_;
}

const std::map<std::uint64_t, std::uint64_t>& OrderDistribution::counts() const {
  if (is_exact()) throw std::logic_error("counts: distribution is exact");
  return counts_;
}

nlohmann::json OrderDistribution::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["mode"] = is_exact() ? "exact" : "empirical";
  nlohmann::json w = nlohmann::json::object();
  if (is_exact()) {
    for (std::uint64_t r = 0; r < weights_.size(); ++r) {
      if (weights_[r] != 0) w[LinearOrder::from_rank(n_, r).to_string()] = to_string(weights_[r]);
    }
  } else {
    for (auto [r, c] : counts_) w[LinearOrder::from_rank(n_, r).to_string()] = c;
    j["total"] = total_;
  }
  j["weights"] = std::move(w);
  return j;
}

OrderDistribution OrderDistribution::from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const std::string mode = j.at("mode").get<std::string>();
  const auto& w = j.at("weights");
  auto order_of = [n](const std::string& key) {
    auto order = LinearOrder::parse(key);
    if (order.size() != n) throw std::invalid_argument("distribution JSON: order '" + key + "' has wrong size");
    return order;
  };
  if (mode == "exact") {
    std::vector<Rational> weights(factorial_u64(n), Rational(0));
    for (const auto& [key, value] : w.items()) weights[order_of(key).rank()] = parse_rational(value.get<std::string>());
    return exact(n, std::move(weights));
  }
  if (mode == "empirical") {
    std::map<std::uint64_t, std::uint64_t> counts;
    for (const auto& [key, value] : w.items()) counts[order_of(key).rank()] = value.get<std::uint64_t>();
    auto d = empirical(n, std::move(counts));
    if (j.contains("total") && j.at("total").get<std::uint64_t>() != d.total()) {
      throw std::invalid_argument("distribution JSON: total does not match counts");
    }
    return d;
  }
  throw std::invalid_argument("distribution JSON: unknown mode " + mode);
}

// ---------------------------------------------------------------------------
// Operations

OrderDistribution uniform_distribution(int n) {
  if (n < 0 || n > kMaxExactOrderSize) throw std::out_of_range("uniform_distribution: n must be in [0, 8]");
  const auto count = factorial_u64(n);
  Rational w(1, static_cast<unsigned long>(count));
  return OrderDistribution::exact(n, std::vector<Rational>(count, w));
}

OrderDistribution pushforward(const OrderDistribution& d, std::span<const int> phi) {
  const int n = d.size();
  if (static_cast<int>(phi.size()) != n) throw std::invalid_argument("pushforward: map has wrong size");
  if (d.is_exact()) {
    std::vector<Rational> out(factorial_u64(n), Rational(0));
    const auto& w = d.exact_weights();
    for (std::uint64_t r = 0; r < w.size(); ++r) {
      if (w[r] == 0) continue;
      out[pushforward(LinearOrder::from_rank(n, r), phi).rank()] = w[r];
    }
    return OrderDistribution::exact(n, std::move(out));
  }
  std::map<std::uint64_t, std::uint64_t> out;
  for (auto [r, c] : d.counts()) out[pushforward(LinearOrder::from_rank(n, r), phi).rank()] += c;
  return OrderDistribution::empirical(n, std::move(out));
}

OrderDistribution restriction_marginal(const OrderDistribution& d, std::span<const int> subset) {
  const int n = d.size();
  const int k = static_cast<int>(subset.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int x : subset) {
    if (x < 0 || x >= n) throw std::out_of_range("restriction_marginal: element out of range");
    if (seen[x]) throw std::invalid_argument("restriction_marginal: repeated element");
    seen[x] = 1;
  }
  if (d.is_exact()) {
    std::vector<Rational> out(factorial_u64(k), Rational(0));
    const auto& w = d.exact_weights();
    for (std::uint64_t r = 0; r < w.size(); ++r) {
      if (w[r] == 0) continue;
      out[pull_back(LinearOrder::from_rank(n, r), subset).rank()] += w[r];
    }
    return OrderDistribution::exact(k, std::move(out));
  }
  std::map<std::uint64_t, std::uint64_t> out;
  for (auto [r, c] : d.counts()) out[pull_back(LinearOrder::from_rank(n, r), subset).rank()] += c;
  return OrderDistribution::empirical(k, std::move(out));
}

double tv_distance(const OrderDistribution& a, const OrderDistribution& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tv_distance: size mismatch");
  if (a.is_exact() && b.is_exact()) return tv_distance_exact(a, b).get_d();
  std::map<std::uint64_t, double> diff;
  for (auto [r, p] : a.support()) diff[r] += p;
  for (auto [r, p] : b.support()) diff[r] -= p;
  double sum = 0;
  for (auto [r, v] : diff) sum += std::abs(v);
  return 0.5 * sum;
}

Rational tv_distance_exact(const OrderDistribution& a, const OrderDistribution& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tv_distance: size mismatch");
  const auto& wa = a.exact_weights();
  const auto& wb = b.exact_weights();
  Rational sum = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) sum += abs(Rational(wa[i] - wb[i]));
  return sum / 2;
}

OrderDistribution sample_distribution(int n, std::uint64_t samples, std::uint64_t seed, int workers,
                                      const std::function<LinearOrder(Rng&)>& draw) {
  if (samples == 0) throw std::invalid_argument("sample_distribution: need at least one sample");
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(blocks);
  const Rng root(seed);
  parallel_for(blocks, workers, [&](std::size_t b) {
    Rng rng = root.split(b);
    const std::uint64_t begin = b * kSampleBlock;
    const std::uint64_t end = std::min(samples, begin + kSampleBlock);
    auto& counts = partial[b];
    for (std::uint64_t i = begin; i < end; ++i) {
      auto order = draw(rng);
      if (order.size() != n) throw std::logic_error("sample_distribution: sampler returned wrong size");
      ++counts[order.rank()];
    }
  });
  std::map<std::uint64_t, std::uint64_t> merged;
  for (const auto& part : partial) {
    for (auto [r, c] : part) merged[r] += c;
  }
  return OrderDistribution::empirical(n, std::move(merged));
}

}  // namespace ordlab
