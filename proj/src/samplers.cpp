#include "ordlab/samplers.hpp"

#include "ordlab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>

namespace ordlab {

namespace {

void check_degree(const Hypergraph& g, int D) {
  if (g.max_degree() > D) throw std::invalid_argument("sampler: a vertex has degree above D");
}

// Ascending order of y; empty when two values coincide.
std::optional<LinearOrder> order_by_value(const std::vector<double>& y) {
  std::vector<int> perm(y.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return y[a] < y[b]; });
  for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
    if (y[perm[i]] == y[perm[i + 1]]) return std::nullopt;
  }
  return LinearOrder(std::move(perm));
}

}  // namespace

LinearOrder sample_gaussian_ordering(const Hypergraph& g, int D, Rng& rng) {
  if (!g.is_graph()) throw std::invalid_argument("gaussian ordering needs a graph; use the hypergraph sampler");
  check_degree(g, D);
  const int n = g.size();
  while (true) {
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : g.edges()) {
      const double z = rng.normal();
      y[e[0]] += z;
      y[e[1]] += z;
    }
    // Padding edges lead to auxiliary vertices that are never ordered.
    for (int x = 0; x < n; ++x) {
      for (int i = g.degree(x); i < D; ++i) y[x] += rng.normal();
    }
    if (auto order = order_by_value(y)) return *order;
  }
}

LinearOrder sample_gaussian_ordering(const Hypergraph& g, int D, std::uint64_t seed) {
  Rng rng(seed);
  return sample_gaussian_ordering(g, D, rng);
}

LinearOrder sample_bipartite_ordering(const Hypergraph& g, Rng& rng) {
  if (!g.is_graph()) throw std::invalid_argument("bipartite ordering needs a graph");
  if (!is_connected(g)) throw std::invalid_argument("bipartite ordering needs a connected graph");
  const int n = g.size();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  if (n > 0) {
    side[0] = 0;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          q.push(v);
        } else if (side[v] == side[u]) {
          throw std::invalid_argument("bipartite ordering: graph is not bipartite");
        }
      }
    }
  }
  std::vector<int> parts[2];
  for (int x = 0; x < n; ++x) parts[side[x]].push_back(x);
  const int first = rng.coin() ? 1 : 0;
  std::vector<int> perm;
  for (int k : {first, 1 - first}) {
    rng.shuffle(std::span<int>(parts[k]));
    perm.insert(perm.end(), parts[k].begin(), parts[k].end());
  }
  return LinearOrder(std::move(perm));
}

LinearOrder sample_bipartite_ordering(const Hypergraph& g, std::uint64_t seed) {
  Rng rng(seed);
  return sample_bipartite_ordering(g, rng);
}

double max_centered_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("is_cnsd: matrix is not square");
  if (!m.isApprox(m.transpose(), 1e-12) && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("is_cnsd: matrix is not symmetric");
  }
  const auto n = m.rows();
  if (n <= 1) return 0.0;
  const Eigen::MatrixXd p =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd c = p * m * p;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (c + c.transpose()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

bool is_cnsd(const Eigen::MatrixXd& m, double tol) { return max_centered_eigenvalue(m) <= tol; }

Eigen::MatrixXd distance_matrix(const MetricSpace& m) {
  const int n = m.size();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = m(i, j);
  }
  return out;
}

MetricSpace bounded_degree_metric(const Hypergraph& g, int D) {
  if (!g.is_graph()) throw std::invalid_argument("bounded degree metric needs a graph");
  if (D < 1) throw std::invalid_argument("bounded degree metric needs D >= 1");
  check_degree(g, D);
  const int n = g.size();
  const double a = static_cast<double>(D) / static_cast<double>(D + 1);
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) d[static_cast<std::size_t>(i) * n + j] = g.adjacent(i, j) ? 1.0 : a;
    }
  }
  return MetricSpace(n, std::move(d));
}

PointSet embed_negative_type(const MetricSpace& m, double exponent) {
  if (!(exponent > 0.0 && exponent <= 1.0)) throw std::invalid_argument("embed_negative_type: exponent must be in (0, 1]");
  const int n = m.size();
  if (n == 0) return PointSet(0, 0);
  Eigen::MatrixXd sq(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) sq(i, j) = std::pow(m(i, j), 2.0 * exponent);
  }
  const Eigen::MatrixXd p =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd gram = -0.5 * p * sq * p;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (gram + gram.transpose()));
  const auto& values = solver.eigenvalues();  // ascending
  if (values.minCoeff() < -1e-9) throw std::domain_error("embed_negative_type: not of negative type at this exponent");
  const int dims = std::max(n - 1, 0);
  PointSet points = PointSet::Zero(n, dims);
  // Largest eigenvalues first; the centred Gram matrix has rank <= n - 1.
  for (int k = 0; k < dims; ++k) {
    const int col = n - 1 - k;
    const double lambda = std::max(values(col), 0.0);
    points.col(k) = solver.eigenvectors().col(col) * std::sqrt(lambda);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double target = std::pow(m(i, j), exponent);
      if (std::abs((points.row(i) - points.row(j)).norm() - target) > 1e-7) {
        throw std::domain_error("embed_negative_type: reconstruction misses the target distances");
      }
    }
  }
  return points;
}

LinearOrder sample_projection_ordering(const PointSet& points, Rng& rng) {
  const auto n = points.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if ((points.row(i) - points.row(j)).norm() <= 1e-12) {
        throw std::invalid_argument("projection ordering: duplicate points");
      }
    }
  }
  const auto dims = points.cols();
  while (true) {
    Eigen::VectorXd dir(dims);
    for (Eigen::Index k = 0; k < dims; ++k) dir(k) = rng.normal();
    if (dims > 0 && dir.squaredNorm() == 0.0) continue;
    const Eigen::VectorXd proj = points * dir;
    std::vector<double> y(proj.data(), proj.data() + proj.size());
    if (auto order = order_by_value(y)) return *order;
  }
}

LinearOrder sample_projection_ordering(const PointSet& points, std::uint64_t seed) {
  Rng rng(seed);
  return sample_projection_ordering(points, rng);
}

std::vector<double> sample_exchangeable_block(int r, Rng& rng) {
  if (r < 2) throw std::invalid_argument("exchangeable block needs r >= 2");
  std::vector<double> t(static_cast<std::size_t>(r));
  std::vector<double> rest(static_cast<std::size_t>(r));  // 1 - t, kept accurate for the tails
  while (true) {
    double sum = 0.0;
    for (int i = 0; i + 1 < r; ++i) {
      t[i] = rng.uniform();
      rest[i] = 1.0 - t[i];
      sum += t[i];
    }
    const double up = std::ceil(sum);
    t[r - 1] = up - sum;  // (-sum) mod 1
    rest[r - 1] = sum - (up - 1.0);
    bool interior = true;
    for (int i = 0; i < r; ++i) interior = interior && t[i] > 0.0 && rest[i] > 0.0;
    if (interior) break;
  }
  std::vector<double> z(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) z[i] = normal_quantile(t[i], rest[i]);
  return z;
}

std::vector<double> sample_exchangeable_block(int r, std::uint64_t seed) {
  Rng rng(seed);
  return sample_exchangeable_block(r, rng);
}

LinearOrder sample_hypergraph_gaussian_ordering(const Hypergraph& g, int D, Rng& rng) {
  check_degree(g, D);
  const int n = g.size();
  const int r = g.uniformity();
  std::vector<int> slots(static_cast<std::size_t>(r));
  while (true) {
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : g.edges()) {
      const auto block = sample_exchangeable_block(r, rng);
      std::iota(slots.begin(), slots.end(), 0);
      rng.shuffle(std::span<int>(slots));
      for (int i = 0; i < r; ++i) y[e[i]] += block[slots[i]];
    }
    for (int x = 0; x < n; ++x) {
      for (int i = g.degree(x); i < D; ++i) y[x] += rng.normal();
    }
    if (auto order = order_by_value(y)) return *order;
  }
}

LinearOrder sample_hypergraph_gaussian_ordering(const Hypergraph& g, int D, std::uint64_t seed) {
  Rng rng(seed);
  return sample_hypergraph_gaussian_ordering(g, D, rng);
}

OrderSampler gaussian_sampler(int D) {
  return {"gaussian", kMaxRankedOrderSize, [D](const Structure& s, Rng& rng) {
            const auto* g = std::get_if<Hypergraph>(&s);
            if (!g) throw std::invalid_argument("gaussian sampler needs a graph");
            return sample_gaussian_ordering(*g, D, rng);
          }};
}

OrderSampler hypergraph_gaussian_sampler(int D) {
  return {"hyper-gauss", kMaxRankedOrderSize, [D](const Structure& s, Rng& rng) {
            const auto* g = std::get_if<Hypergraph>(&s);
            if (!g) throw std::invalid_argument("hypergraph gaussian sampler needs a hypergraph");
            return sample_hypergraph_gaussian_ordering(*g, D, rng);
          }};
}

OrderSampler uniform_sampler() {
  return {"uniform", kMaxRankedOrderSize, [](const Structure& s, Rng& rng) {
            std::vector<int> perm(static_cast<std::size_t>(universe_size(s)));
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(std::span<int>(perm));
            return LinearOrder(std::move(perm));
          }};
}

}  // namespace ordlab
