#include "ordlab/structures.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

namespace ordlab {

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int p = 2; p * p <= q; ++p) {
    if (q % p == 0) return false;
  }
  return true;
}

int mod_pow(int base, int exp, int q) {
  long long result = 1, b = base % q;
  while (exp > 0) {
    if (exp & 1) result = result * b % q;
    b = b * b % q;
    exp >>= 1;
  }
  return static_cast<int>(result);
}

int mod_inverse(int a, int q) { return mod_pow(a, q - 2, q); }

// Calls fn(indices) for every k-subset of [0, m), in lexicographic order.
void for_each_combination(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > m) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Row-reduced echelon basis over F_q of the given coordinate rows.
std::vector<std::vector<int>> echelon_basis(std::vector<std::vector<int>> rows, int q, int d) {
  // Work from the most significant coordinate down so the basis is canonical.
  int row = 0;
  for (int col = d - 1; col >= 0 && row < static_cast<int>(rows.size()); --col) {
    int pivot = -1;
    for (int i = row; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[row], rows[pivot]);
    int inv = mod_inverse(rows[row][col], q);
    for (auto& x : rows[row]) x = x * inv % q;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == row || rows[i][col] == 0) continue;
      int f = rows[i][col];
      for (int j = 0; j < d; ++j) rows[i][j] = ((rows[i][j] - f * rows[row][j]) % q + q) % q;
    }
    ++row;
  }
  rows.resize(static_cast<std::size_t>(row));
  return rows;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hypergraph

Hypergraph::Hypergraph(int n, int r, std::vector<std::vector<int>> edges) : n_(n), r_(r) {
  if (n < 0) throw std::invalid_argument("hypergraph: negative vertex count");
  if (r < 2) throw std::invalid_argument("hypergraph: uniformity must be at least 2");
  for (auto& e : edges) {
    if (static_cast<int>(e.size()) != r) throw std::invalid_argument("hypergraph: hyperedge of wrong size");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw std::invalid_argument("hypergraph: repeated vertex in hyperedge");
    }
    if (e.front() < 0 || e.back() >= n) throw std::invalid_argument("hypergraph: vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("hypergraph: duplicate hyperedge");
  }
  edges_ = std::move(edges);
  incident_.assign(static_cast<std::size_t>(n), {});
  adjacency_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    const auto& e = edges_[i];
    for (int v : e) incident_[v].push_back(i);
    for (int a : e) {
      for (int b : e) {
        if (a != b) adjacency_[static_cast<std::size_t>(a) * n + b] = 1;
      }
    }
  }
}

Hypergraph Hypergraph::graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> e;
  e.reserve(edges.size());
  for (auto [a, b] : edges) e.push_back({a, b});
  return Hypergraph(n, 2, std::move(e));
}

Hypergraph Hypergraph::empty(int n, int r) { return Hypergraph(n, r, {}); }

bool Hypergraph::has_edge(std::vector<int> vertices) const { return edge_index(std::move(vertices)) >= 0; }

int Hypergraph::edge_index(std::vector<int> vertices) const {
  if (static_cast<int>(vertices.size()) != r_) return -1;
  std::sort(vertices.begin(), vertices.end());
  auto it = std::lower_bound(edges_.begin(), edges_.end(), vertices);
  if (it == edges_.end() || *it != vertices) return -1;
  return static_cast<int>(it - edges_.begin());
}

int Hypergraph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<int> Hypergraph::neighbors(int v) const {
  std::vector<int> out;
  for (int u = 0; u < n_; ++u) {
    if (adjacent(v, u)) out.push_back(u);
  }
  return out;
}

std::string Hypergraph::key() const {
  std::ostringstream os;
  os << "H" << r_ << ":" << n_ << ":";
  for (const auto& e : edges_) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "." : "") << e[i];
    os << ";";
  }
  return os.str();
}

Hypergraph make_path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Hypergraph::graph(n, e);
}

Hypergraph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Hypergraph::graph(n, e);
}

Hypergraph make_complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Hypergraph::graph(n, e);
}

// ---------------------------------------------------------------------------
// MetricSpace, EquivStructure, VectorSpace

MetricSpace::MetricSpace(int n, std::vector<double> dist) : n_(n), dist_(std::move(dist)) {
  if (n < 0 || dist_.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("metric: distance matrix must be n x n");
  }
}

std::string MetricSpace::key() const {
  std::ostringstream os;
  os.precision(17);
  os << "M:" << n_ << ":";
  for (double d : dist_) os << d << ",";
  return os.str();
}

EquivStructure::EquivStructure(std::vector<int> class_of) {
  std::vector<std::pair<int, int>> seen;
  class_of_.reserve(class_of.size());
  for (int c : class_of) {
    auto it = std::find_if(seen.begin(), seen.end(), [c](auto p) { return p.first == c; });
    if (it == seen.end()) {
      seen.emplace_back(c, static_cast<int>(seen.size()));
      class_of_.push_back(seen.back().second);
    } else {
      class_of_.push_back(it->second);
    }
  }
}

EquivStructure EquivStructure::from_class_sizes(const std::vector<int>& sizes) {
  std::vector<int> labels;
  for (int c = 0; c < static_cast<int>(sizes.size()); ++c) {
    if (sizes[c] <= 0) throw std::invalid_argument("equivalence: class sizes must be positive");
    labels.insert(labels.end(), static_cast<std::size_t>(sizes[c]), c);
  }
  return EquivStructure(std::move(labels));
}

std::vector<std::vector<int>> EquivStructure::classes() const {
  std::vector<std::vector<int>> out;
  for (int x = 0; x < size(); ++x) {
    if (class_of_[x] >= static_cast<int>(out.size())) out.resize(static_cast<std::size_t>(class_of_[x]) + 1);
    out[class_of_[x]].push_back(x);
  }
  return out;
}

std::string EquivStructure::key() const {
  std::ostringstream os;
  os << "E:";
  for (int c : class_of_) os << c << ",";
  return os.str();
}

VectorSpace::VectorSpace(int q, int d) : q_(q), d_(d) {
  if (!is_prime(q)) throw std::invalid_argument("vector space: field size must be prime");
  if (d < 0) throw std::invalid_argument("vector space: negative dimension");
  long long size = 1;
  for (int i = 0; i < d; ++i) {
    size *= q;
    if (size > 1'000'000) throw std::invalid_argument("vector space: q^d exceeds 10^6");
  }
  size_ = static_cast<int>(size);
}

std::vector<int> VectorSpace::coords(int index) const {
  std::vector<int> c(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) {
    c[j] = index % q_;
    index /= q_;
  }
  return c;
}

int VectorSpace::index(std::span<const int> coords) const {
  int idx = 0;
  for (int j = d_ - 1; j >= 0; --j) idx = idx * q_ + ((coords[j] % q_) + q_) % q_;
  return idx;
}

int VectorSpace::add(int a, int b) const {
  auto ca = coords(a), cb = coords(b);
  for (int j = 0; j < d_; ++j) ca[j] = (ca[j] + cb[j]) % q_;
  return index(ca);
}

int VectorSpace::scale(int c, int a) const {
  auto ca = coords(a);
  for (int j = 0; j < d_; ++j) ca[j] = (((c % q_) + q_) % q_) * ca[j] % q_;
  return index(ca);
}

int VectorSpace::combine(std::span<const int> coeffs, std::span<const int> vectors) const {
  std::vector<int> acc(static_cast<std::size_t>(d_), 0);
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    auto cv = coords(vectors[k]);
    for (int j = 0; j < d_; ++j) acc[j] = (acc[j] + coeffs[k] * cv[j]) % q_;
  }
  return index(acc);
}

int VectorSpace::rank_of(std::span<const int> vectors) const {
  std::vector<std::vector<int>> rows;
  for (int v : vectors) rows.push_back(coords(v));
  return static_cast<int>(echelon_basis(std::move(rows), q_, d_).size());
}

std::vector<int> VectorSpace::span_of(std::span<const int> vectors) const {
  std::vector<std::vector<int>> rows;
  for (int v : vectors) rows.push_back(coords(v));
  auto basis_rows = echelon_basis(std::move(rows), q_, d_);
  std::vector<int> basis;
  for (auto& row : basis_rows) basis.push_back(index(row));
  VectorSpace local(q_, static_cast<int>(basis.size()));
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(local.size()));
  for (int i = 0; i < local.size(); ++i) out.push_back(combine(local.coords(i), basis));
  std::sort(out.begin(), out.end());
  return out;
}

std::string VectorSpace::key() const { return "V:" + std::to_string(q_) + ":" + std::to_string(d_); }

int universe_size(const Structure& s) {
  return std::visit([](const auto& x) { return x.size(); }, s);
}

std::string kind_name(const Structure& s) {
  struct {
    std::string operator()(const Hypergraph& g) const { return g.is_graph() ? "graph" : "hypergraph"; }
    std::string operator()(const MetricSpace&) const { return "metric"; }
    std::string operator()(const EquivStructure&) const { return "equivalence"; }
    std::string operator()(const VectorSpace&) const { return "vector"; }
  } v;
  return std::visit(v, s);
}

std::string structure_key(const Structure& s) {
  return std::visit([](const auto& x) { return x.key(); }, s);
}

// ---------------------------------------------------------------------------
// Substructures and relabeling

std::pair<Hypergraph, std::vector<int>> induced_substructure(const Hypergraph& g, std::span<const int> subset) {
  std::vector<int> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("induced_substructure: repeated vertex");
  }
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= g.size())) {
    throw std::out_of_range("induced_substructure: vertex out of range");
  }
  std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) local[sorted[i]] = i;
  std::vector<std::vector<int>> edges;
  for (const auto& e : g.edges()) {
    bool inside = std::all_of(e.begin(), e.end(), [&](int v) { return local[v] >= 0; });
    if (!inside) continue;
    std::vector<int> le;
    for (int v : e) le.push_back(local[v]);
    edges.push_back(std::move(le));
  }
  return {Hypergraph(static_cast<int>(sorted.size()), g.uniformity(), std::move(edges)), sorted};
}

Substructure induced_substructure(const Structure& s, std::span<const int> subset) {
  const int n = universe_size(s);
  std::vector<int> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("induced_substructure: repeated element");
  }
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= n)) {
    throw std::out_of_range("induced_substructure: element out of range");
  }
  const int k = static_cast<int>(sorted.size());
  struct {
    const std::vector<int>& sorted;
    int k;
    Substructure operator()(const Hypergraph& g) const {
      auto [h, map] = induced_substructure(g, sorted);
      return {h, map};
    }
    Substructure operator()(const MetricSpace& m) const {
      std::vector<double> d(static_cast<std::size_t>(k) * k);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) d[static_cast<std::size_t>(i) * k + j] = m(sorted[i], sorted[j]);
      }
      return {MetricSpace(k, std::move(d)), sorted};
    }
    Substructure operator()(const EquivStructure& e) const {
      std::vector<int> labels;
      for (int x : sorted) labels.push_back(e.class_of(x));
      return {EquivStructure(std::move(labels)), sorted};
    }
    Substructure operator()(const VectorSpace& v) const {
      if (v.span_of(sorted) != sorted) {
        throw std::invalid_argument("induced_substructure: subset is not a linear subspace");
      }
      std::vector<std::vector<int>> rows;
      for (int x : sorted) rows.push_back(v.coords(x));
      auto basis_rows = echelon_basis(std::move(rows), v.field_size(), v.dimension());
      std::vector<int> basis;
      // Least significant local coordinate gets the basis vector with the lowest pivot.
      for (auto it = basis_rows.rbegin(); it != basis_rows.rend(); ++it) basis.push_back(v.index(*it));
      VectorSpace local(v.field_size(), static_cast<int>(basis.size()));
      std::vector<int> to_parent;
      for (int i = 0; i < local.size(); ++i) to_parent.push_back(v.combine(local.coords(i), basis));
      return {local, to_parent};
    }
  } visitor{sorted, k};
  return std::visit(visitor, s);
}

Structure relabel(const Structure& s, std::span<const int> phi) {
  const int n = universe_size(s);
  if (static_cast<int>(phi.size()) != n) throw std::invalid_argument("relabel: map has wrong length");
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int x : phi) {
    if (x < 0 || x >= n || hit[x]) throw std::invalid_argument("relabel: map is not a bijection");
    hit[x] = 1;
  }
  struct {
    std::span<const int> phi;
    int n;
    Structure operator()(const Hypergraph& g) const {
      std::vector<std::vector<int>> edges;
      for (const auto& e : g.edges()) {
        std::vector<int> img;
        for (int v : e) img.push_back(phi[v]);
        edges.push_back(std::move(img));
      }
      return Hypergraph(n, g.uniformity(), std::move(edges));
    }
    Structure operator()(const MetricSpace& m) const {
      std::vector<double> d(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(phi[i]) * n + phi[j]] = m(i, j);
      }
      return MetricSpace(n, std::move(d));
    }
    Structure operator()(const EquivStructure& e) const {
      std::vector<int> labels(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) labels[phi[x]] = e.class_of(x);
      return EquivStructure(std::move(labels));
    }
    Structure operator()(const VectorSpace& v) const {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (phi[v.add(a, b)] != v.add(phi[a], phi[b])) throw std::invalid_argument("relabel: map is not linear");
        }
        for (int c = 0; c < v.field_size(); ++c) {
          if (phi[v.scale(c, a)] != v.scale(c, phi[a])) throw std::invalid_argument("relabel: map is not linear");
        }
      }
      return v;
    }
  } visitor{phi, n};
  return std::visit(visitor, s);
}

// ---------------------------------------------------------------------------
// Embedding enumeration: plain backtracking with degree/neighbourhood pruning.

namespace {

struct Signature {
  int degree = 0;
  std::vector<int> neighbor_degrees;
  friend bool operator==(const Signature&, const Signature&) = default;
};

std::vector<Signature> signatures(const Hypergraph& g) {
  std::vector<Signature> sig(static_cast<std::size_t>(g.size()));
  for (int v = 0; v < g.size(); ++v) {
    sig[v].degree = g.degree(v);
    for (int u : g.neighbors(v)) sig[v].neighbor_degrees.push_back(g.degree(u));
    std::sort(sig[v].neighbor_degrees.begin(), sig[v].neighbor_degrees.end());
  }
  return sig;
}

class Backtracker {
 public:
  using Unary = std::function<bool(int, int)>;
  using Binary = std::function<bool(const std::vector<int>&, int, int)>;

  Backtracker(int pattern_size, int host_size, Unary unary, Binary consistent)
      : k_(pattern_size), n_(host_size), unary_(std::move(unary)), consistent_(std::move(consistent)) {}

  std::vector<Embedding> run() {
    std::vector<Embedding> out;
    if (k_ > n_) return out;
    std::vector<int> map;
    std::vector<char> used(static_cast<std::size_t>(n_), 0);
    extend(map, used, out);
    return out;
  }

 private:
  void extend(std::vector<int>& map, std::vector<char>& used, std::vector<Embedding>& out) {
    const int i = static_cast<int>(map.size());
    if (i == k_) {
      out.push_back({map});
      return;
    }
    for (int g = 0; g < n_; ++g) {
      if (used[g] || !unary_(i, g) || !consistent_(map, i, g)) continue;
      used[g] = 1;
      map.push_back(g);
      extend(map, used, out);
      map.pop_back();
      used[g] = 0;
    }
  }

  int k_, n_;
  Unary unary_;
  Binary consistent_;
};

std::vector<Embedding> hypergraph_embeddings(const Hypergraph& h, const Hypergraph& g) {
  if (h.uniformity() != g.uniformity()) throw std::invalid_argument("embeddings: uniformity mismatch");
  const int r = h.uniformity();
  const bool same_size = h.size() == g.size();
  std::vector<Signature> sh, sg;
  if (same_size) {
    sh = signatures(h);
    sg = signatures(g);
  }
  auto unary = [&](int x, int y) {
    if (same_size) return sh[x] == sg[y];
    return h.degree(x) <= g.degree(y);
  };
  auto consistent = [&](const std::vector<int>& map, int i, int y) {
    if (r == 2) {
      for (int j = 0; j < i; ++j) {
        if (h.adjacent(j, i) != g.adjacent(map[j], y)) return false;
      }
      return true;
    }
    bool ok = true;
    for_each_combination(i, r - 1, [&](const std::vector<int>& idx) {
      if (!ok) return;
      std::vector<int> eh(idx.begin(), idx.end());
      eh.push_back(i);
      std::vector<int> eg;
      for (int j : idx) eg.push_back(map[j]);
      eg.push_back(y);
      if (h.has_edge(eh) != g.has_edge(eg)) ok = false;
    });
    return ok;
  };
  return Backtracker(h.size(), g.size(), unary, consistent).run();
}

std::vector<Embedding> metric_embeddings(const MetricSpace& h, const MetricSpace& g) {
  auto unary = [](int, int) { return true; };
  auto consistent = [&](const std::vector<int>& map, int i, int y) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(h(j, i) - g(map[j], y)) > 1e-9) return false;
    }
    return true;
  };
  return Backtracker(h.size(), g.size(), unary, consistent).run();
}

std::vector<Embedding> equiv_embeddings(const EquivStructure& h, const EquivStructure& g) {
  auto unary = [](int, int) { return true; };
  auto consistent = [&](const std::vector<int>& map, int i, int y) {
    for (int j = 0; j < i; ++j) {
      if (h.same_class(j, i) != g.same_class(map[j], y)) return false;
    }
    return true;
  };
  return Backtracker(h.size(), g.size(), unary, consistent).run();
}

// Injective linear maps: images of the standard basis must be independent.
std::vector<Embedding> vector_embeddings(const VectorSpace& h, const VectorSpace& g) {
  if (h.field_size() != g.field_size()) throw std::invalid_argument("embeddings: field mismatch");
  std::vector<Embedding> out;
  if (h.dimension() > g.dimension()) return out;
  std::vector<int> images;
  std::function<void()> extend = [&] {
    if (static_cast<int>(images.size()) == h.dimension()) {
      Embedding e;
      e.map.resize(static_cast<std::size_t>(h.size()));
      for (int i = 0; i < h.size(); ++i) e.map[i] = g.combine(h.coords(i), images);
      out.push_back(std::move(e));
      return;
    }
    for (int v = 1; v < g.size(); ++v) {
      images.push_back(v);
      if (g.rank_of(images) == static_cast<int>(images.size())) extend();
      images.pop_back();
    }
  };
  extend();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Embedding> enumerate_embeddings(const Structure& pattern, const Structure& host) {
  if (pattern.index() != host.index()) throw std::invalid_argument("embeddings: structure kind mismatch");
  switch (pattern.index()) {
    case 0: return hypergraph_embeddings(std::get<Hypergraph>(pattern), std::get<Hypergraph>(host));
    case 1: return metric_embeddings(std::get<MetricSpace>(pattern), std::get<MetricSpace>(host));
    case 2: return equiv_embeddings(std::get<EquivStructure>(pattern), std::get<EquivStructure>(host));
    default: return vector_embeddings(std::get<VectorSpace>(pattern), std::get<VectorSpace>(host));
  }
}

std::size_t count_embeddings(const Structure& pattern, const Structure& host) {
  return enumerate_embeddings(pattern, host).size();
}

std::vector<Embedding> automorphisms(const Structure& s) { return enumerate_embeddings(s, s); }

bool is_isomorphic(const Structure& a, const Structure& b) {
  if (a.index() != b.index() || universe_size(a) != universe_size(b)) return false;
  if (a.index() == 0 &&
      std::get<Hypergraph>(a).uniformity() != std::get<Hypergraph>(b).uniformity()) {
    return false;
  }
  if (a.index() == 3) return std::get<VectorSpace>(a) == std::get<VectorSpace>(b);
  return !enumerate_embeddings(a, b).empty();
}

// ---------------------------------------------------------------------------
// Girth: breadth-first search over (vertex, hyperedge used to arrive) states.

std::optional<int> hypergraph_girth(const Hypergraph& g, int cap) {
  if (cap < 2) throw std::invalid_argument("girth: cap must be at least 2");
  const int n = g.size();
  const int m = static_cast<int>(g.edge_count());
  int best = cap;
  std::vector<int> dist(static_cast<std::size_t>(n) * std::max(m, 1));
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<std::pair<int, int>> queue;
    for (int e : g.incident_edges(s)) {
      for (int x : g.edges()[e]) {
        if (x == s) continue;
        dist[static_cast<std::size_t>(x) * m + e] = 1;
        queue.emplace_back(x, e);
      }
    }
    while (!queue.empty()) {
      auto [v, e] = queue.front();
      queue.pop_front();
      int d = dist[static_cast<std::size_t>(v) * m + e];
      if (d + 1 >= best) break;
      for (int e2 : g.incident_edges(v)) {
        if (e2 == e) continue;
        for (int x : g.edges()[e2]) {
          if (x == v) continue;
          if (x == s) {
            best = std::min(best, d + 1);
            continue;
          }
          auto& slot = dist[static_cast<std::size_t>(x) * m + e2];
          if (slot < 0) {
            slot = d + 1;
            queue.emplace_back(x, e2);
          }
        }
      }
    }
  }
  if (best < cap) return best;
  return std::nullopt;
}

std::vector<bool> edges_on_short_cycles(const Hypergraph& graph, int g) {
  const int m = static_cast<int>(graph.edge_count());
  const int n = graph.size();
  std::vector<bool> flagged(static_cast<std::size_t>(m), false);
  if (g <= 2) return flagged;
  std::vector<int> dist(static_cast<std::size_t>(n) * std::max(m, 1));
  for (int e = 0; e < m; ++e) {
    const auto& verts = graph.edges()[e];
    for (std::size_t a = 0; a < verts.size() && !flagged[e]; ++a) {
      for (std::size_t b = a + 1; b < verts.size() && !flagged[e]; ++b) {
        // Cycle u, e, v, ..., u: a walk from v back to u of length <= g - 2 that
        // neither starts nor ends with e.
        const int u = verts[a], v = verts[b];
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<std::pair<int, int>> queue;
        for (int e2 : graph.incident_edges(v)) {
          if (e2 == e) continue;
          for (int x : graph.edges()[e2]) {
            if (x == v) continue;
            if (x == u) {
              flagged[e] = true;
              break;
            }
            dist[static_cast<std::size_t>(x) * m + e2] = 1;
            queue.emplace_back(x, e2);
          }
          if (flagged[e]) break;
        }
        while (!queue.empty() && !flagged[e]) {
          auto [x, ex] = queue.front();
          queue.pop_front();
          int d = dist[static_cast<std::size_t>(x) * m + ex];
          if (d + 1 > g - 2) break;
          for (int e2 : graph.incident_edges(x)) {
            if (e2 == ex) continue;
            for (int y : graph.edges()[e2]) {
              if (y == x) continue;
              if (y == u && e2 != e) {
                flagged[e] = true;
                break;
              }
              auto& slot = dist[static_cast<std::size_t>(y) * m + e2];
              if (slot < 0) {
                slot = d + 1;
                queue.emplace_back(y, e2);
              }
            }
            if (flagged[e]) break;
          }
        }
      }
    }
  }
  return flagged;
}

// ---------------------------------------------------------------------------
// Connectivity, cutpoints, cycle space.

std::vector<int> connected_components(const Hypergraph& g) {
  const int n = g.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> queue{s};
    comp[s] = next;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int e : g.incident_edges(v)) {
        for (int x : g.edges()[e]) {
          if (comp[x] < 0) {
            comp[x] = next;
            queue.push_back(x);
          }
        }
      }
    }
    ++next;
  }
  return comp;
}

bool is_connected(const Hypergraph& g) {
  auto comp = connected_components(g);
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

bool has_cutpoint(const Hypergraph& g) {
  const int n = g.size();
  if (n < 3) return false;
  const auto whole = connected_components(g);
  const int base = *std::max_element(whole.begin(), whole.end()) + 1;
  for (int v = 0; v < n; ++v) {
    std::vector<int> rest;
    for (int u = 0; u < n; ++u) {
      if (u != v) rest.push_back(u);
    }
    auto [sub, map] = induced_substructure(g, rest);
    auto comp = connected_components(sub);
    int count = *std::max_element(comp.begin(), comp.end()) + 1;
    // Removing an isolated vertex lowers the count; any increase means a cutpoint.
    if (count > base - (g.degree(v) == 0 ? 1 : 0)) return true;
  }
  return false;
}

bool is_bipartite(const Hypergraph& g) {
  if (!g.is_graph()) throw std::invalid_argument("is_bipartite: graphs only");
  std::vector<int> color(static_cast<std::size_t>(g.size()), -1);
  for (int s = 0; s < g.size(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int u : g.neighbors(v)) {
        if (color[u] < 0) {
          color[u] = 1 - color[v];
          queue.push_back(u);
        } else if (color[u] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

int cycle_space_dimension(const Hypergraph& g) {
  if (!g.is_graph()) throw std::invalid_argument("cycle space: graphs only");
  auto comp = connected_components(g);
  int components = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  return static_cast<int>(g.edge_count()) - g.size() + components;
}

std::vector<std::vector<int>> simple_cycles(const Hypergraph& g, int max_length) {
  if (!g.is_graph()) throw std::invalid_argument("simple cycles: graphs only");
  std::vector<std::vector<int>> cycles;
  const int n = g.size();
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::function<void(int)> dfs = [&](int s) {
    const int v = path.back();
    for (int u : g.neighbors(v)) {
      if (u == s && path.size() >= 3 && path[1] < path.back()) {
        std::vector<int> edges;
        for (std::size_t i = 0; i < path.size(); ++i) {
          edges.push_back(g.edge_index({path[i], path[(i + 1) % path.size()]}));
        }
        std::sort(edges.begin(), edges.end());
        cycles.push_back(std::move(edges));
        continue;
      }
      if (u <= s || on_path[u] || static_cast<int>(path.size()) + 1 >= max_length) continue;
      on_path[u] = 1;
      path.push_back(u);
      dfs(s);
      path.pop_back();
      on_path[u] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(s);
    on_path[s] = 0;
  }
  return cycles;
}

bool is_g_small(const Hypergraph& k, int g) {
  if (!k.is_graph()) throw std::invalid_argument("g-smallness is defined for graphs");
  if (k.size() < 2 || !is_connected(k) || has_cutpoint(k)) return false;
  const int dim = cycle_space_dimension(k);
  // A cycle-free graph (only K_2 survives the checks above) is not g-small.
  if (dim == 0) return false;
  const auto m = k.edge_count();
  std::vector<boost::dynamic_bitset<>> basis;  // reduced rows, pivot = lowest set bit
  for (const auto& cycle : simple_cycles(k, g)) {
    boost::dynamic_bitset<> row(m);
    for (int e : cycle) row.set(static_cast<std::size_t>(e));
    for (const auto& b : basis) {
      if (row.test(b.find_first())) row ^= b;
    }
    if (row.none()) continue;
    for (auto& b : basis) {
      if (b.test(row.find_first())) b ^= row;
    }
    basis.push_back(std::move(row));
    if (static_cast<int>(basis.size()) == dim) return true;
  }
  return static_cast<int>(basis.size()) == dim;
}

bool check_metric(const MetricSpace& m, double tol) {
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    if (std::abs(m(i, i)) > tol) return false;
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(m(i, j))) return false;
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
      if (i != j && m(i, j) <= tol) return false;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (m(i, k) > m(i, j) + m(j, k) + tol) return false;
      }
    }
  }
  return true;
}

}  // namespace ordlab
