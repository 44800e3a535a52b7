#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ordlab {

/// r-uniform hypergraph on vertices 0..n-1. Graphs are the case r = 2.
/// Hyperedges are stored sorted, and the edge list is kept in lexicographic order.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(int n, int r, std::vector<std::vector<int>> edges);

  static Hypergraph graph(int n, const std::vector<std::pair<int, int>>& edges);
  static Hypergraph empty(int n, int r = 2);

  int size() const { return n_; }
  int uniformity() const { return r_; }
  bool is_graph() const { return r_ == 2; }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Vertex order of the argument is irrelevant.
  bool has_edge(std::vector<int> vertices) const;
  /// Index into edges(), or -1.
  int edge_index(std::vector<int> vertices) const;
  /// True when u and v lie in a common hyperedge.
  bool adjacent(int u, int v) const { return adjacency_[static_cast<std::size_t>(u) * n_ + v] != 0; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }
  int max_degree() const;
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }
  std::vector<int> neighbors(int v) const;

  std::string key() const;
  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  int r_ = 2;
  std::vector<std::vector<int>> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<char> adjacency_;
};

Hypergraph make_path(int n);
Hypergraph make_cycle(int n);
Hypergraph make_complete(int n);

/// Finite metric space as a dense symmetric distance matrix.
class MetricSpace {
 public:
  MetricSpace() = default;
  /// `dist` is row-major n x n. Only the shape is validated here; see check_metric.
  MetricSpace(int n, std::vector<double> dist);

  int size() const { return n_; }
  double operator()(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return dist_; }
  std::string key() const;
  friend bool operator==(const MetricSpace&, const MetricSpace&) = default;

 private:
  int n_ = 0;
  std::vector<double> dist_;
};

/// Equivalence relation on 0..n-1 given by a class label per element.
class EquivStructure {
 public:
  EquivStructure() = default;
  explicit EquivStructure(std::vector<int> class_of);

  /// Classes of the given sizes, filled in element order.
  static EquivStructure from_class_sizes(const std::vector<int>& sizes);

  int size() const { return static_cast<int>(class_of_.size()); }
  int class_of(int x) const { return class_of_[x]; }
  bool same_class(int x, int y) const { return class_of_[x] == class_of_[y]; }
  /// Elements of each class, classes in order of first appearance.
  std::vector<std::vector<int>> classes() const;
  std::string key() const;
  friend bool operator==(const EquivStructure& a, const EquivStructure& b) { return a.class_of_ == b.class_of_; }

 private:
  std::vector<int> class_of_;  // normalized: labels 0,1,... in order of first appearance
};

/// F_q^d for prime q. Element i has coordinate j equal to the j-th base-q digit of i.
class VectorSpace {
 public:
  VectorSpace() = default;
  VectorSpace(int q, int d);

  int field_size() const { return q_; }
  int dimension() const { return d_; }
  int size() const { return size_; }

  std::vector<int> coords(int index) const;
  int index(std::span<const int> coords) const;
  int add(int a, int b) const;
  int scale(int c, int a) const;
  /// Linear combination sum_j coeffs[j] * vectors[j].
  int combine(std::span<const int> coeffs, std::span<const int> vectors) const;
  /// Indices of span(vectors), ascending.
  std::vector<int> span_of(std::span<const int> vectors) const;
  int rank_of(std::span<const int> vectors) const;

  std::string key() const;
  friend bool operator==(const VectorSpace&, const VectorSpace&) = default;

 private:
  int q_ = 2;
  int d_ = 0;
  int size_ = 1;
};

using Structure = std::variant<Hypergraph, MetricSpace, EquivStructure, VectorSpace>;

int universe_size(const Structure& s);
std::string kind_name(const Structure& s);
std::string structure_key(const Structure& s);

/// Injective map from the universe of a pattern into the universe of a host.
struct Embedding {
  std::vector<int> map;
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

struct Substructure {
  Structure structure;
  std::vector<int> to_parent;  // local element i is to_parent[i] in the parent
};

/// Induced substructure on `subset` (any order, no duplicates). Hypergraph and
/// equivalence substructures keep the subset's ascending order; metric likewise.
/// For vector spaces the subset must be a linear subspace and local coordinates
/// are taken with respect to its reduced echelon basis.
Substructure induced_substructure(const Structure& s, std::span<const int> subset);
std::pair<Hypergraph, std::vector<int>> induced_substructure(const Hypergraph& g, std::span<const int> subset);

/// Image of a structure under a bijection phi of its universe: R(phi x, ...) iff R(x, ...).
/// Vector spaces only accept linear bijections (the image is the same space).
Structure relabel(const Structure& s, std::span<const int> phi);

/// All induced embeddings of `pattern` into `host`, lexicographic in the map.
std::vector<Embedding> enumerate_embeddings(const Structure& pattern, const Structure& host);
std::size_t count_embeddings(const Structure& pattern, const Structure& host);
std::vector<Embedding> automorphisms(const Structure& s);
bool is_isomorphic(const Structure& a, const Structure& b);

/// Minimal cycle length below `cap`, or nullopt meaning "girth >= cap".
std::optional<int> hypergraph_girth(const Hypergraph& g, int cap);
/// Flags each hyperedge that lies on a cycle of length < g (consecutive hyperedges
/// distinct, closing hyperedge distinct from the first).
std::vector<bool> edges_on_short_cycles(const Hypergraph& graph, int g);

/// Component id per vertex, ids assigned in order of the smallest vertex.
std::vector<int> connected_components(const Hypergraph& g);
bool is_connected(const Hypergraph& g);
bool has_cutpoint(const Hypergraph& g);
bool is_bipartite(const Hypergraph& g);
int cycle_space_dimension(const Hypergraph& g);
/// Simple cycles of length < max_length, each as the list of its edge indices.
std::vector<std::vector<int>> simple_cycles(const Hypergraph& g, int max_length);
bool is_g_small(const Hypergraph& k, int g);

bool check_metric(const MetricSpace& m, double tol = 1e-9);

}  // namespace ordlab
