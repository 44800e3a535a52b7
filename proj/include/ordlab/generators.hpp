#pragma once

#include "ordlab/rational.hpp"
#include "ordlab/rng.hpp"
#include "ordlab/structure_io.hpp"
#include "ordlab/structures.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ordlab {

/// Every r-subset becomes a hyperedge independently with probability p.
Hypergraph random_hypergraph(int n, int r, double p, Rng& rng);
Hypergraph random_hypergraph(int n, int r, double p, std::uint64_t seed);

struct GirthParams {
  int n = 0;
  int r = 2;
  int g = 3;
  double a = 0.5;

  void validate() const;
  /// a / n^(r - (g-1)/(g-2)).
  double edge_probability() const;
};

inline constexpr int kGirthRetries = 20;

struct GirthResult {
  Hypergraph graph;
  int attempts = 0;       // draws used, 1-based
  std::size_t drawn_edges = 0;  // hyperedges before deletion in the accepted draw
};

/// Random hypergraph with every hyperedge on a cycle shorter than g deleted.
/// Reseeds (substreams 0, 1, ...) while the result is empty; throws after kGirthRetries.
GirthResult large_girth_hypergraph(const GirthParams& params, std::uint64_t seed);

/// Joins components with new hyperedges, one vertex per component, topping up
/// with fresh vertices when fewer than r components remain.
Hypergraph make_connected(const Hypergraph& g);

struct ForbResult {
  Hypergraph graph;                // union of the planted copies
  Hypergraph host;                 // the k-uniform large-girth hypergraph
  std::vector<std::vector<int>> placements;  // per hyperedge: pattern vertex i -> graph vertex
  std::vector<Embedding> restricted;         // placement composed with each automorphism of the pattern
  std::size_t pattern_automorphisms = 0;
  int attempts = 0;
};

/// Plants a uniformly placed copy of `pattern` (a graph on k >= 3 vertices) on
/// each hyperedge of a k-uniform hypergraph of girth >= g.
ForbResult forb_construction(const Hypergraph& pattern, int n, int g, double a, std::uint64_t seed);

/// Counts of planted placements per class of pattern orders modulo the
/// pattern's automorphisms (k!/|Aut| classes). A placement's order is the host
/// vertex order pulled back to the pattern.
std::vector<std::uint64_t> planted_class_counts(const Hypergraph& pattern,
                                                const std::vector<std::vector<int>>& placements);

/// True when some member of `forbidden` embeds in g as an induced subgraph.
bool contains_induced(const Hypergraph& g, const std::vector<Hypergraph>& forbidden);

struct MetricResult {
  ExactMetric exact;               // all distances, exact
  MetricSpace space;               // same, as doubles
  Hypergraph host;
  std::vector<std::vector<int>> placements;  // per hyperedge: point i -> universe element
  std::vector<Embedding> restricted;
  Rational beta;                   // cap for pairs with no connecting path
  int girth = 3;
  int attempts = 0;
  bool planted_preserved = false;
  bool metric_valid = false;
  bool semigroup_membership = false;
};

/// Glues isometric copies of X along a |X|-uniform hypergraph of girth
/// max(3, spread + 1) and closes up by shortest paths.
MetricResult metric_construction(const ExactMetric& x, int n, double a, std::uint64_t seed);

/// Whether value is a sum of the generators (repetition allowed; 0 is the empty sum).
bool in_additive_semigroup(const Rational& value, const std::vector<Rational>& generators);

}  // namespace ordlab
