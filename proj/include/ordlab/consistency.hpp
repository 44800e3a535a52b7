#pragma once

#include "ordlab/orders.hpp"
#include "ordlab/structures.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ordlab {

enum class StructureKind { graph, hypergraph3, equivalence, vector_space };

StructureKind parse_structure_kind(std::string_view name);
std::string to_string(StructureKind kind);

/// Every labeled structure of the kind with 1..n_max elements. Vector spaces
/// are F_q^d with q^d <= n_max (including the zero space).
std::vector<Structure> enumerate_structures(StructureKind kind, int n_max);

/// Exact assignment structure -> distribution over its orders.
struct OrderingFamily {
  std::string name;
  int size_bound = 0;
  std::function<OrderDistribution(const Structure&)> assign;
};

/// Sampler access for families only known through draws.
struct OrderSampler {
  std::string name;
  int size_bound = 0;
  std::function<LinearOrder(const Structure&, Rng&)> draw;
};

OrderingFamily uniform_family(int size_bound = kMaxExactOrderSize);
/// Orders by ascending degree, ties broken uniformly. Not consistent.
OrderingFamily degree_sorted_family(int size_bound = kMaxExactOrderSize);

struct ConsistencyViolation {
  enum class Property { isomorphism, restriction };
  Property property = Property::isomorphism;
  std::string structure;      // key of the structure G
  std::string other;          // key of phi(G), or of G restricted to the subset
  std::vector<int> witness;   // phi, or the subset
  double discrepancy = 0.0;   // total variation between the two sides
};

struct ConsistencyReport {
  std::string family;
  std::string kind;
  std::string mode;
  int n_max = 0;
  std::size_t structures = 0;
  std::size_t isomorphism_classes = 0;
  std::size_t isomorphism_checks = 0;
  std::size_t restriction_checks = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<ConsistencyViolation> violations;

  bool passed() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

/// Two-sample acceptance threshold for empirical TV on orders of n elements.
double statistical_tv_threshold(int n, std::uint64_t samples, double delta = 0.01);

/// Exact check of isomorphism invariance and restriction compatibility over
/// all labeled structures up to n_max (<= 5) elements.
ConsistencyReport check_consistency(const OrderingFamily& family, StructureKind kind, int n_max, int workers);

/// Statistical version: each labeled structure gets `samples` draws and both
/// properties are tested by two-sample total variation.
ConsistencyReport check_consistency(const OrderSampler& sampler, StructureKind kind, int n_max, std::uint64_t samples,
                                    std::uint64_t seed, int workers, double delta = 0.01);

}  // namespace ordlab
