#pragma once

#include "ordlab/consistency.hpp"
#include "ordlab/orders.hpp"
#include "ordlab/rng.hpp"
#include "ordlab/structures.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace ordlab {

/// Gaussian degree ordering of a graph: every edge carries an independent
/// standard normal, each vertex is padded with D - deg extra normals, and the
/// vertices are ordered by the sum they see. Requires max degree <= D.
LinearOrder sample_gaussian_ordering(const Hypergraph& g, int D, Rng& rng);
LinearOrder sample_gaussian_ordering(const Hypergraph& g, int D, std::uint64_t seed);

/// Fair coin decides which side of the 2-colouring goes first; each side is
/// shuffled uniformly. Requires a connected bipartite graph.
LinearOrder sample_bipartite_ordering(const Hypergraph& g, Rng& rng);
LinearOrder sample_bipartite_ordering(const Hypergraph& g, std::uint64_t seed);

/// Conditionally negative semidefinite: v^T M v <= 0 whenever sum(v) = 0.
/// Checked as max eigenvalue of P M P <= tol, P the centering projection.
bool is_cnsd(const Eigen::MatrixXd& m, double tol = 1e-9);
double max_centered_eigenvalue(const Eigen::MatrixXd& m);
Eigen::MatrixXd distance_matrix(const MetricSpace& m);

/// d = 1 on edges and D/(D+1) on other distinct pairs.
MetricSpace bounded_degree_metric(const Hypergraph& g, int D);

/// n points, one per row, in R^(n-1).
using PointSet = Eigen::MatrixXd;

/// Classical scaling of d^exponent. Throws std::domain_error when the
/// double-centred Gram matrix has an eigenvalue below -1e-9.
PointSet embed_negative_type(const MetricSpace& m, double exponent);

/// Order by the inner product with a standard normal direction.
LinearOrder sample_projection_ordering(const PointSet& points, Rng& rng);
LinearOrder sample_projection_ordering(const PointSet& points, std::uint64_t seed);

/// Exchangeable standard normals, any r - 1 of them independent:
/// Z_i = Phi^-1(T_i) with T_1..T_r uniform and summing to 0 mod 1.
std::vector<double> sample_exchangeable_block(int r, Rng& rng);
std::vector<double> sample_exchangeable_block(int r, std::uint64_t seed);

/// Hypergraph version of the Gaussian ordering: each hyperedge gets one
/// exchangeable block, assigned to its vertices by a uniform random bijection.
LinearOrder sample_hypergraph_gaussian_ordering(const Hypergraph& g, int D, Rng& rng);
LinearOrder sample_hypergraph_gaussian_ordering(const Hypergraph& g, int D, std::uint64_t seed);

/// Samplers packaged for the statistical consistency checker.
OrderSampler gaussian_sampler(int D);
OrderSampler hypergraph_gaussian_sampler(int D);
OrderSampler uniform_sampler();

}  // namespace ordlab
