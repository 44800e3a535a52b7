#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace ordlab {

double normal_pdf(double x);
double normal_cdf(double x);
/// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);
/// Same, with 1 - p supplied by the caller when it is known more accurately than 1 - p in floating point.
double normal_quantile(double p, double complement);

/// P[Z1 < (1 - eps) Z2 < Z3] for iid standard normals, by fixed 200-node
/// Gauss-Legendre quadrature on [-8, 8].
double path3_order_probability(double eps);

/// Probability of 0 < 1 < 2 under the Gaussian ordering of the path 0-1-2
/// with degree cap D >= 2. The middle noise has variance D - 2 against D at
/// the ends, so the scale is sqrt(1 - 2/D): this is f(1 - sqrt(1 - 2/D)).
double path3_gaussian_probability(int D);

/// One-sample Kolmogorov-Smirnov statistic against the standard normal.
double ks_statistic_normal(std::span<const double> sample);
/// Asymptotic p-value for statistic d on n observations.
double ks_pvalue(double d, std::size_t n);

/// Upper tail of the chi-square distribution.
double chi_square_pvalue(double statistic, int dof);
/// Pearson statistic of observed counts against equal expected counts.
double chi_square_uniform_statistic(std::span<const std::uint64_t> counts);

/// Wilson score interval for k hits in n trials at normal quantile z.
struct Interval {
  double low = 0.0;
  double high = 0.0;
};
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z);

}  // namespace ordlab
