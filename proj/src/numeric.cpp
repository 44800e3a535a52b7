#include "ordlab/numeric.hpp"

#include <gsl/gsl_cdf.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ordlab {

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Quantile for p in (0, 0.5]: Acklam's rational approximation, then one Newton step.
double lower_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  return x - (normal_cdf(x) - p) / normal_pdf(x);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  return p <= 0.5 ? lower_quantile(p) : -lower_quantile(1.0 - p);
}

double normal_quantile(double p, double complement) {
  if (!(p > 0.0 && complement > 0.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  return p <= complement ? lower_quantile(p) : -lower_quantile(complement);
}

namespace {

struct QuadratureTable {
  gsl_integration_glfixed_table* table;
  QuadratureTable() : table(gsl_integration_glfixed_table_alloc(200)) {}
  ~QuadratureTable() { gsl_integration_glfixed_table_free(table); }
};

}  // namespace

double path3_order_probability(double eps) {
  static const QuadratureTable quad;
  const double s = 1.0 - eps;
  gsl_function f;
  f.function = [](double z, void* param) {
    const double t = *static_cast<double*>(param) * z;
    return normal_pdf(z) * normal_cdf(t) * normal_cdf(-t);
  };
  double param = s;
  f.params = &param;
  return gsl_integration_glfixed(&f, -8.0, 8.0, quad.table);
}

double path3_gaussian_probability(int D) {
  if (D < 2) throw std::invalid_argument("path3_gaussian_probability: D must be at least 2");
  return path3_order_probability(1.0 - std::sqrt(1.0 - 2.0 / D));
}

double ks_statistic_normal(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic_normal: empty sample");
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double cdf = normal_cdf(xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  // Kolmogorov limit law with the usual small-sample correction of the argument.
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double chi_square_pvalue(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_pvalue: dof must be positive");
  return gsl_cdf_chisq_Q(statistic, dof);
}

double chi_square_uniform_statistic(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw std::invalid_argument("chi-square: no cells");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  if (expected <= 0.0) throw std::invalid_argument("chi-square: no observations");
  double stat = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace ordlab
