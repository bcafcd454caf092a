#pragma once

// Limit laws of the group statistics, usable as test oracles, and
// Kolmogorov-Smirnov utilities.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tailcone/grouping.hpp"

namespace tailcone {

// Normalization of group maxima for the product construction: with
// G(x) ~ c1 x^-alpha, m G(b_m x) -> x^-alpha for b_m = (c1 m)^(1/alpha).
struct LimitParams {
  double alpha = 1.0;
  double c1 = 1.0;
  double b_m = 1.0;

  static LimitParams for_group_size(double alpha, double c1, std::size_t m);
};

// P(kappa_inf <= t) = t^alpha, the law of (U)^(1/alpha) for U uniform.
double limit_kappa_cdf(double alpha, double t);

// P(Gamma_k^(-1/alpha) <= x) where Gamma_k is the k-th arrival of a unit
// Poisson process: the regularized upper incomplete gamma Q(k, x^-alpha).
double gamma_limit_cdf(double alpha, std::size_t k, double x);

// n_draws rows of (Gamma_1^(-1/alpha), ..., Gamma_k^(-1/alpha)), row-major.
struct GammaLimitDraws {
  std::size_t k = 0;
  std::vector<double> values;

  std::size_t size() const { return k ? values.size() / k : 0; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * k, k}; }
  std::vector<double> column(std::size_t j) const;
};

// Arrival times Gamma_1 < ... < Gamma_k (partial sums of unit exponentials).
GammaLimitDraws sample_gamma_arrivals(std::size_t k, std::size_t n_draws, std::uint64_t seed);
GammaLimitDraws sample_gamma_limit(double alpha, std::size_t k, std::size_t n_draws,
                                   std::uint64_t seed);

// sup |F_n(x) - F(x)| over the sample.
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);
// sup |F_n(x) - G_m(x)| between two samples.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

// Asymptotic Kolmogorov law P(sqrt(n) D_n <= x).
double kolmogorov_cdf(double x);
// x with kolmogorov_cdf(x) = 1 - significance.
double kolmogorov_quantile(double significance);
// One-sample critical distance at the given significance for n points.
double ks_critical(double significance, std::size_t n);
// Two-sample critical distance for sizes n1, n2.
double ks_critical_two_sample(double significance, std::size_t n1, std::size_t n2);

double standard_normal_cdf(double x);

struct DiagnosticResult {
  std::string test;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
};

void to_json(nlohmann::json& j, const DiagnosticResult& r);

// KS of kappa^alpha against Uniform(0, 1), exact for Pareto norms at any m.
DiagnosticResult kappa_uniformity(std::span<const GroupSummary> summaries, double alpha,
                                  double significance = 0.01);

// KS of the given statistics against N(0, 1).
DiagnosticResult normality(std::string test, std::span<const double> stats,
                           double significance = 0.01);

}  // namespace tailcone
