#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "tailcone/grouping.hpp"

namespace tailcone {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Empirical moments of the group ratios.
struct KappaMoments {
  std::size_t n = 0;
  double s_n = 0.0;
  double mean = 0.0;
  double second_moment = 0.0;
  double var = 0.0;  // second_moment - mean^2, clamped at 0
};

KappaMoments kappa_moments(std::span<const GroupSummary> summaries);

struct AlphaEstimate {
  double alpha_hat = 0.0;
  std::size_t n = 0;
  double s_n = 0.0;
  double kappa_mean = 0.0;
  double kappa_second_moment = 0.0;
  double kappa_var = 0.0;
  double level = 0.95;
  // Absent when the ratios have zero spread; ci_error then says why.
  std::optional<double> se;
  std::optional<Interval> ci;
  std::string ci_error;

  bool ci_lower_negative() const { return ci && ci->lower < 0.0; }
};

// alpha_hat = S_n / (n - S_n), i.e. kappa_mean / (1 - kappa_mean).
AlphaEstimate estimate_alpha(std::span<const GroupSummary> summaries, double level = 0.95);

// sqrt(n) * (kappa_mean - a/(a+1)) / sqrt(kappa_var) for a known tail index a.
double studentized_stat(std::span<const GroupSummary> summaries, double alpha_true);
double studentized_stat(const KappaMoments& moments, double alpha_true);

// Delta-method interval alpha_hat -+ z * (alpha_hat+1)^2 * sqrt(kappa_var / n).
// The lower end is not clamped at zero.
Interval confidence_interval(double alpha_hat, double kappa_var, std::size_t n, double level);

// Standard error (alpha_hat+1)^2 * sqrt(kappa_var / n).
double alpha_standard_error(double alpha_hat, double kappa_var, std::size_t n);

// Quantile of the standard normal law.
double normal_quantile(double p);
// Two-sided critical value z_{(1+level)/2}.
double two_sided_z(double level);

void to_json(nlohmann::json& j, const AlphaEstimate& est);

}  // namespace tailcone
