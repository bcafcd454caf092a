#include "tailcone/tail_index.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "tailcone/error.hpp"

namespace tailcone {

KappaMoments kappa_moments(std::span<const GroupSummary> summaries) {
  if (summaries.empty()) fail(ErrorKind::input, "no group summaries");
  KappaMoments k;
  k.n = summaries.size();
  double sq = 0.0;
  for (const auto& s : summaries) {
    k.s_n += s.kappa;
    sq += s.kappa * s.kappa;
  }
  const double n = static_cast<double>(k.n);
  k.mean = k.s_n / n;
  k.second_moment = sq / n;
  k.var = std::max(0.0, k.second_moment - k.mean * k.mean);
  return k;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::input, "normal quantile needs p in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double two_sided_z(double level) {
  if (!(level > 0.0 && level < 1.0)) fail(ErrorKind::input, "level must lie in (0, 1)");
  return normal_quantile(0.5 * (1.0 + level));
}

double alpha_standard_error(double alpha_hat, double kappa_var, std::size_t n) {
  const double a1 = alpha_hat + 1.0;
  return a1 * a1 * std::sqrt(kappa_var / static_cast<double>(n));
}

Interval confidence_interval(double alpha_hat, double kappa_var, std::size_t n, double level) {
  if (n < 2) fail(ErrorKind::input, "confidence interval needs n >= 2");
  if (!(kappa_var > 0.0)) fail(ErrorKind::degenerate_variance, "kappa variance is zero");
  const double h = two_sided_z(level) * alpha_standard_error(alpha_hat, kappa_var, n);
  return {alpha_hat - h, alpha_hat + h};
}

AlphaEstimate estimate_alpha(std::span<const GroupSummary> summaries, double level) {
  if (summaries.size() < 2) fail(ErrorKind::input, "estimate needs at least two groups");
  if (!(level > 0.0 && level < 1.0)) fail(ErrorKind::input, "level must lie in (0, 1)");
  const KappaMoments k = kappa_moments(summaries);
  const double n = static_cast<double>(k.n);
  if (k.s_n >= n) {
    fail(ErrorKind::diverging_estimate,
         "every ratio equals 1 (S_n = n); group size too small or no tail decay");
  }
  if (k.s_n <= 0.0) fail(ErrorKind::zero_estimate, "every ratio is 0 (S_n = 0)");

  AlphaEstimate est;
  est.n = k.n;
  est.s_n = k.s_n;
  est.alpha_hat = k.s_n / (n - k.s_n);
  est.kappa_mean = k.mean;
  est.kappa_second_moment = k.second_moment;
  est.kappa_var = k.var;
  est.level = level;
  if (k.var > 0.0) {
    est.se = alpha_standard_error(est.alpha_hat, k.var, k.n);
    est.ci = confidence_interval(est.alpha_hat, k.var, k.n, level);
  } else {
    est.ci_error = std::string(to_string(ErrorKind::degenerate_variance)) + ": kappa variance is zero";
  }
  return est;
}

double studentized_stat(const KappaMoments& k, double alpha_true) {
  if (!(alpha_true > 0.0)) fail(ErrorKind::input, "alpha_true must be positive");
  if (!(k.var > 0.0)) fail(ErrorKind::degenerate_variance, "kappa variance is zero");
  const double target = alpha_true / (alpha_true + 1.0);
  return std::sqrt(static_cast<double>(k.n)) * (k.mean - target) / std::sqrt(k.var);
}

double studentized_stat(std::span<const GroupSummary> summaries, double alpha_true) {
  return studentized_stat(kappa_moments(summaries), alpha_true);
}

void to_json(nlohmann::json& j, const AlphaEstimate& est) {
  j = {{"alpha_hat", est.alpha_hat},
       {"n", est.n},
       {"s_n", est.s_n},
       {"kappa_mean", est.kappa_mean},
       {"kappa_second_moment", est.kappa_second_moment},
       {"kappa_var", est.kappa_var},
       {"level", est.level}};
  j["se"] = est.se ? nlohmann::json(*est.se) : nlohmann::json(nullptr);
  if (est.ci) {
    j["ci"] = {est.ci->lower, est.ci->upper};
    j["ci_lower_negative"] = est.ci_lower_negative();
  } else {
    j["ci"] = nullptr;
    j["ci_error"] = est.ci_error;
  }
}

}  // namespace tailcone
