#include "tailcone/diagnostics.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "tailcone/error.hpp"
#include "tailcone/random.hpp"

namespace tailcone {

LimitParams LimitParams::for_group_size(double alpha, double c1, std::size_t m) {
  if (!(alpha > 0.0) || !(c1 > 0.0) || m < 1) {
    fail(ErrorKind::input, "limit parameters need alpha > 0, c1 > 0, m >= 1");
  }
  return {alpha, c1, std::pow(c1 * static_cast<double>(m), 1.0 / alpha)};
}

double limit_kappa_cdf(double alpha, double t) {
  if (!(alpha > 0.0)) fail(ErrorKind::input, "alpha must be positive");
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::input, "kappa cdf is defined on [0, 1]");
  return std::pow(t, alpha);
}

double gamma_limit_cdf(double alpha, std::size_t k, double x) {
  if (!(alpha > 0.0) || k < 1) fail(ErrorKind::input, "need alpha > 0 and k >= 1");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_q(static_cast<double>(k), std::pow(x, -alpha));
}

std::vector<double> GammaLimitDraws::column(std::size_t j) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i * k + j];
  return out;
}

GammaLimitDraws sample_gamma_arrivals(std::size_t k, std::size_t n_draws, std::uint64_t seed) {
  if (k < 1) fail(ErrorKind::input, "k must be >= 1");
  GammaLimitDraws out;
  out.k = k;
  out.values.resize(k * n_draws);
  Xoshiro256 rng(seed);
  for (std::size_t i = 0; i < n_draws; ++i) {
    double g = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      g += rng.exponential();
      out.values[i * k + j] = g;
    }
  }
  return out;
}

GammaLimitDraws sample_gamma_limit(double alpha, std::size_t k, std::size_t n_draws,
                                   std::uint64_t seed) {
  if (!(alpha > 0.0)) fail(ErrorKind::input, "alpha must be positive");
  GammaLimitDraws out = sample_gamma_arrivals(k, n_draws, seed);
  for (double& v : out.values) v = std::pow(v, -1.0 / alpha);
  return out;
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) fail(ErrorKind::input, "KS distance of an empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorKind::input, "KS distance of an empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double kolmogorov_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 0.2) return 0.0;  // below 1e-50
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-17) break;
  }
  return 1.0 - 2.0 * sum;
}

double kolmogorov_quantile(double significance) {
  if (!(significance > 0.0 && significance < 1.0)) {
    fail(ErrorKind::input, "significance must lie in (0, 1)");
  }
  const double target = 1.0 - significance;
  double lo = 0.2, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_cdf(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ks_critical(double significance, std::size_t n) {
  return kolmogorov_quantile(significance) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(double significance, std::size_t n1, std::size_t n2) {
  const double a = static_cast<double>(n1), b = static_cast<double>(n2);
  return kolmogorov_quantile(significance) * std::sqrt((a + b) / (a * b));
}

double standard_normal_cdf(double x) { return 0.5 * boost::math::erfc(-x / std::sqrt(2.0)); }

void to_json(nlohmann::json& j, const DiagnosticResult& r) {
  j = {{"test", r.test},
       {"statistic", r.statistic},
       {"threshold", r.threshold},
       {"pass", r.pass},
       {"n", r.n}};
  j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
}

DiagnosticResult kappa_uniformity(std::span<const GroupSummary> summaries, double alpha,
                                  double significance) {
  if (!(alpha > 0.0)) fail(ErrorKind::input, "alpha must be positive");
  std::vector<double> u;
  u.reserve(summaries.size());
  for (const auto& s : summaries) u.push_back(std::pow(s.kappa, alpha));
  DiagnosticResult r;
  r.test = "kappa_uniformity";
  r.n = u.size();
  r.statistic = ks_distance(u, [](double x) { return std::clamp(x, 0.0, 1.0); });
  r.threshold = ks_critical(significance, r.n);
  r.pass = r.statistic < r.threshold;
  return r;
}

DiagnosticResult normality(std::string test, std::span<const double> stats, double significance) {
  DiagnosticResult r;
  r.test = std::move(test);
  r.n = stats.size();
  r.statistic = ks_distance(stats, standard_normal_cdf);
  r.threshold = ks_critical(significance, r.n);
  r.pass = r.statistic < r.threshold;
  return r;
}

}  // namespace tailcone
