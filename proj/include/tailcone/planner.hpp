#pragma once

#include <cstddef>
#include <optional>

#include "json.hpp"
#include "tailcone/grouping.hpp"

namespace tailcone {

enum class PlanTarget { alpha_estimation, spectral_estimation };

// Second-order tail description used to size the groups. beta may be
// +infinity; zeta is derived from (alpha, beta, target) unless set directly.
struct SecondOrderParams {
  double alpha = 0.0;  // 0 when only zeta is known
  double beta = 0.0;
  double zeta = 1.0;
  std::optional<double> epsilon;  // default_epsilon(N) when absent
  PlanTarget target = PlanTarget::alpha_estimation;

  // zeta = (beta - alpha)/alpha for alpha estimation and
  // min((beta - alpha)/alpha, 1) for spectral estimation.
  static SecondOrderParams from_tail(double alpha, double beta, PlanTarget target,
                                     std::optional<double> epsilon = std::nullopt);
  static SecondOrderParams from_zeta(double zeta, std::optional<double> epsilon = std::nullopt);
};

// Stable-law heuristic beta = 2 alpha, used when beta is unknown.
double default_beta(double alpha);

// Vanishing default for epsilon: ln(ln N) / ln N. Goes to 0 while
// N^epsilon = ln N still grows, so sqrt(n) * m^(-zeta) -> 0.
double default_epsilon(std::size_t N);

// n = floor(N^r), m = floor(N / n).
GroupingPlan plan_simple(std::size_t N, double r);

// n = floor(N^(2 zeta/(1 + 2 zeta) - epsilon)), m = floor(N / n); the
// exponent becomes 1 - epsilon for zeta = +infinity.
GroupingPlan plan_second_order(std::size_t N, const SecondOrderParams& params);

// Exponent of N used for n.
double second_order_exponent(double zeta, double epsilon);

}  // namespace tailcone

namespace tailcone {

// How a plan is requested before N is known: explicit sizes, a fixed r, or
// second-order parameters.
struct PlanRequest {
  enum class Kind { explicit_sizes, simple, second_order } kind = Kind::simple;
  std::size_t n = 0, m = 0;  // explicit_sizes
  double r = 0.5;            // simple
  SecondOrderParams second_order;

  GroupingPlan resolve(std::size_t N) const;
};

void to_json(nlohmann::json& j, const PlanRequest& req);
// {"type": "explicit", "n", "m"} | {"type": "simple", "r"} |
// {"type": "second_order", "zeta" | ("alpha", "beta"?, "target"?), "epsilon"?}
PlanRequest plan_request_from_json(const nlohmann::json& j);

}  // namespace tailcone
