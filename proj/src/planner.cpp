#include "tailcone/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tailcone/error.hpp"

namespace tailcone {

SecondOrderParams SecondOrderParams::from_tail(double alpha, double beta, PlanTarget target,
                                               std::optional<double> epsilon) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorKind::plan, "alpha must be positive");
  if (!(beta > alpha)) fail(ErrorKind::plan, "beta must exceed alpha");
  SecondOrderParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.target = target;
  p.epsilon = epsilon;
  const double ratio = std::isinf(beta) ? std::numeric_limits<double>::infinity()
                                        : (beta - alpha) / alpha;
  p.zeta = target == PlanTarget::spectral_estimation ? std::min(ratio, 1.0) : ratio;
  return p;
}

SecondOrderParams SecondOrderParams::from_zeta(double zeta, std::optional<double> epsilon) {
  if (!(zeta > 0.0)) fail(ErrorKind::plan, "zeta must be positive");
  SecondOrderParams p;
  p.zeta = zeta;
  p.epsilon = epsilon;
  return p;
}

double default_beta(double alpha) { return 2.0 * alpha; }

double default_epsilon(std::size_t N) {
  if (N < 16) fail(ErrorKind::plan, "default epsilon needs N >= 16");
  const double ln = std::log(static_cast<double>(N));
  return std::log(ln) / ln;
}

namespace {

// floor(N^e), snapping values within a relative 1e-9 of an integer so that
// exact powers such as (10^6)^(2/3) land on the integer.
std::size_t floor_power(std::size_t N, double e) {
  const double x = std::pow(static_cast<double>(N), e);
  const double nearest = std::round(x);
  if (std::fabs(x - nearest) <= 1e-9 * std::max(1.0, x)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(x));
}

GroupingPlan finish(std::size_t N, std::size_t n) {
  GroupingPlan plan;
  if (n < 1) fail(ErrorKind::plan, "plan yields no groups");
  plan.n = n;
  plan.m = N / n;
  if (plan.m < 2) {
    fail(ErrorKind::plan, "plan yields group size " + std::to_string(plan.m) +
                              " < 2; exponent too large for N = " + std::to_string(N));
  }
  return plan;
}

}  // namespace

GroupingPlan plan_simple(std::size_t N, double r) {
  if (N < 4) fail(ErrorKind::plan, "plan needs N >= 4");
  if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::plan, "r must lie in (0, 1)");
  GroupingPlan plan = finish(N, floor_power(N, r));
  plan.source = PlanSource::simple;
  plan.r = r;
  return plan;
}

double second_order_exponent(double zeta, double epsilon) {
  if (std::isinf(zeta)) return 1.0 - epsilon;
  return 2.0 * zeta / (1.0 + 2.0 * zeta) - epsilon;
}

GroupingPlan plan_second_order(std::size_t N, const SecondOrderParams& params) {
  if (N < 4) fail(ErrorKind::plan, "plan needs N >= 4");
  if (!(params.zeta > 0.0)) fail(ErrorKind::plan, "zeta must be positive");
  const double eps = params.epsilon ? *params.epsilon : default_epsilon(N);
  if (!(eps >= 0.0)) fail(ErrorKind::plan, "epsilon must be >= 0");
  const double e = second_order_exponent(params.zeta, eps);
  if (!(e > 0.0 && e < 1.0)) {
    fail(ErrorKind::plan, "group-count exponent " + std::to_string(e) + " outside (0, 1)");
  }
  GroupingPlan plan = finish(N, floor_power(N, e));
  plan.source = PlanSource::second_order;
  plan.zeta = params.zeta;
  plan.epsilon = eps;
  return plan;
}

}  // namespace tailcone

namespace tailcone {

GroupingPlan PlanRequest::resolve(std::size_t N) const {
  switch (kind) {
    case Kind::explicit_sizes: return GroupingPlan::explicit_sizes(n, m);
    case Kind::simple: return plan_simple(N, r);
    case Kind::second_order: return plan_second_order(N, second_order);
  }
  fail(ErrorKind::plan, "unknown plan kind");
}

void to_json(nlohmann::json& j, const PlanRequest& req) {
  switch (req.kind) {
    case PlanRequest::Kind::explicit_sizes:
      j = {{"type", "explicit"}, {"n", req.n}, {"m", req.m}};
      break;
    case PlanRequest::Kind::simple:
      j = {{"type", "simple"}, {"r", req.r}};
      break;
    case PlanRequest::Kind::second_order: {
      const auto& p = req.second_order;
      j = {{"type", "second_order"}};
      if (std::isinf(p.zeta)) {
        j["zeta"] = "inf";
      } else {
        j["zeta"] = p.zeta;
      }
      if (p.alpha > 0.0) {
        j["alpha"] = p.alpha;
        j["beta"] = std::isinf(p.beta) ? nlohmann::json("inf") : nlohmann::json(p.beta);
        j["target"] = p.target == PlanTarget::spectral_estimation ? "spectral_estimation"
                                                                  : "alpha_estimation";
      }
      if (p.epsilon) j["epsilon"] = *p.epsilon;
      break;
    }
  }
}

namespace {

double number_or_inf(const nlohmann::json& j) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) {
    return std::numeric_limits<double>::infinity();
  }
  return j.get<double>();
}

}  // namespace

PlanRequest plan_request_from_json(const nlohmann::json& j) {
  PlanRequest req;
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "explicit") {
      req.kind = PlanRequest::Kind::explicit_sizes;
      req.n = j.at("n").get<std::size_t>();
      req.m = j.at("m").get<std::size_t>();
      GroupingPlan::explicit_sizes(req.n, req.m);
    } else if (type == "simple") {
      req.kind = PlanRequest::Kind::simple;
      req.r = j.at("r").get<double>();
    } else if (type == "second_order") {
      req.kind = PlanRequest::Kind::second_order;
      std::optional<double> eps;
      if (j.contains("epsilon") && !j.at("epsilon").is_null()) eps = j.at("epsilon").get<double>();
      if (j.contains("zeta")) {
        req.second_order = SecondOrderParams::from_zeta(number_or_inf(j.at("zeta")), eps);
      } else {
        const double alpha = j.at("alpha").get<double>();
        const double beta = j.contains("beta") ? number_or_inf(j.at("beta")) : default_beta(alpha);
        const auto target = j.value("target", std::string("alpha_estimation"));
        if (target != "alpha_estimation" && target != "spectral_estimation") {
          fail(ErrorKind::plan, "unknown plan target '" + target + "'");
        }
        req.second_order = SecondOrderParams::from_tail(
            alpha, beta,
            target == "spectral_estimation" ? PlanTarget::spectral_estimation
                                            : PlanTarget::alpha_estimation,
            eps);
      }
    } else {
      fail(ErrorKind::plan, "unknown plan type '" + type + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::plan, std::string("malformed plan: ") + e.what());
  }
  return req;
}

}  // namespace tailcone
