#include <cmath>
#include <limits>

#include "doctest.h"
#include "tailcone/error.hpp"
#include "tailcone/planner.hpp"

using namespace tailcone;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::io;
}

}  // namespace

TEST_CASE("plan_simple examples") {
  const auto a = plan_simple(10000, 0.5);
  CHECK(a.n == 100);
  CHECK(a.m == 100);
  CHECK(a.source == PlanSource::simple);
  const auto b = plan_simple(1000000, 2.0 / 3.0);
  CHECK(b.n == 10000);
  CHECK(b.m == 100);
  CHECK(kind_of([] { plan_simple(10, 0.99); }) == ErrorKind::plan);
  CHECK(kind_of([] { plan_simple(3, 0.5); }) == ErrorKind::plan);
  CHECK(kind_of([] { plan_simple(100, 1.0); }) == ErrorKind::plan);
}

TEST_CASE("plan_second_order examples") {
  const auto a = plan_second_order(1000000, SecondOrderParams::from_zeta(1.0, 0.0));
  CHECK(a.n == 10000);
  CHECK(a.m == 100);
  CHECK(second_order_exponent(1.0, 0.05) == doctest::Approx(2.0 / 3.0 - 0.05));
  CHECK(1.0 - second_order_exponent(1.0, 0.05) == doctest::Approx(1.0 / 3.0 + 0.05));

  // floor(10^2.5) = 316, floor(1e5 / 316) = 316.
  const auto b = plan_second_order(100000, SecondOrderParams::from_zeta(0.5, 0.0));
  CHECK(b.n == 316);
  CHECK(b.m == 316);

  const double inf = std::numeric_limits<double>::infinity();
  CHECK(second_order_exponent(inf, 0.1) == doctest::Approx(0.9));
  CHECK(kind_of([&] { plan_second_order(1000, SecondOrderParams::from_zeta(inf, 0.0)); }) == ErrorKind::plan);
  CHECK(kind_of([] { plan_second_order(1000, SecondOrderParams::from_zeta(1.0, 0.7)); }) == ErrorKind::plan);
}

TEST_CASE("zeta derivation from alpha and beta") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(SecondOrderParams::from_tail(1.0, 3.0, PlanTarget::alpha_estimation).zeta == 2.0);
  CHECK(SecondOrderParams::from_tail(1.0, 3.0, PlanTarget::spectral_estimation).zeta == 1.0);
  CHECK(SecondOrderParams::from_tail(2.0, 3.0, PlanTarget::spectral_estimation).zeta == 0.5);
  CHECK(std::isinf(SecondOrderParams::from_tail(1.0, inf, PlanTarget::alpha_estimation).zeta));
  CHECK(SecondOrderParams::from_tail(1.0, inf, PlanTarget::spectral_estimation).zeta == 1.0);
  CHECK(SecondOrderParams::from_tail(1.5, default_beta(1.5), PlanTarget::alpha_estimation).zeta == 1.0);
  CHECK(kind_of([] { SecondOrderParams::from_tail(1.0, 1.0, PlanTarget::alpha_estimation); }) == ErrorKind::plan);
}

TEST_CASE("n*m never exceeds N and wastes less than one group") {
  for (std::size_t N : {100u, 999u, 12345u, 1000003u}) {
    for (double r : {0.1, 0.3, 0.5, 0.6}) {
      const auto p = plan_simple(N, r);
      REQUIRE(p.n * p.m <= N);
      REQUIRE(p.n * p.m + p.n > N);
    }
    for (double zeta : {0.2, 0.5, 1.0, 3.0}) {
      const auto p = plan_second_order(N, SecondOrderParams::from_zeta(zeta, 0.01));
      REQUIRE(p.n * p.m <= N);
      REQUIRE(p.n * p.m + p.n > N);
    }
  }
}

TEST_CASE("n is nondecreasing in zeta") {
  for (std::size_t N : {10000u, 100000u, 10000000u}) {
    std::size_t previous = 0;
    for (double zeta = 0.05; zeta < 4.0; zeta *= 1.1) {
      const auto p = plan_second_order(N, SecondOrderParams::from_zeta(zeta, 0.0));
      REQUIRE(p.n >= previous);
      previous = p.n;
    }
  }
}

// The bias of a group statistic is O(m^-min(zeta, 1)) for spectral sets and
// O(m^-zeta) for the ratio mean; both must vanish faster than 1/sqrt(n).
TEST_CASE("default epsilon drives sqrt(n) times the bias order to zero") {
  for (double zeta : {0.25, 0.5, 1.0, 2.0, 3.0}) {
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t N : {10000u, 100000u, 1000000u, 10000000u}) {
      const auto p = plan_second_order(N, SecondOrderParams::from_zeta(zeta));
      CHECK(p.epsilon == doctest::Approx(default_epsilon(N)));
      const double v = std::sqrt(static_cast<double>(p.n)) *
                       std::pow(static_cast<double>(p.m), -zeta);
      CAPTURE(zeta);
      CAPTURE(N);
      CHECK(v < previous);
      previous = v;
    }
  }
  CHECK(default_epsilon(100000000) < default_epsilon(10000));
}

TEST_CASE("plan requests from JSON") {
  auto req = plan_request_from_json(nlohmann::json::parse(R"({"type":"simple","r":0.5})"));
  CHECK(req.resolve(10000).n == 100);
  req = plan_request_from_json(nlohmann::json::parse(R"({"type":"second_order","zeta":1,"epsilon":0})"));
  CHECK(req.resolve(1000000).n == 10000);
  req = plan_request_from_json(
      nlohmann::json::parse(R"({"type":"second_order","alpha":1,"beta":"inf","target":"spectral_estimation","epsilon":0})"));
  CHECK(req.second_order.zeta == 1.0);
  req = plan_request_from_json(nlohmann::json::parse(R"({"type":"second_order","alpha":2})"));
  CHECK(req.second_order.beta == 4.0);
  req = plan_request_from_json(nlohmann::json::parse(R"({"type":"explicit","n":10,"m":3})"));
  CHECK(req.resolve(30).m == 3);
  const nlohmann::json plan_json = req.resolve(31);
  CHECK(plan_json["provenance"]["type"] == "explicit");
  CHECK(kind_of([] { plan_request_from_json(nlohmann::json::parse(R"({"type":"magic"})")); }) == ErrorKind::plan);
}
