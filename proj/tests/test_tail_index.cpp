#include <cmath>
#include <vector>

#include "doctest.h"
#include "tailcone/diagnostics.hpp"
#include "tailcone/error.hpp"
#include "tailcone/planner.hpp"
#include "tailcone/random.hpp"
#include "tailcone/synth.hpp"
#include "tailcone/tail_index.hpp"

using namespace tailcone;

namespace {

std::vector<GroupSummary> from_kappas(const std::vector<double>& ks) {
  std::vector<GroupSummary> out;
  for (std::size_t i = 0; i < ks.size(); ++i) out.push_back({i, 1.0, ks[i], ks[i], {1.0}, 0});
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::io;
}

const ConeSpec kPlane = ConeSpec::euclidean(2);
const DirectionLaw kTwoAtoms = DiscreteDirection{{{1, 0}, {0, 1}}, {0.3, 0.7}};

}  // namespace

TEST_CASE("estimate_alpha arithmetic") {
  const auto est = estimate_alpha(from_kappas({0.5, 0.5, 0.5, 0.5}), 0.95);
  CHECK(est.alpha_hat == 1.0);
  CHECK(est.s_n == 2.0);
  CHECK(est.kappa_var == 0.0);
  CHECK_FALSE(est.ci.has_value());
  CHECK_FALSE(est.ci_error.empty());

  // kappa_mean = alpha/(alpha+1) inverts to alpha exactly.
  const auto two = estimate_alpha(from_kappas({2.0 / 3.0 - 0.1, 2.0 / 3.0 + 0.1, 2.0 / 3.0}), 0.9);
  CHECK(two.alpha_hat == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(two.kappa_mean == doctest::Approx(2.0 / 3.0));
  CHECK(two.kappa_var == doctest::Approx(0.02 / 3.0));
  REQUIRE(two.ci.has_value());
  CHECK(two.ci->lower <= two.alpha_hat);
  CHECK(two.alpha_hat <= two.ci->upper);
}

TEST_CASE("estimate_alpha error classes") {
  CHECK(kind_of([] { estimate_alpha(from_kappas({1, 1, 1}), 0.95); }) == ErrorKind::diverging_estimate);
  CHECK(kind_of([] { estimate_alpha(from_kappas({0, 0, 0}), 0.95); }) == ErrorKind::zero_estimate);
  CHECK(kind_of([] { estimate_alpha(from_kappas({0.5}), 0.95); }) == ErrorKind::input);
  CHECK(kind_of([] { estimate_alpha(from_kappas({0.5, 0.4}), 1.0); }) == ErrorKind::input);
}

TEST_CASE("alpha_hat is strictly increasing in S_n") {
  double previous = 0.0;
  for (int step = 1; step < 400; ++step) {
    const double k = step / 400.0;
    const auto est = estimate_alpha(from_kappas({k, k, k, k, k}), 0.95);
    REQUIRE(est.alpha_hat > previous);
    previous = est.alpha_hat;
  }
}

TEST_CASE("studentized statistic arithmetic") {
  KappaMoments k;
  k.n = 100;
  k.mean = 0.55;
  k.var = 0.01;
  CHECK(studentized_stat(k, 1.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(studentized_stat(from_kappas({0.4, 0.6, 0.5}), 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(kind_of([] { studentized_stat(from_kappas({0.5, 0.5}), 1.0); }) == ErrorKind::degenerate_variance);
}

TEST_CASE("confidence interval half-width") {
  // z_{0.975} to 16 digits; limiting kappa variance at alpha = 1 is 1/12.
  const double z = 1.959963984540054;
  const double h = z * 4.0 * std::sqrt(1.0 / 12.0) / 100.0;
  const auto ci = confidence_interval(1.0, 1.0 / 12.0, 10000, 0.95);
  CHECK(ci.upper - 1.0 == doctest::Approx(h).epsilon(1e-9));
  CHECK(1.0 - ci.lower == doctest::Approx(h).epsilon(1e-9));
  CHECK(h == doctest::Approx(0.02263).epsilon(1e-3));

  const auto tiny = confidence_interval(1.0, 1.0 / 12.0, 10000, 1e-12);
  CHECK(tiny.upper - tiny.lower < 1e-12);
  CHECK(kind_of([] { confidence_interval(1.0, 0.0, 100, 0.95); }) == ErrorKind::degenerate_variance);

  // Unclamped below zero.
  const auto wide = confidence_interval(0.1, 0.2, 4, 0.99);
  CHECK(wide.lower < 0.0);
}

TEST_CASE("normal quantile") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
  CHECK(two_sided_z(0.9) == doctest::Approx(1.6448536269514722).epsilon(1e-14));
  CHECK_THROWS_AS(normal_quantile(0.0), Error);
}

TEST_CASE("JSON report fields") {
  const auto est = estimate_alpha(from_kappas({0.3, 0.5, 0.7, 0.5}), 0.95);
  const nlohmann::json j = est;
  for (const char* key : {"alpha_hat", "n", "s_n", "kappa_mean", "kappa_var", "se", "ci", "level"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["ci"].size() == 2);
  CHECK(j["n"] == 4);
}

TEST_CASE("mean of alpha_hat over Pareto replicates") {
  // alpha = 1.5, N = 1e5, n = N^(2/3): 100 seeded replicates.
  const auto plan = plan_simple(100000, 2.0 / 3.0);
  double sum = 0.0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const auto data = sample(100000, ParetoRadial{1.5}, kTwoAtoms, kPlane, derive_seed(2024, rep));
    sum += estimate_alpha(summarize(data, plan), 0.95).alpha_hat;
  }
  const double mean = sum / 100.0;
  CHECK(mean >= 1.45);
  CHECK(mean <= 1.55);
}

TEST_CASE("studentized statistic is standard normal for Pareto data") {
  // alpha = 1, N = 1e6, zeta = 1 plan, 500 replicates; 1% Kolmogorov
  // critical value at 500 points.
  const std::size_t N = 1000000;
  const auto plan = plan_second_order(N, SecondOrderParams::from_zeta(1.0));
  std::vector<double> stats;
  for (std::uint64_t rep = 0; rep < 500; ++rep) {
    const auto data = sample_max_cone(N, ParetoRadial{1.0}, derive_seed(77, rep));
    stats.push_back(studentized_stat(summarize(data, plan), 1.0));
  }
  const double d = ks_distance(stats, standard_normal_cdf);
  CHECK(d < 1.6276 / std::sqrt(500.0));
}
