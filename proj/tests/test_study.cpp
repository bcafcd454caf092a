#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tailcone/error.hpp"
#include "tailcone/study.hpp"

using namespace tailcone;

namespace {

StudySpec small_study() {
  return study_spec_from_json(nlohmann::json::parse(R"({
    "law": {"cone": {"kind": "euclidean_rd", "dimension": 2},
            "radial": {"type": "fristedt_toy", "alpha": 1.0},
            "direction": {"type": "discrete", "atoms": [[1, 0], [0, 1]], "weights": [0.3, 0.7]}},
    "N": [1000, 5000],
    "plan": {"type": "second_order", "zeta": 1},
    "replicates": 6,
    "level": 0.95,
    "seed": 17,
    "query_set": {"type": "cap", "center": [1, 0], "angular_radius": 0.7853981633974483}
  })"));
}

}  // namespace

TEST_CASE("smoke study yields a finite table") {
  auto spec = small_study();
  spec.replicates = 2;
  const auto result = run_study(spec);
  REQUIRE(result.rows.size() == 2);
  for (const auto& row : result.rows) {
    CHECK(row.failures == 0);
    CHECK(std::isfinite(row.alpha.mean));
    CHECK(std::isfinite(row.alpha.rmse));
    REQUIRE(row.sigma.has_value());
    CHECK(std::isfinite(row.sigma->bias));
  }
  CHECK_FALSE(result.any_failed());
}

TEST_CASE("sigma_true is derived from the discrete direction law") {
  const auto spec = small_study();
  const auto mass = direction_mass(spec.law.cone, *spec.law.direction, *spec.query_set);
  REQUIRE(mass.has_value());
  CHECK(*mass == doctest::Approx(0.3));
  CHECK_FALSE(direction_mass(spec.law.cone, UniformSphereDirection{2}, SphereSet::whole_sphere()).has_value());
}

TEST_CASE("study output does not depend on the worker count") {
  const auto spec = small_study();
  const nlohmann::json a = run_study(spec, 1);
  const nlohmann::json b = run_study(spec, 3);
  const nlohmann::json c = run_study(spec, 1);
  CHECK(a.dump() == b.dump());
  CHECK(a.dump() == c.dump());
  auto other = spec;
  other.seed = 18;
  CHECK(nlohmann::json(run_study(other, 1)).dump() != a.dump());
}

TEST_CASE("replicate failures are recorded per row") {
  auto spec = small_study();
  spec.plan = plan_request_from_json(nlohmann::json::parse(R"({"type":"explicit","n":100,"m":20})"));
  spec.sample_sizes = {1000, 3000};
  const auto result = run_study(spec);
  CHECK(result.rows[0].failures == spec.replicates);
  CHECK(result.rows[0].errors.size() == 5);
  CHECK(result.rows[0].errors[0].find("insufficient-data") != std::string::npos);
  CHECK(result.rows[1].failures == 0);
  CHECK(result.any_failed());
}

TEST_CASE("study spec validation") {
  auto j = nlohmann::json(small_study());
  j["replicates"] = 1;
  CHECK_THROWS_AS(study_spec_from_json(j), Error);
  j = nlohmann::json(small_study());
  j["N"] = nlohmann::json::array();
  CHECK_THROWS_AS(study_spec_from_json(j), Error);
  j = nlohmann::json(small_study());
  CHECK(study_spec_from_json(j).replicates == 6);
}
