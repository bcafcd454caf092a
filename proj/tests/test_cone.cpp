#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "tailcone/cone.hpp"
#include "tailcone/error.hpp"
#include "tailcone/random.hpp"

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

double ulp(double x) {
  return std::nextafter(std::fabs(x), std::numeric_limits<double>::infinity()) - std::fabs(x);
}

}  // namespace

TEST_CASE("norm examples") {
  CHECK(norm(ConeSpec::euclidean(2), ConeElement{3, 4}) == 5.0);
  CHECK(norm(ConeSpec::max_cone(), ConeElement{2.5}) == 2.5);
  CHECK(norm(ConeSpec::sup(3), ConeElement{1, -2, 0.5}) == 2.0);
  CHECK(norm(ConeSpec::lp(2, 1.0), ConeElement{-1, 2}) == 3.0);
  CHECK(norm(ConeSpec::lp(2, 3.0), ConeElement{1, 2}) == doctest::Approx(std::cbrt(9.0)).epsilon(1e-15));
  CHECK(norm(ConeSpec::euclidean(3), ConeElement{0, 0, 0}) == 0.0);
}

TEST_CASE("norm rejects a dimension mismatch") {
  CHECK(kind_of([] { norm(ConeSpec::euclidean(2), ConeElement{1, 2, 3}); }) == ErrorKind::input);
}

TEST_CASE("cone spec validation") {
  CHECK_NOTHROW(ConeSpec::lp(3, 1.5).validate());
  CHECK(kind_of([] { ConeSpec::lp(3, 0.5).validate(); }) == ErrorKind::input);
  CHECK(kind_of([] { ConeSpec{ConeKind::max_cone_rplus, 2, 2.0}.validate(); }) == ErrorKind::input);
  CHECK(kind_of([] { ConeSpec{ConeKind::euclidean_rd, 0, 2.0}.validate(); }) == ErrorKind::input);
  CHECK(kind_of([] { check_element(ConeSpec::max_cone(), ConeElement{-1.0}); }) == ErrorKind::input);
  CHECK(kind_of([] { check_element(ConeSpec::euclidean(1), ConeElement{NAN}); }) == ErrorKind::input);
}

TEST_CASE("direction examples") {
  const auto u = direction(ConeSpec::euclidean(2), ConeElement{3, 4});
  CHECK(u[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(u[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(direction(ConeSpec::max_cone(), ConeElement{7.0})[0] == 1.0);
  CHECK(kind_of([] { direction(ConeSpec::euclidean(2), ConeElement{0, 0}); }) ==
        ErrorKind::degenerate_element);
}

TEST_CASE("homogeneity and polar round trip on random elements") {
  Xoshiro256 rng(7);
  const ConeSpec specs[] = {ConeSpec::euclidean(3), ConeSpec::lp(3, 1.0), ConeSpec::lp(4, 3.5),
                            ConeSpec::sup(2), ConeSpec::max_cone()};
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 2000; ++trial) {
      ConeElement x(spec.dimension);
      for (double& v : x) {
        v = (rng.uniform_open() - (spec.kind == ConeKind::max_cone_rplus ? 0.0 : 0.5)) *
            std::pow(10.0, 6.0 * rng.uniform_open() - 3.0);
      }
      const double a = std::pow(10.0, 8.0 * rng.uniform_open() - 4.0);
      ConeElement ax = x;
      for (double& v : ax) v *= a;
      const double lhs = norm(spec, ax);
      const double rhs = a * norm(spec, x);
      REQUIRE(std::fabs(lhs - rhs) <= 4.0 * ulp(rhs));

      const double r = norm(spec, x);
      const auto u = direction(spec, x);
      REQUIRE(std::fabs(norm(spec, u) - 1.0) <= kDirectionTolerance);
      for (std::size_t k = 0; k < x.size(); ++k) {
        REQUIRE(std::fabs(r * u[k] - x[k]) <= 1e-12 * r);
      }
    }
  }
}

TEST_CASE("sphere membership examples") {
  const auto spec = ConeSpec::euclidean(2);
  const ConeElement u{0.6, 0.8};
  CHECK(sphere_contains(spec, SphereSet::cap({1, 0}, std::numbers::pi / 2), u));
  CHECK_FALSE(sphere_contains(spec, SphereSet::complement(SphereSet::whole_sphere()), u));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(sphere_contains(spec, SphereSet::box({0.5, -inf}, {1.0, inf}), u));
  CHECK_FALSE(sphere_contains(spec, SphereSet::box({0.7, -inf}, {1.0, inf}), u));
  CHECK(sphere_contains(spec,
                        SphereSet::finite_union({SphereSet::cap({0, -1}, 0.1), SphereSet::cap({0, 1}, 0.7)}),
                        u));
  CHECK(kind_of([&] { sphere_contains(spec, SphereSet::whole_sphere(), ConeElement{1, 1}); }) ==
        ErrorKind::input);
}

TEST_CASE("caps use the Euclidean angle under other norms") {
  const auto spec = ConeSpec::sup(2);
  const ConeElement u{1.0, 1.0};  // sup-norm unit, 45 degrees
  CHECK(sphere_contains(spec, SphereSet::cap({1, 0}, std::numbers::pi / 4 + 1e-12), u));
  CHECK_FALSE(sphere_contains(spec, SphereSet::cap({1, 0}, std::numbers::pi / 4 - 1e-9), u));
}

TEST_CASE("complement negates membership") {
  const auto spec = ConeSpec::euclidean(3);
  Xoshiro256 rng(11);
  const SphereSet sets[] = {
      SphereSet::cap({0, 0, 1}, 1.0),
      SphereSet::box({-0.5, -1, -1}, {0.5, 1, 1}),
      SphereSet::finite_union({SphereSet::cap({1, 0, 0}, 0.3), SphereSet::cap({0, 1, 0}, 0.6)}),
      SphereSet::whole_sphere(),
  };
  for (int trial = 0; trial < 1000; ++trial) {
    ConeElement x{rng.normal(), rng.normal(), rng.normal()};
    const auto u = direction(spec, x);
    for (const auto& s : sets) {
      REQUIRE(sphere_contains(spec, SphereSet::complement(s), u) != sphere_contains(spec, s, u));
    }
  }
}

TEST_CASE("sphere set validation") {
  const auto spec = ConeSpec::euclidean(2);
  CHECK(kind_of([&] { validate(spec, SphereSet::cap({2, 0}, 1.0)); }) == ErrorKind::input);
  CHECK(kind_of([&] { validate(spec, SphereSet::cap({1, 0}, 0.0)); }) == ErrorKind::input);
  CHECK(kind_of([&] { validate(spec, SphereSet::cap({1, 0}, 4.0)); }) == ErrorKind::input);
  CHECK(kind_of([&] { validate(spec, SphereSet::box({0}, {1})); }) == ErrorKind::input);
  CHECK_NOTHROW(validate(spec, SphereSet::cap({1, 0}, std::numbers::pi)));
}

TEST_CASE("boundary distance") {
  const auto spec = ConeSpec::euclidean(2);
  const auto cap = SphereSet::cap({1, 0}, std::numbers::pi / 4);
  const double s = std::sqrt(0.5);
  CHECK(boundary_distance(spec, cap, ConeElement{s, s}) < 1e-12);
  CHECK(boundary_distance(spec, cap, ConeElement{1, 0}) == doctest::Approx(std::numbers::pi / 4));
  CHECK(std::isinf(boundary_distance(spec, SphereSet::whole_sphere(), ConeElement{1, 0})));
}

TEST_CASE("JSON round trip of cone specs and sphere sets") {
  const ConeSpec lp = ConeSpec::lp(3, 1.5);
  nlohmann::json j = lp;
  CHECK(j.dump() == R"({"dimension":3,"kind":"lp_rd","p":1.5})");
  CHECK(j.get<ConeSpec>() == lp);
  CHECK(nlohmann::json::parse(R"({"kind":"max_cone_rplus","dimension":1})").get<ConeSpec>() ==
        ConeSpec::max_cone());
  CHECK(kind_of([] { nlohmann::json::parse(R"({"kind":"torus"})").get<ConeSpec>(); }) ==
        ErrorKind::input);

  const double inf = std::numeric_limits<double>::infinity();
  const auto set = SphereSet::complement(SphereSet::finite_union(
      {SphereSet::cap({1, 0}, 0.5), SphereSet::box({-inf, 0.2}, {0.1, inf}), SphereSet::whole_sphere()}));
  const nlohmann::json sj = set;
  const auto back = sphere_set_from_json(sj);
  CHECK(nlohmann::json(back) == sj);
  const auto spec = ConeSpec::euclidean(2);
  Xoshiro256 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto u = direction(spec, ConeElement{rng.normal(), rng.normal()});
    REQUIRE(sphere_contains(spec, set, u) == sphere_contains(spec, back, u));
  }
}
