#include "tailcone/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tailcone/error.hpp"

namespace tailcone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Every radial law is c1 x^-alpha + c2 x^-beta; Pareto has c2 = 0.
struct Terms {
  double c1, alpha, c2, beta;
};

Terms terms(const RadialLaw& law) {
  return std::visit(
      [](const auto& l) -> Terms {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ParetoRadial>) {
          return {1.0, l.alpha, 0.0, kInf};
        } else if constexpr (std::is_same_v<T, SecondOrderRadial>) {
          return {l.c1, l.alpha, l.c2, l.beta};
        } else {
          return {l.c1, l.alpha, l.c2, 2.0 * l.alpha};
        }
      },
      law);
}

}  // namespace

void validate(const RadialLaw& law) {
  const Terms t = terms(law);
  if (!(t.alpha > 0.0) || !std::isfinite(t.alpha)) {
    fail(ErrorKind::law_validation, "alpha must be a positive finite number");
  }
  if (std::holds_alternative<ParetoRadial>(law)) return;
  if (!(t.c1 > 0.0) || !std::isfinite(t.c2)) fail(ErrorKind::law_validation, "c1 must be positive");
  if (!(t.beta > t.alpha) || !std::isfinite(t.beta)) {
    fail(ErrorKind::law_validation, "beta must be finite and exceed alpha");
  }
  if (std::fabs(t.c1 + t.c2 - 1.0) > 1e-12) {
    fail(ErrorKind::law_validation, "c1 + c2 must equal 1 so that G(1) = 1");
  }
  // G'(x) x^(alpha+1) = -(alpha c1 + beta c2 x^(alpha-beta)); with c2 < 0 the
  // bracket is smallest at x = 1.
  if (!(t.alpha * t.c1 + t.beta * std::min(t.c2, 0.0) > 0.0)) {
    fail(ErrorKind::law_validation, "G is not strictly decreasing on [1, inf)");
  }
}

double radial_alpha(const RadialLaw& law) { return terms(law).alpha; }
double radial_beta(const RadialLaw& law) { return terms(law).beta; }
double radial_c1(const RadialLaw& law) { return terms(law).c1; }

double radial_survival(const RadialLaw& law, double x) {
  if (x < kSupportMin) return 1.0;
  const Terms t = terms(law);
  double g = t.c1 * std::pow(x, -t.alpha);
  if (t.c2 != 0.0) g += t.c2 * std::pow(x, -t.beta);
  return g;
}

double radial_inverse_cdf(const RadialLaw& law, double u) {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorKind::input, "inverse cdf needs u in (0, 1)");
  const Terms t = terms(law);
  if (t.c2 == 0.0) return std::pow(u, -1.0 / t.alpha);

  // With y = x^-alpha, G = h(y) + u where h(y) = c1 y + c2 y^q - u is
  // increasing on [0, 1]. Newton steps are kept inside the bracket.
  const double q = t.beta / t.alpha;
  auto h = [&](double y) { return t.c1 * y + t.c2 * std::pow(y, q) - u; };
  double lo = 0.0, hi = 1.0;
  if (!(h(lo) < 0.0 && h(hi) > 0.0)) fail(ErrorKind::numeric, "root not bracketed; invalid law");
  double y = u;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const double fy = h(y);
    if (fy == 0.0) {
      converged = true;
      break;
    }
    if (fy < 0.0) {
      lo = y;
    } else {
      hi = y;
    }
    const double slope = t.c1 + t.c2 * q * std::pow(y, q - 1.0);
    double next = y - fy / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - y);
    y = next;
    if (step <= 1e-15 * y || hi - lo <= 2e-16 * hi) {
      converged = true;
      break;
    }
  }
  if (!converged) fail(ErrorKind::numeric, "inverse cdf did not converge");
  return std::max(kSupportMin, std::pow(y, -1.0 / t.alpha));
}

// ---------------------------------------------------------------------------
// Directions

namespace {

void check_weights(const std::vector<double>& w, std::size_t count) {
  if (w.size() != count || w.empty()) {
    fail(ErrorKind::law_validation, "weights must match the number of atoms/components");
  }
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) fail(ErrorKind::law_validation, "weights must be nonnegative");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-12) fail(ErrorKind::law_validation, "weights must sum to 1");
}

std::size_t pick(const std::vector<double>& weights, Xoshiro256& rng) {
  const double u = rng.uniform_open();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return weights.size() - 1;
}

}  // namespace

void validate(const ConeSpec& spec, const DirectionLaw& law) {
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, DiscreteDirection>) {
          check_weights(l.weights, l.atoms.size());
          for (const auto& a : l.atoms) {
            try {
              check_element(spec, a);
            } catch (const Error& e) {
              fail(ErrorKind::law_validation, std::string("direction atom: ") + e.what());
            }
            if (std::fabs(norm(spec, a) - 1.0) > kInputUnitTolerance) {
              fail(ErrorKind::law_validation, "direction atoms must have unit norm");
            }
          }
        } else if constexpr (std::is_same_v<T, UniformSphereDirection>) {
          if (l.dimension != spec.dimension) {
            fail(ErrorKind::law_validation, "uniform sphere dimension does not match the cone");
          }
          if (spec.kind == ConeKind::max_cone_rplus) {
            fail(ErrorKind::law_validation, "the max-cone sphere is the single point 1");
          }
        } else {
          check_weights(l.weights, l.components.size());
          for (const auto& c : l.components) validate(spec, c);
        }
      },
      law);
}

void sample_direction(const ConeSpec& spec, const DirectionLaw& law, Xoshiro256& rng,
                      std::span<double> out) {
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, DiscreteDirection>) {
          const auto& a = l.atoms[pick(l.weights, rng)];
          std::copy(a.begin(), a.end(), out.begin());
        } else if constexpr (std::is_same_v<T, UniformSphereDirection>) {
          double r = 0.0;
          do {
            for (double& v : out) v = rng.normal();
            r = norm(spec, out);
          } while (!(r > 0.0));
          for (double& v : out) v /= r;
        } else {
          sample_direction(spec, l.components[pick(l.weights, rng)], rng, out);
        }
      },
      law);
}

Dataset sample(std::size_t n_obs, const RadialLaw& radial, const DirectionLaw& direction,
               const ConeSpec& spec, std::uint64_t seed) {
  spec.validate();
  validate(radial);
  validate(spec, direction);
  if (n_obs < 1) fail(ErrorKind::input, "n_obs must be >= 1");
  const std::size_t d = spec.dimension;
  std::vector<double> values(n_obs * d);
  Xoshiro256 rng(seed);
  for (std::size_t i = 0; i < n_obs; ++i) {
    const double r = radial_inverse_cdf(radial, rng.uniform_open());
    std::span<double> row(values.data() + i * d, d);
    sample_direction(spec, direction, rng, row);
    for (double& v : row) v *= r;
  }
  return Dataset(spec, std::move(values));
}

Dataset sample_max_cone(std::size_t n_obs, const RadialLaw& radial, std::uint64_t seed) {
  validate(radial);
  if (n_obs < 1) fail(ErrorKind::input, "n_obs must be >= 1");
  std::vector<double> values(n_obs);
  Xoshiro256 rng(seed);
  for (double& v : values) v = radial_inverse_cdf(radial, rng.uniform_open());
  return Dataset(ConeSpec::max_cone(), std::move(values));
}

void validate(const LawSpec& law) {
  law.cone.validate();
  validate(law.radial);
  if (law.cone.kind == ConeKind::max_cone_rplus) {
    if (law.direction) validate(law.cone, *law.direction);
  } else {
    if (!law.direction) fail(ErrorKind::law_validation, "a direction law is required");
    validate(law.cone, *law.direction);
  }
}

Dataset sample(std::size_t n_obs, const LawSpec& law, std::uint64_t seed) {
  validate(law);
  if (!law.direction) return sample_max_cone(n_obs, law.radial, seed);
  return sample(n_obs, law.radial, *law.direction, law.cone, seed);
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json& j, const RadialLaw& law) {
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ParetoRadial>) {
          j = {{"type", "pareto"}, {"alpha", l.alpha}};
        } else if constexpr (std::is_same_v<T, SecondOrderRadial>) {
          j = {{"type", "second_order"}, {"c1", l.c1}, {"alpha", l.alpha}, {"c2", l.c2}, {"beta", l.beta}};
        } else {
          j = {{"type", "fristedt_toy"}, {"alpha", l.alpha}, {"c1", l.c1}, {"c2", l.c2}};
        }
      },
      law);
}

RadialLaw radial_law_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "pareto") return ParetoRadial{j.at("alpha").get<double>()};
    if (type == "second_order") {
      return SecondOrderRadial{j.at("c1").get<double>(), j.at("alpha").get<double>(),
                               j.at("c2").get<double>(), j.at("beta").get<double>()};
    }
    if (type == "fristedt_toy") {
      return FristedtRadial{j.at("alpha").get<double>(), j.value("c1", 0.5), j.value("c2", 0.5)};
    }
    fail(ErrorKind::law_validation, "unknown radial law '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::law_validation, std::string("malformed radial law: ") + e.what());
  }
}

void to_json(nlohmann::json& j, const DirectionLaw& law) {
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, DiscreteDirection>) {
          j = {{"type", "discrete"}, {"atoms", l.atoms}, {"weights", l.weights}};
        } else if constexpr (std::is_same_v<T, UniformSphereDirection>) {
          j = {{"type", "uniform_sphere"}, {"dimension", l.dimension}};
        } else {
          auto comps = nlohmann::json::array();
          for (const auto& c : l.components) comps.push_back(c);
          j = {{"type", "mixture"}, {"components", std::move(comps)}, {"weights", l.weights}};
        }
      },
      law);
}

DirectionLaw direction_law_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "discrete") {
      return DiscreteDirection{j.at("atoms").get<std::vector<ConeElement>>(),
                               j.at("weights").get<std::vector<double>>()};
    }
    if (type == "uniform_sphere") return UniformSphereDirection{j.at("dimension").get<std::size_t>()};
    if (type == "mixture") {
      MixtureDirection mix;
      for (const auto& c : j.at("components")) mix.components.push_back(direction_law_from_json(c));
      mix.weights = j.at("weights").get<std::vector<double>>();
      return mix;
    }
    fail(ErrorKind::law_validation, "unknown direction law '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::law_validation, std::string("malformed direction law: ") + e.what());
  }
}

void to_json(nlohmann::json& j, const LawSpec& law) {
  j = {{"cone", law.cone}, {"radial", law.radial}};
  if (law.direction) j["direction"] = *law.direction;
}

LawSpec law_spec_from_json(const nlohmann::json& j) {
  LawSpec law;
  try {
    law.cone = j.at("cone").get<ConeSpec>();
    law.radial = radial_law_from_json(j.at("radial"));
    if (j.contains("direction")) law.direction = direction_law_from_json(j.at("direction"));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::law_validation, std::string("malformed law spec: ") + e.what());
  }
  validate(law);
  return law;
}

}  // namespace tailcone
