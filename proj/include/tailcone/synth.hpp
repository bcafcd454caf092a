#pragma once

// Seeded generators for laws with known tail index and spectral measure.
// Observations are X = R * Theta with the radius R and the direction Theta
// drawn independently, so the spectral measure is exactly the direction law
// and the norm has survival function G(x) for x >= 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tailcone/cone.hpp"
#include "tailcone/dataset.hpp"
#include "tailcone/random.hpp"

namespace tailcone {

struct ParetoRadial {
  double alpha = 1.0;
};

// G(x) = c1 x^-alpha + c2 x^-beta on [1, inf), c1 + c2 = 1.
struct SecondOrderRadial {
  double c1 = 1.0;
  double alpha = 1.0;
  double c2 = 0.0;
  double beta = 2.0;
};

// Second-order law with beta = 2 alpha, the expansion of a stable norm.
struct FristedtRadial {
  double alpha = 1.0;
  double c1 = 0.5;
  double c2 = 0.5;
};

using RadialLaw = std::variant<ParetoRadial, SecondOrderRadial, FristedtRadial>;

inline constexpr double kSupportMin = 1.0;

// Throws law_validation unless G is a strictly decreasing survival function
// with G(1) = 1.
void validate(const RadialLaw& law);

double radial_alpha(const RadialLaw& law);
// +infinity for the exact Pareto law.
double radial_beta(const RadialLaw& law);
// First-order constant C1 of G(x) ~ C1 x^-alpha.
double radial_c1(const RadialLaw& law);

// G(x) = P(R > x).
double radial_survival(const RadialLaw& law, double x);

// The x >= 1 with G(x) = u, for u in (0, 1).
double radial_inverse_cdf(const RadialLaw& law, double u);

struct DiscreteDirection {
  std::vector<ConeElement> atoms;
  std::vector<double> weights;
};

// A standard Gaussian vector scaled to unit cone norm; uniform on the sphere
// for the Euclidean cone.
struct UniformSphereDirection {
  std::size_t dimension = 2;
};

struct MixtureDirection;

using DirectionLaw = std::variant<DiscreteDirection, UniformSphereDirection, MixtureDirection>;

struct MixtureDirection {
  std::vector<DirectionLaw> components;
  std::vector<double> weights;
};

void validate(const ConeSpec& spec, const DirectionLaw& law);

// Draws one unit-norm direction into out.
void sample_direction(const ConeSpec& spec, const DirectionLaw& law, Xoshiro256& rng,
                      std::span<double> out);

// n_obs observations R_i * Theta_i; deterministic in seed.
Dataset sample(std::size_t n_obs, const RadialLaw& radial, const DirectionLaw& direction,
               const ConeSpec& spec, std::uint64_t seed);

// Scalar observations on the max-cone (R_+, max); every direction is 1.
Dataset sample_max_cone(std::size_t n_obs, const RadialLaw& radial, std::uint64_t seed);

// A complete generator description: cone, radial law, direction law.
struct LawSpec {
  ConeSpec cone;
  RadialLaw radial;
  std::optional<DirectionLaw> direction;  // absent for the max-cone
};

void validate(const LawSpec& law);
Dataset sample(std::size_t n_obs, const LawSpec& law, std::uint64_t seed);

void to_json(nlohmann::json& j, const RadialLaw& law);
RadialLaw radial_law_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const DirectionLaw& law);
DirectionLaw direction_law_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const LawSpec& law);
LawSpec law_spec_from_json(const nlohmann::json& j);

}  // namespace tailcone
