#pragma once

// Normed cones supported by the estimators: R^d under the Euclidean, l_p and
// sup norms, and the scalar max-cone (R_+, max). Every element x != 0 has a
// polar decomposition x = norm(x) * direction(x) with direction(x) on the unit
// sphere of the cone.

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace tailcone {

enum class ConeKind { euclidean_rd, lp_rd, sup_rd, max_cone_rplus };

std::string_view to_string(ConeKind kind);
ConeKind cone_kind_from_string(std::string_view name);

struct ConeSpec {
  ConeKind kind = ConeKind::euclidean_rd;
  std::size_t dimension = 1;
  double p = 2.0;  // only meaningful for lp_rd

  static ConeSpec euclidean(std::size_t d) { return {ConeKind::euclidean_rd, d, 2.0}; }
  static ConeSpec lp(std::size_t d, double p) { return {ConeKind::lp_rd, d, p}; }
  static ConeSpec sup(std::size_t d) { return {ConeKind::sup_rd, d, 2.0}; }
  static ConeSpec max_cone() { return {ConeKind::max_cone_rplus, 1, 2.0}; }

  // Throws ErrorKind::input when the invariants do not hold.
  void validate() const;

  friend bool operator==(const ConeSpec&, const ConeSpec&) = default;
};

using ConeElement = std::vector<double>;
using ElementView = std::span<const double>;

inline constexpr double kInputUnitTolerance = 1e-9;
inline constexpr double kDirectionTolerance = 1e-12;

// Rejects wrong dimension, non-finite coordinates and negative max-cone values.
void check_element(const ConeSpec& spec, ElementView x);

double norm(const ConeSpec& spec, ElementView x);

// x / norm(x). The origin has no direction and raises degenerate_element.
ConeElement direction(const ConeSpec& spec, ElementView x);

// Writes direction(x) into out without allocating; out.size() == dimension.
void direction_into(const ConeSpec& spec, ElementView x, std::span<double> out);

// Measurable subsets of the unit sphere used as spectral queries.
class SphereSet {
 public:
  struct Cap {
    ConeElement center;
    double angular_radius = 0.0;
  };
  struct Box {
    // Per-coordinate closed bounds; +-infinity means unbounded.
    std::vector<double> lower;
    std::vector<double> upper;
  };
  struct Union {
    std::vector<SphereSet> members;
  };
  struct Complement {
    std::shared_ptr<const SphereSet> inner;
  };
  struct Whole {};

  using Node = std::variant<Cap, Box, Union, Complement, Whole>;

  static SphereSet cap(ConeElement center, double angular_radius);
  static SphereSet box(std::vector<double> lower, std::vector<double> upper);
  static SphereSet finite_union(std::vector<SphereSet> members);
  static SphereSet complement(SphereSet inner);
  static SphereSet whole_sphere();

  const Node& node() const { return node_; }

 private:
  explicit SphereSet(Node node) : node_(std::move(node)) {}
  Node node_;
};

// Throws ErrorKind::input for sets that do not fit the cone.
void validate(const ConeSpec& spec, const SphereSet& set);

// Membership test; u must have unit norm within kInputUnitTolerance.
bool sphere_contains(const ConeSpec& spec, const SphereSet& set, ElementView u);

// Same test without the unit-norm check, for atoms already produced by
// direction().
bool sphere_contains_unchecked(const ConeSpec& spec, const SphereSet& set, ElementView u);

// Distance (radians for caps, coordinate units for boxes) from u to the
// nearest boundary of the set; +infinity when the set has no boundary.
double boundary_distance(const ConeSpec& spec, const SphereSet& set, ElementView u);

// Euclidean angle between two nonzero vectors, in [0, pi].
double euclidean_angle(ElementView a, ElementView b);

void to_json(nlohmann::json& j, const ConeSpec& spec);
void from_json(const nlohmann::json& j, ConeSpec& spec);
void to_json(nlohmann::json& j, const SphereSet& set);
SphereSet sphere_set_from_json(const nlohmann::json& j);

}  // namespace tailcone
