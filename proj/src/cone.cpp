#include "tailcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tailcone/error.hpp"

namespace tailcone {

std::string_view to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::euclidean_rd: return "euclidean_rd";
    case ConeKind::lp_rd: return "lp_rd";
    case ConeKind::sup_rd: return "sup_rd";
    case ConeKind::max_cone_rplus: return "max_cone_rplus";
  }
  return "unknown";
}

ConeKind cone_kind_from_string(std::string_view name) {
  for (auto kind : {ConeKind::euclidean_rd, ConeKind::lp_rd, ConeKind::sup_rd,
                    ConeKind::max_cone_rplus}) {
    if (to_string(kind) == name) return kind;
  }
  fail(ErrorKind::input, "unknown cone kind '" + std::string(name) + "'");
}

void ConeSpec::validate() const {
  if (dimension < 1) fail(ErrorKind::input, "cone dimension must be >= 1");
  if (kind == ConeKind::lp_rd && !(p >= 1.0 && std::isfinite(p))) {
    fail(ErrorKind::input, "lp_rd requires a finite p >= 1");
  }
  if (kind == ConeKind::max_cone_rplus && dimension != 1) {
    fail(ErrorKind::input, "max_cone_rplus has dimension 1");
  }
}

void check_element(const ConeSpec& spec, ElementView x) {
  if (x.size() != spec.dimension) {
    fail(ErrorKind::input, "element has " + std::to_string(x.size()) +
                               " coordinates, cone dimension is " +
                               std::to_string(spec.dimension));
  }
  for (double v : x) {
    if (!std::isfinite(v)) fail(ErrorKind::input, "non-finite coordinate");
  }
  if (spec.kind == ConeKind::max_cone_rplus && x[0] < 0.0) {
    fail(ErrorKind::input, "max-cone elements must be nonnegative");
  }
}

namespace {

double max_abs(ElementView x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

// Accumulated in extended precision so that the rounded result is within
// about one ulp of the exact norm; this keeps norm(c x) = c norm(x) to a few
// ulp. The extended exponent range also rules out overflow of |x|^p.
double power_norm(ElementView x, double p) {
  long double acc = 0.0L;
  if (p == 2.0) {
    for (double v : x) acc += static_cast<long double>(v) * v;
    return static_cast<double>(std::sqrt(acc));
  }
  if (p == 1.0) {
    for (double v : x) acc += std::fabs(static_cast<long double>(v));
    return static_cast<double>(acc);
  }
  const long double lp = p;
  for (double v : x) acc += std::pow(std::fabs(static_cast<long double>(v)), lp);
  return static_cast<double>(std::pow(acc, 1.0L / lp));
}

}  // namespace

double norm(const ConeSpec& spec, ElementView x) {
  if (x.size() != spec.dimension) {
    fail(ErrorKind::input, "dimension mismatch in norm");
  }
  switch (spec.kind) {
    case ConeKind::euclidean_rd: return power_norm(x, 2.0);
    case ConeKind::lp_rd: return power_norm(x, spec.p);
    case ConeKind::sup_rd: return max_abs(x);
    case ConeKind::max_cone_rplus: return std::fabs(x[0]);
  }
  return 0.0;
}

void direction_into(const ConeSpec& spec, ElementView x, std::span<double> out) {
  const double r = norm(spec, x);
  if (!(r > 0.0) || !std::isfinite(r)) {
    fail(ErrorKind::degenerate_element, "the origin has no direction");
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / r;
}

ConeElement direction(const ConeSpec& spec, ElementView x) {
  ConeElement out(x.size());
  direction_into(spec, x, out);
  return out;
}

// ---------------------------------------------------------------------------
// Sphere sets

SphereSet SphereSet::cap(ConeElement center, double angular_radius) {
  return SphereSet(Cap{std::move(center), angular_radius});
}

SphereSet SphereSet::box(std::vector<double> lower, std::vector<double> upper) {
  return SphereSet(Box{std::move(lower), std::move(upper)});
}

SphereSet SphereSet::finite_union(std::vector<SphereSet> members) {
  return SphereSet(Union{std::move(members)});
}

SphereSet SphereSet::complement(SphereSet inner) {
  return SphereSet(Complement{std::make_shared<const SphereSet>(std::move(inner))});
}

SphereSet SphereSet::whole_sphere() { return SphereSet(Whole{}); }

double euclidean_angle(ElementView a, ElementView b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

void validate(const ConeSpec& spec, const SphereSet& set) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, SphereSet::Cap>) {
          check_element(spec, node.center);
          if (std::fabs(norm(spec, node.center) - 1.0) > kInputUnitTolerance) {
            fail(ErrorKind::input, "cap center must have unit norm");
          }
          if (!(node.angular_radius > 0.0 && node.angular_radius <= std::numbers::pi)) {
            fail(ErrorKind::input, "cap angular radius must lie in (0, pi]");
          }
        } else if constexpr (std::is_same_v<T, SphereSet::Box>) {
          if (node.lower.size() != spec.dimension || node.upper.size() != spec.dimension) {
            fail(ErrorKind::input, "box bounds must match the cone dimension");
          }
          for (std::size_t i = 0; i < spec.dimension; ++i) {
            if (std::isnan(node.lower[i]) || std::isnan(node.upper[i]) ||
                node.lower[i] > node.upper[i]) {
              fail(ErrorKind::input, "box bounds must satisfy lower <= upper");
            }
          }
        } else if constexpr (std::is_same_v<T, SphereSet::Union>) {
          for (const auto& m : node.members) validate(spec, m);
        } else if constexpr (std::is_same_v<T, SphereSet::Complement>) {
          if (!node.inner) fail(ErrorKind::input, "complement of nothing");
          validate(spec, *node.inner);
        }
      },
      set.node());
}

bool sphere_contains_unchecked(const ConeSpec& spec, const SphereSet& set, ElementView u) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, SphereSet::Cap>) {
          return euclidean_angle(node.center, u) <= node.angular_radius;
        } else if constexpr (std::is_same_v<T, SphereSet::Box>) {
          for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] < node.lower[i] || u[i] > node.upper[i]) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, SphereSet::Union>) {
          return std::any_of(node.members.begin(), node.members.end(),
                             [&](const SphereSet& m) {
                               return sphere_contains_unchecked(spec, m, u);
                             });
        } else if constexpr (std::is_same_v<T, SphereSet::Complement>) {
          return !sphere_contains_unchecked(spec, *node.inner, u);
        } else {
          return true;
        }
      },
      set.node());
}

bool sphere_contains(const ConeSpec& spec, const SphereSet& set, ElementView u) {
  check_element(spec, u);
  if (std::fabs(norm(spec, u) - 1.0) > kInputUnitTolerance) {
    fail(ErrorKind::input, "point is not on the unit sphere");
  }
  return sphere_contains_unchecked(spec, set, u);
}

double boundary_distance(const ConeSpec& spec, const SphereSet& set, ElementView u) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, SphereSet::Cap>) {
          return std::fabs(euclidean_angle(node.center, u) - node.angular_radius);
        } else if constexpr (std::is_same_v<T, SphereSet::Box>) {
          double d = inf;
          for (std::size_t i = 0; i < u.size(); ++i) {
            if (std::isfinite(node.lower[i])) d = std::min(d, std::fabs(u[i] - node.lower[i]));
            if (std::isfinite(node.upper[i])) d = std::min(d, std::fabs(u[i] - node.upper[i]));
          }
          return d;
        } else if constexpr (std::is_same_v<T, SphereSet::Union>) {
          double d = inf;
          for (const auto& m : node.members) d = std::min(d, boundary_distance(spec, m, u));
          return d;
        } else if constexpr (std::is_same_v<T, SphereSet::Complement>) {
          return boundary_distance(spec, *node.inner, u);
        } else {
          return inf;
        }
      },
      set.node());
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json& j, const ConeSpec& spec) {
  j = nlohmann::json{{"kind", to_string(spec.kind)}, {"dimension", spec.dimension}};
  if (spec.kind == ConeKind::lp_rd) j["p"] = spec.p;
}

void from_json(const nlohmann::json& j, ConeSpec& spec) {
  try {
    spec.kind = cone_kind_from_string(j.at("kind").get<std::string>());
    spec.dimension = j.value("dimension", std::size_t{1});
    spec.p = spec.kind == ConeKind::lp_rd ? j.at("p").get<double>() : 2.0;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("malformed cone spec: ") + e.what());
  }
  spec.validate();
}

namespace {

// JSON has no infinities; unbounded box sides are written as null.
nlohmann::json bounds_to_json(const std::vector<double>& v) {
  auto out = nlohmann::json::array();
  for (double x : v) {
    if (std::isfinite(x)) {
      out.push_back(x);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

std::vector<double> bounds_from_json(const nlohmann::json& j, double unbounded) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(x.is_null() ? unbounded : x.get<double>());
  return out;
}

}  // namespace

void to_json(nlohmann::json& j, const SphereSet& set) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, SphereSet::Cap>) {
          j = {{"type", "cap"}, {"center", node.center}, {"angular_radius", node.angular_radius}};
        } else if constexpr (std::is_same_v<T, SphereSet::Box>) {
          j = {{"type", "box"}, {"lower", bounds_to_json(node.lower)},
               {"upper", bounds_to_json(node.upper)}};
        } else if constexpr (std::is_same_v<T, SphereSet::Union>) {
          auto members = nlohmann::json::array();
          for (const auto& m : node.members) members.push_back(m);
          j = {{"type", "finite_union"}, {"sets", std::move(members)}};
        } else if constexpr (std::is_same_v<T, SphereSet::Complement>) {
          j = {{"type", "complement"}, {"set", *node.inner}};
        } else {
          j = {{"type", "whole_sphere"}};
        }
      },
      set.node());
}

SphereSet sphere_set_from_json(const nlohmann::json& j) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "cap") {
      return SphereSet::cap(j.at("center").get<ConeElement>(),
                            j.at("angular_radius").get<double>());
    }
    if (type == "box") {
      return SphereSet::box(bounds_from_json(j.at("lower"), -inf),
                            bounds_from_json(j.at("upper"), inf));
    }
    if (type == "finite_union") {
      std::vector<SphereSet> members;
      for (const auto& m : j.at("sets")) members.push_back(sphere_set_from_json(m));
      return SphereSet::finite_union(std::move(members));
    }
    if (type == "complement") return SphereSet::complement(sphere_set_from_json(j.at("set")));
    if (type == "whole_sphere") return SphereSet::whole_sphere();
    fail(ErrorKind::input, "unknown sphere set type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("malformed sphere set: ") + e.what());
  }
}

}  // namespace tailcone
