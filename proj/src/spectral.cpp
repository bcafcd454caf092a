#include "tailcone/spectral.hpp"

#include <cmath>
#include <ostream>

#include "tailcone/dataset.hpp"
#include "tailcone/error.hpp"

namespace tailcone {

SpectralEstimate estimate_spectral(std::span<const GroupSummary> summaries, const ConeSpec& cone) {
  if (summaries.empty()) fail(ErrorKind::input, "no group summaries");
  SpectralEstimate est;
  est.cone = cone;
  est.atoms.reserve(summaries.size());
  for (const auto& s : summaries) {
    if (s.theta.size() != cone.dimension) {
      fail(ErrorKind::input, "summary direction does not match the cone dimension");
    }
    est.atoms.push_back(s.theta);
  }
  est.weight = 1.0 / static_cast<double>(est.atoms.size());
  return est;
}

SpectralQueryResult measure_of(const SpectralEstimate& estimate, const SphereSet& set) {
  if (estimate.atoms.empty()) fail(ErrorKind::input, "empty spectral estimate");
  validate(estimate.cone, set);
  SpectralQueryResult r;
  r.set = set;
  r.n = estimate.n();
  for (const auto& atom : estimate.atoms) {
    if (sphere_contains_unchecked(estimate.cone, set, atom)) ++r.count;
  }
  r.p_hat = static_cast<double>(r.count) / static_cast<double>(r.n);
  return r;
}

Interval spectral_ci(double p_hat, std::size_t n, double level) {
  if (n < 2) fail(ErrorKind::input, "spectral interval needs n >= 2");
  if (!(p_hat > 0.0 && p_hat < 1.0)) {
    fail(ErrorKind::degenerate_variance, "estimated mass is 0 or 1; the studentized statistic is undefined");
  }
  const double h = two_sided_z(level) * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
  return {p_hat - h, p_hat + h};
}

SpectralQueryResult query(const SpectralEstimate& estimate, const SphereSet& set, double level,
                          double boundary_tolerance) {
  SpectralQueryResult r = measure_of(estimate, set);
  r.level = level;
  try {
    r.ci = spectral_ci(r.p_hat, r.n, level);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::degenerate_variance) throw;
    r.ci_error = std::string(to_string(e.kind())) + ": " + e.what();
  }
  for (const auto& atom : estimate.atoms) {
    if (boundary_distance(estimate.cone, set, atom) <= boundary_tolerance) ++r.atoms_near_boundary;
  }
  return r;
}

std::vector<HistogramCell> partition_histogram(const SpectralEstimate& estimate,
                                               std::span<const SphereSet> cells) {
  if (estimate.atoms.empty()) fail(ErrorKind::input, "empty spectral estimate");
  std::vector<HistogramCell> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    validate(estimate.cone, c);
    out.push_back({c, 0, 0.0});
  }
  for (std::size_t a = 0; a < estimate.atoms.size(); ++a) {
    bool placed = false;
    for (auto& cell : out) {
      if (!sphere_contains_unchecked(estimate.cone, cell.set, estimate.atoms[a])) continue;
      if (placed) {
        fail(ErrorKind::overlapping_partition,
             "atom " + std::to_string(a) + " lies in more than one cell");
      }
      placed = true;
      ++cell.count;
    }
  }
  const double n = static_cast<double>(estimate.n());
  for (auto& cell : out) cell.p_hat = static_cast<double>(cell.count) / n;
  return out;
}

void write_atoms_csv(std::ostream& out, const SpectralEstimate& estimate) {
  for (const auto& atom : estimate.atoms) {
    for (std::size_t k = 0; k < atom.size(); ++k) out << (k ? "," : "") << format_double(atom[k]);
    out << '\n';
  }
}

void to_json(nlohmann::json& j, const SpectralQueryResult& r) {
  j = {{"set", r.set}, {"p_hat", r.p_hat}, {"count", r.count},
       {"n", r.n},     {"level", r.level}, {"atoms_near_boundary", r.atoms_near_boundary}};
  if (r.ci) {
    j["ci"] = {r.ci->lower, r.ci->upper};
    j["ci_outside_unit"] = r.ci_outside_unit();
  } else {
    j["ci"] = nullptr;
    j["ci_error"] = r.ci_error;
  }
}

void to_json(nlohmann::json& j, const HistogramCell& cell) {
  j = {{"set", cell.set}, {"count", cell.count}, {"p_hat", cell.p_hat}};
}

}  // namespace tailcone
