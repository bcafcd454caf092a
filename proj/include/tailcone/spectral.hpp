#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tailcone/cone.hpp"
#include "tailcone/grouping.hpp"
#include "tailcone/tail_index.hpp"

namespace tailcone {

// Empirical spectral measure: one atom of mass 1/n at the direction of each
// group maximum.
struct SpectralEstimate {
  std::vector<ConeElement> atoms;
  double weight = 0.0;
  ConeSpec cone;

  std::size_t n() const { return atoms.size(); }
};

SpectralEstimate estimate_spectral(std::span<const GroupSummary> summaries, const ConeSpec& cone);

struct SpectralQueryResult {
  SphereSet set = SphereSet::whole_sphere();
  double p_hat = 0.0;
  std::size_t count = 0;
  std::size_t n = 0;
  double level = 0.95;
  std::optional<Interval> ci;
  std::string ci_error;  // set when p_hat is 0 or 1
  std::size_t atoms_near_boundary = 0;

  bool ci_outside_unit() const { return ci && (ci->lower < 0.0 || ci->upper > 1.0); }
};

// Fraction of atoms inside `set`; no interval attached.
SpectralQueryResult measure_of(const SpectralEstimate& estimate, const SphereSet& set);

// p_hat -+ z * sqrt(p_hat (1 - p_hat) / n), unclamped. p_hat in {0, 1} raises
// degenerate_variance.
Interval spectral_ci(double p_hat, std::size_t n, double level);

// measure_of plus the interval (or the reason it is missing) and a count of
// atoms within `boundary_tolerance` of the set's boundary.
SpectralQueryResult query(const SpectralEstimate& estimate, const SphereSet& set, double level,
                          double boundary_tolerance = 1e-9);

struct HistogramCell {
  SphereSet set = SphereSet::whole_sphere();
  std::size_t count = 0;
  double p_hat = 0.0;
};

// Mass of each cell of a partition of the sphere. An atom falling in two
// cells raises overlapping_partition.
std::vector<HistogramCell> partition_histogram(const SpectralEstimate& estimate,
                                               std::span<const SphereSet> cells);

// One atom per row, d columns.
void write_atoms_csv(std::ostream& out, const SpectralEstimate& estimate);

void to_json(nlohmann::json& j, const SpectralQueryResult& result);
void to_json(nlohmann::json& j, const HistogramCell& cell);

}  // namespace tailcone
