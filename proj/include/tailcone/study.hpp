#pragma once

// Monte Carlo studies: repeated sampling from a known law, estimation on each
// replicate, and per-N summaries of bias, RMSE and interval coverage.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tailcone/cone.hpp"
#include "tailcone/error.hpp"
#include "tailcone/planner.hpp"
#include "tailcone/synth.hpp"

namespace tailcone {

struct StudySpec {
  LawSpec law;
  std::vector<std::size_t> sample_sizes;
  PlanRequest plan;
  std::size_t replicates = 2;
  double level = 0.95;
  std::uint64_t seed = 0;
  std::optional<SphereSet> query_set;
  std::optional<double> sigma_true;  // derived from a discrete direction law if absent
};

void validate(const StudySpec& spec);
StudySpec study_spec_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const StudySpec& spec);

// Exact mass of a sphere set under a direction law, where computable
// (discrete atoms and mixtures of them).
std::optional<double> direction_mass(const ConeSpec& cone, const DirectionLaw& law,
                                     const SphereSet& set);

// Outcome of one replicate. Fields stay NaN when their stage failed.
struct ReplicateResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string error;
  std::optional<ErrorKind> error_kind;
  double alpha_hat = std::numeric_limits<double>::quiet_NaN();
  double kappa_mean = std::numeric_limits<double>::quiet_NaN();
  double kappa_var = std::numeric_limits<double>::quiet_NaN();
  double studentized = std::numeric_limits<double>::quiet_NaN();
  std::optional<bool> alpha_covered;
  double p_hat = std::numeric_limits<double>::quiet_NaN();
  std::optional<bool> sigma_covered;

  bool ok() const { return error.empty(); }
};

struct MetricSummary {
  std::size_t count = 0;  // replicates contributing
  double mean = 0.0;
  double bias = 0.0;
  double rmse = 0.0;
  std::optional<double> coverage;  // over replicates with an interval
  std::size_t intervals = 0;
};

struct StudyRow {
  std::size_t N = 0;
  GroupingPlan plan;
  std::size_t replicates = 0;
  std::size_t failures = 0;
  std::vector<std::string> errors;  // first few failure messages
  MetricSummary alpha;
  std::optional<MetricSummary> sigma;
  std::optional<double> studentized_ks;
  std::vector<ReplicateResult> details;
};

struct StudyResult {
  std::vector<StudyRow> rows;
  bool any_failed() const;
  // Kind of the first failed replicate in row order.
  std::optional<ErrorKind> first_failure() const;
};

// One replicate of size N: sample, group, estimate.
ReplicateResult run_replicate(const StudySpec& spec, std::size_t N, const GroupingPlan& plan,
                              std::size_t index, std::uint64_t seed);

// Replicate r of sample size N_k is seeded with derive_seed(seed, k *
// replicates + r); results are aggregated in index order.
StudyResult run_study(const StudySpec& spec, unsigned jobs = 1);

// Per-replicate details are omitted from the JSON table.
void to_json(nlohmann::json& j, const StudyRow& row);
void to_json(nlohmann::json& j, const StudyResult& result);

}  // namespace tailcone
