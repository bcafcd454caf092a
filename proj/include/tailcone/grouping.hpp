#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "json.hpp"
#include "tailcone/cone.hpp"
#include "tailcone/dataset.hpp"

namespace tailcone {

enum class PlanSource { simple, second_order, explicit_sizes };

// n groups of m observations. The parameters that produced the sizes are kept
// so that reports can echo them.
struct GroupingPlan {
  std::size_t n = 1;
  std::size_t m = 2;
  PlanSource source = PlanSource::explicit_sizes;
  double r = 0.0;        // simple
  double zeta = 0.0;     // second_order; +infinity allowed
  double epsilon = 0.0;  // second_order

  static GroupingPlan explicit_sizes(std::size_t n, std::size_t m);

  // n >= 1, m >= 2.
  void validate() const;
  std::size_t used() const { return n * m; }
};

void to_json(nlohmann::json& j, const GroupingPlan& plan);

struct Partition {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t discarded = 0;

  // Group i covers observations [i*m, (i+1)*m).
  ElementView group(const Dataset& data, std::size_t i) const { return data.rows(i * m, m); }
};

// Contiguous blocks in original order; the trailing N - n*m observations are
// dropped and counted. Throws insufficient_data when N < n*m.
Partition partition(const Dataset& data, const GroupingPlan& plan);

struct GroupSummary {
  std::size_t group_index = 0;
  double m1 = 0.0;  // largest norm
  double m2 = 0.0;  // largest norm among the others
  double kappa = 0.0;
  ConeElement theta;  // direction of the first maximizer
  std::size_t argmax_offset = 0;
};

// `rows` is m consecutive elements stored flat (m * dimension values).
GroupSummary summarize_group(const ConeSpec& spec, ElementView rows, std::size_t group_index = 0);
GroupSummary summarize_group(const ConeSpec& spec, std::span<const ConeElement> group,
                             std::size_t group_index = 0);

// Partitions and summarizes every group, on `jobs` threads, in group order.
std::vector<GroupSummary> summarize(const Dataset& data, const GroupingPlan& plan,
                                    unsigned jobs = 1);

// Sum of the kappas.
double statistic_sn(std::span<const GroupSummary> summaries);

// group_index,m1,m2,kappa,theta_0..theta_{d-1}
void write_summaries_csv(std::ostream& out, std::span<const GroupSummary> summaries,
                         std::size_t dimension);

// Permutes observations with a seeded Fisher-Yates pass.
Dataset shuffled(const Dataset& data, std::uint64_t seed);

}  // namespace tailcone
