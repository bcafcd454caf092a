#include "tailcone/grouping.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "tailcone/error.hpp"
#include "tailcone/parallel.hpp"
#include "tailcone/random.hpp"

namespace tailcone {

GroupingPlan GroupingPlan::explicit_sizes(std::size_t n, std::size_t m) {
  GroupingPlan plan;
  plan.n = n;
  plan.m = m;
  plan.source = PlanSource::explicit_sizes;
  plan.validate();
  return plan;
}

void GroupingPlan::validate() const {
  if (n < 1) fail(ErrorKind::plan, "plan needs at least one group");
  if (m < 2) fail(ErrorKind::plan, "group size must be >= 2, got " + std::to_string(m));
}

void to_json(nlohmann::json& j, const GroupingPlan& plan) {
  j = {{"n", plan.n}, {"m", plan.m}};
  switch (plan.source) {
    case PlanSource::simple:
      j["provenance"] = {{"type", "simple"}, {"r", plan.r}};
      break;
    case PlanSource::second_order: {
      nlohmann::json zeta = plan.zeta;
      if (std::isinf(plan.zeta)) zeta = "inf";
      j["provenance"] = {{"type", "second_order"}, {"zeta", zeta}, {"epsilon", plan.epsilon}};
      break;
    }
    case PlanSource::explicit_sizes:
      j["provenance"] = {{"type", "explicit"}};
      break;
  }
}

Partition partition(const Dataset& data, const GroupingPlan& plan) {
  plan.validate();
  const std::size_t need = plan.used();
  if (data.size() < need) {
    fail(ErrorKind::insufficient_data,
         "plan needs n*m = " + std::to_string(need) + " observations, dataset has " +
             std::to_string(data.size()));
  }
  return Partition{plan.n, plan.m, data.size() - need};
}

GroupSummary summarize_group(const ConeSpec& spec, ElementView rows, std::size_t group_index) {
  const std::size_t d = spec.dimension;
  if (rows.size() % d != 0) fail(ErrorKind::input, "group buffer does not hold whole elements");
  const std::size_t m = rows.size() / d;
  if (m < 2) fail(ErrorKind::input, "a group needs at least two elements");

  double m1 = -1.0;
  double m2 = -1.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double r = norm(spec, rows.subspan(j * d, d));
    if (r > m1) {
      m2 = m1;
      m1 = r;
      arg = j;
    } else if (r > m2) {
      m2 = r;
    }
  }
  if (!(m1 > 0.0)) {
    fail(ErrorKind::degenerate_group,
         "group " + std::to_string(group_index) + " has only zero-norm elements");
  }

  GroupSummary s;
  s.group_index = group_index;
  s.m1 = m1;
  s.m2 = m2;
  s.kappa = m2 / m1;
  s.argmax_offset = arg;
  s.theta = direction(spec, rows.subspan(arg * d, d));
  return s;
}

GroupSummary summarize_group(const ConeSpec& spec, std::span<const ConeElement> group,
                             std::size_t group_index) {
  std::vector<double> flat;
  flat.reserve(group.size() * spec.dimension);
  for (const auto& x : group) {
    check_element(spec, x);
    flat.insert(flat.end(), x.begin(), x.end());
  }
  return summarize_group(spec, flat, group_index);
}

std::vector<GroupSummary> summarize(const Dataset& data, const GroupingPlan& plan, unsigned jobs) {
  const Partition part = partition(data, plan);
  std::vector<GroupSummary> out(part.n);
  parallel_for(part.n, jobs, [&](std::size_t i) {
    out[i] = summarize_group(data.spec(), part.group(data, i), i);
  });
  return out;
}

double statistic_sn(std::span<const GroupSummary> summaries) {
  if (summaries.empty()) fail(ErrorKind::input, "S_n of an empty summary list");
  double sum = 0.0;
  for (const auto& s : summaries) sum += s.kappa;
  return sum;
}

void write_summaries_csv(std::ostream& out, std::span<const GroupSummary> summaries,
                         std::size_t dimension) {
  out << "group_index,m1,m2,kappa";
  for (std::size_t k = 0; k < dimension; ++k) out << ",theta_" << k;
  out << '\n';
  for (const auto& s : summaries) {
    out << s.group_index << ',' << format_double(s.m1) << ',' << format_double(s.m2) << ','
        << format_double(s.kappa);
    for (double t : s.theta) out << ',' << format_double(t);
    out << '\n';
  }
}

Dataset shuffled(const Dataset& data, std::uint64_t seed) {
  const std::size_t n = data.size();
  const std::size_t d = data.dimension();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Xoshiro256 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  std::vector<double> values;
  values.reserve(n * d);
  for (std::size_t i : order) {
    const auto row = data[i];
    values.insert(values.end(), row.begin(), row.end());
  }
  return Dataset(data.spec(), std::move(values));
}

}  // namespace tailcone
