#include "tailcone/study.hpp"

#include <cmath>

#include "tailcone/diagnostics.hpp"
#include "tailcone/error.hpp"
#include "tailcone/grouping.hpp"
#include "tailcone/parallel.hpp"
#include "tailcone/random.hpp"
#include "tailcone/spectral.hpp"
#include "tailcone/tail_index.hpp"

namespace tailcone {

namespace {
constexpr std::size_t kMaxReportedErrors = 5;
}

std::optional<double> direction_mass(const ConeSpec& cone, const DirectionLaw& law,
                                     const SphereSet& set) {
  return std::visit(
      [&](const auto& l) -> std::optional<double> {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, DiscreteDirection>) {
          double mass = 0.0;
          for (std::size_t i = 0; i < l.atoms.size(); ++i) {
            if (sphere_contains_unchecked(cone, set, l.atoms[i])) mass += l.weights[i];
          }
          return mass;
        } else if constexpr (std::is_same_v<T, MixtureDirection>) {
          double mass = 0.0;
          for (std::size_t i = 0; i < l.components.size(); ++i) {
            auto part = direction_mass(cone, l.components[i], set);
            if (!part) return std::nullopt;
            mass += l.weights[i] * *part;
          }
          return mass;
        } else {
          return std::nullopt;
        }
      },
      law);
}

void validate(const StudySpec& spec) {
  validate(spec.law);
  if (spec.sample_sizes.empty()) fail(ErrorKind::input, "study needs at least one N");
  if (spec.replicates < 2) fail(ErrorKind::input, "study needs replicates >= 2");
  if (!(spec.level > 0.0 && spec.level < 1.0)) fail(ErrorKind::input, "level must lie in (0, 1)");
  if (spec.query_set) validate(spec.law.cone, *spec.query_set);
}

StudySpec study_spec_from_json(const nlohmann::json& j) {
  StudySpec spec;
  try {
    spec.law = law_spec_from_json(j.at("law"));
    const auto& sizes = j.at("N");
    if (sizes.is_array()) {
      spec.sample_sizes = sizes.get<std::vector<std::size_t>>();
    } else {
      spec.sample_sizes = {sizes.get<std::size_t>()};
    }
    spec.plan = plan_request_from_json(j.at("plan"));
    spec.replicates = j.at("replicates").get<std::size_t>();
    spec.level = j.value("level", 0.95);
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("query_set")) spec.query_set = sphere_set_from_json(j.at("query_set"));
    if (j.contains("sigma_true")) spec.sigma_true = j.at("sigma_true").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("malformed study spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

void to_json(nlohmann::json& j, const StudySpec& spec) {
  j = {{"law", spec.law},       {"N", spec.sample_sizes}, {"plan", spec.plan},
       {"replicates", spec.replicates}, {"level", spec.level}, {"seed", spec.seed}};
  if (spec.query_set) j["query_set"] = *spec.query_set;
  if (spec.sigma_true) j["sigma_true"] = *spec.sigma_true;
}

ReplicateResult run_replicate(const StudySpec& spec, std::size_t N, const GroupingPlan& plan,
                              std::size_t index, std::uint64_t seed) {
  ReplicateResult r;
  r.index = index;
  r.seed = seed;
  const double alpha_true = radial_alpha(spec.law.radial);
  try {
    const Dataset data = sample(N, spec.law, seed);
    const auto summaries = summarize(data, plan);
    const KappaMoments k = kappa_moments(summaries);
    r.kappa_mean = k.mean;
    r.kappa_var = k.var;
    if (k.var > 0.0) r.studentized = studentized_stat(k, alpha_true);

    const AlphaEstimate est = estimate_alpha(summaries, spec.level);
    r.alpha_hat = est.alpha_hat;
    if (est.ci) r.alpha_covered = est.ci->lower <= alpha_true && alpha_true <= est.ci->upper;

    if (spec.query_set) {
      const auto spectral = estimate_spectral(summaries, data.spec());
      const auto q = query(spectral, *spec.query_set, spec.level);
      r.p_hat = q.p_hat;
      if (q.ci && spec.sigma_true) {
        r.sigma_covered = q.ci->lower <= *spec.sigma_true && *spec.sigma_true <= q.ci->upper;
      }
    }
  } catch (const Error& e) {
    r.error = std::string(to_string(e.kind())) + ": " + e.what();
    r.error_kind = e.kind();
  }
  return r;
}

namespace {

MetricSummary summarize_metric(const std::vector<ReplicateResult>& reps, double truth,
                               double ReplicateResult::*value,
                               std::optional<bool> ReplicateResult::*covered) {
  MetricSummary s;
  double sum = 0.0, sq = 0.0;
  std::size_t hits = 0;
  for (const auto& r : reps) {
    const double v = r.*value;
    if (std::isfinite(v)) {
      ++s.count;
      sum += v;
      sq += (v - truth) * (v - truth);
    }
    if ((r.*covered).has_value()) {
      ++s.intervals;
      if (*(r.*covered)) ++hits;
    }
  }
  if (s.count > 0) {
    s.mean = sum / static_cast<double>(s.count);
    s.bias = s.mean - truth;
    s.rmse = std::sqrt(sq / static_cast<double>(s.count));
  }
  if (s.intervals > 0) s.coverage = static_cast<double>(hits) / static_cast<double>(s.intervals);
  return s;
}

}  // namespace

bool StudyResult::any_failed() const {
  for (const auto& row : rows) {
    if (row.failures > 0) return true;
  }
  return false;
}

std::optional<ErrorKind> StudyResult::first_failure() const {
  for (const auto& row : rows) {
    for (const auto& r : row.details) {
      if (r.error_kind) return r.error_kind;
    }
  }
  return std::nullopt;
}

StudyResult run_study(const StudySpec& input, unsigned jobs) {
  StudySpec spec = input;
  validate(spec);
  if (spec.query_set && !spec.sigma_true && spec.law.direction) {
    spec.sigma_true = direction_mass(spec.law.cone, *spec.law.direction, *spec.query_set);
  }
  const double alpha_true = radial_alpha(spec.law.radial);

  StudyResult result;
  for (std::size_t k = 0; k < spec.sample_sizes.size(); ++k) {
    const std::size_t N = spec.sample_sizes[k];
    StudyRow row;
    row.N = N;
    row.replicates = spec.replicates;
    row.plan = spec.plan.resolve(N);
    row.details.resize(spec.replicates);
    parallel_for(spec.replicates, jobs, [&](std::size_t i) {
      const std::size_t index = k * spec.replicates + i;
      row.details[i] = run_replicate(spec, N, row.plan, i, derive_seed(spec.seed, index));
    });

    std::vector<double> stats;
    for (const auto& r : row.details) {
      if (!r.ok()) {
        ++row.failures;
        if (row.errors.size() < kMaxReportedErrors) {
          row.errors.push_back("replicate " + std::to_string(r.index) + ": " + r.error);
        }
      }
      if (std::isfinite(r.studentized)) stats.push_back(r.studentized);
    }
    row.alpha = summarize_metric(row.details, alpha_true, &ReplicateResult::alpha_hat,
                                 &ReplicateResult::alpha_covered);
    if (spec.query_set) {
      row.sigma = summarize_metric(row.details, spec.sigma_true.value_or(std::nan("")),
                                   &ReplicateResult::p_hat, &ReplicateResult::sigma_covered);
    }
    if (!stats.empty()) row.studentized_ks = ks_distance(stats, standard_normal_cdf);
    result.rows.push_back(std::move(row));
  }
  return result;
}

namespace {

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json metric_json(const MetricSummary& s) {
  nlohmann::json j = {{"count", s.count},
                      {"mean", finite_or_null(s.mean)},
                      {"bias", finite_or_null(s.bias)},
                      {"rmse", finite_or_null(s.rmse)},
                      {"intervals", s.intervals}};
  j["coverage"] = s.coverage ? nlohmann::json(*s.coverage) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

void to_json(nlohmann::json& j, const StudyRow& row) {
  j = {{"N", row.N},
       {"plan", row.plan},
       {"replicates", row.replicates},
       {"failures", row.failures},
       {"errors", row.errors},
       {"alpha", metric_json(row.alpha)}};
  if (row.sigma) j["sigma"] = metric_json(*row.sigma);
  j["studentized_ks"] = row.studentized_ks ? nlohmann::json(*row.studentized_ks) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const StudyResult& result) {
  j = nlohmann::json::array();
  for (const auto& row : result.rows) j.push_back(row);
}

}  // namespace tailcone
