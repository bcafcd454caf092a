#include "commands.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "tailcone/dataset.hpp"
#include "tailcone/diagnostics.hpp"
#include "tailcone/error.hpp"
#include "tailcone/grouping.hpp"
#include "tailcone/spectral.hpp"
#include "tailcone/study.hpp"
#include "tailcone/synth.hpp"
#include "tailcone/tail_index.hpp"

namespace tailcone::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const std::string& path) {
  const auto text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::input, path + ": " + e.what());
  }
}

// Library JSON readers throw nlohmann exceptions on shape errors.
template <class F>
auto parse_with(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::input, what + ": " + e.what());
  }
}

ConeSpec load_cone(const std::string& arg) {
  json j;
  if (!arg.empty() && arg.front() == '{') {
    try {
      j = json::parse(arg);
    } catch (const json::exception& e) {
      fail(ErrorKind::input, std::string("--cone: ") + e.what());
    }
  } else {
    j = read_json(arg);
  }
  auto spec = parse_with("--cone", [&] { return j.get<ConeSpec>(); });
  spec.validate();
  return spec;
}

std::vector<SphereSet> load_sets(const std::string& path, const ConeSpec& cone) {
  const json j = read_json(path);
  std::vector<SphereSet> sets;
  parse_with(path, [&] {
    if (j.is_array()) {
      for (const auto& s : j) sets.push_back(sphere_set_from_json(s));
    } else {
      sets.push_back(sphere_set_from_json(j));
    }
    return 0;
  });
  for (const auto& s : sets) validate(cone, s);
  return sets;
}

PlanTarget parse_target(const std::string& name) {
  if (name == "alpha_estimation" || name == "alpha") return PlanTarget::alpha_estimation;
  if (name == "spectral_estimation" || name == "spectral") return PlanTarget::spectral_estimation;
  fail(ErrorKind::input, "unknown --target " + name);
}

json report_header(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}};
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

struct Grouped {
  Dataset data;
  GroupingPlan plan;
  std::size_t discarded = 0;
  std::vector<GroupSummary> summaries;
};

Grouped load_and_group(const std::string& input, const ConeSpec& cone, const PlanFlags& flags,
                       std::optional<std::uint64_t> shuffle_seed, std::ostream& err) {
  Grouped g{read_csv_file(input, cone), {}, 0, {}};
  const auto request = plan_from_flags(flags);
  g.plan = request.resolve(g.data.size());
  const auto part = partition(g.data, g.plan);
  g.discarded = part.discarded;
  if (shuffle_seed) g.data = shuffled(g.data, *shuffle_seed);
  err << "grouping " << g.data.size() << " observations into n=" << g.plan.n
      << " groups of m=" << g.plan.m << " (" << g.discarded << " discarded)\n";
  g.summaries = summarize(g.data, g.plan);
  return g;
}

json run_queries(const SpectralEstimate& est, const std::vector<SphereSet>& sets, double level,
                 std::ostream& err) {
  json queries = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto q = query(est, sets[i], level);
    if (q.atoms_near_boundary > 0) {
      err << "warning: query set " << i << " has " << q.atoms_near_boundary
          << " atom(s) within 1e-9 of its boundary\n";
    }
    if (!q.ci_error.empty()) err << "warning: query set " << i << ": " << q.ci_error << '\n';
    queries.push_back(q);
  }
  return queries;
}

void add_seed(json& doc, std::optional<std::uint64_t> seed) {
  doc["seed"] = seed ? json(*seed) : json(nullptr);
}

}  // namespace

PlanRequest plan_from_flags(const PlanFlags& f) {
  PlanRequest req;
  const bool explicit_sizes = f.n || f.m;
  const bool second = f.zeta || f.beta || f.alpha_pilot || f.epsilon;
  const int chosen = int(explicit_sizes) + int(f.r.has_value()) + int(second);
  if (chosen == 0) fail(ErrorKind::plan, "no plan given: use --n/--m, --r, or --zeta/--alpha-pilot");
  if (chosen > 1) fail(ErrorKind::plan, "plan flags from more than one plan family");
  if (explicit_sizes) {
    if (!f.n || !f.m) fail(ErrorKind::plan, "--n and --m must be given together");
    req.kind = PlanRequest::Kind::explicit_sizes;
    req.n = *f.n;
    req.m = *f.m;
  } else if (f.r) {
    req.kind = PlanRequest::Kind::simple;
    req.r = *f.r;
  } else {
    req.kind = PlanRequest::Kind::second_order;
    if (f.zeta) {
      if (f.alpha_pilot || f.beta) fail(ErrorKind::plan, "--zeta excludes --alpha-pilot/--beta");
      req.second_order = SecondOrderParams::from_zeta(*f.zeta, f.epsilon);
    } else {
      if (!f.alpha_pilot) fail(ErrorKind::plan, "second-order plan needs --zeta or --alpha-pilot");
      const double beta = f.beta ? *f.beta : default_beta(*f.alpha_pilot);
      req.second_order =
          SecondOrderParams::from_tail(*f.alpha_pilot, beta, parse_target(f.target), f.epsilon);
    }
  }
  return req;
}

std::string file_digest(const std::string& path) {
  const auto bytes = read_file(path);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::io, "sha256 failed for " + path);
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 0xf];
  }
  return "sha256:" + s;
}

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o, std::ostream& out,
                 std::ostream& err) {
  const json spec = read_json(o.law_path);
  const auto law = parse_with(o.law_path, [&] { return law_spec_from_json(spec); });
  validate(law);
  const std::uint64_t seed = g.seed.value_or(0);
  if (!g.seed) err << "no --seed given, using 0\n";
  const auto data = sample(o.n_obs, law, seed);
  write_csv_file(o.out_path, data, CsvOptions{o.header});
  err << "wrote " << data.size() << " rows to " << o.out_path << '\n';

  auto doc = report_header("simulate");
  doc["law"] = law;
  doc["n_obs"] = data.size();
  doc["out"] = o.out_path;
  doc["seed"] = seed;
  doc["output_digest"] = file_digest(o.out_path);
  emit(out, doc);
  return 0;
}

int cmd_plan(const GlobalOptions&, const PlanOptions& o, std::ostream& out, std::ostream&) {
  const auto request = plan_from_flags(o.plan);
  const auto plan = request.resolve(o.N);
  auto doc = report_header("plan");
  doc["N"] = o.N;
  doc["plan"] = plan;
  doc["discarded"] = o.N - plan.used();
  emit(out, doc);
  return 0;
}

int cmd_estimate(const GlobalOptions& g, const EstimateOptions& o, std::ostream& out,
                 std::ostream& err) {
  const auto cone = load_cone(o.cone);
  std::vector<SphereSet> sets;
  if (o.query_set_path) sets = load_sets(*o.query_set_path, cone);
  const auto grouped = load_and_group(o.input_path, cone, o.plan, o.shuffle_seed, err);
  const auto alpha = estimate_alpha(grouped.summaries, g.level);
  if (!alpha.ci_error.empty()) err << "warning: " << alpha.ci_error << '\n';
  if (alpha.ci_lower_negative()) err << "warning: confidence interval extends below 0\n";

  if (o.summaries_out) {
    std::ofstream f(*o.summaries_out);
    if (!f) fail(ErrorKind::io, "cannot write " + *o.summaries_out);
    write_summaries_csv(f, grouped.summaries, cone.dimension);
  }

  auto doc = report_header("estimate");
  doc["N"] = grouped.data.size();
  doc["plan"] = grouped.plan;
  doc["discarded"] = grouped.discarded;
  doc["alpha"] = alpha;
  if (!sets.empty()) {
    doc["spectral_queries"] =
        run_queries(estimate_spectral(grouped.summaries, cone), sets, g.level, err);
  }
  add_seed(doc, o.shuffle_seed);
  doc["input_digest"] = file_digest(o.input_path);
  emit(out, doc);
  return 0;
}

int cmd_spectral(const GlobalOptions& g, const SpectralOptions& o, std::ostream& out,
                 std::ostream& err) {
  const auto cone = load_cone(o.cone);
  std::vector<SphereSet> sets, cells;
  if (o.query_set_path) sets = load_sets(*o.query_set_path, cone);
  if (o.partition_path) cells = load_sets(*o.partition_path, cone);
  const auto grouped = load_and_group(o.input_path, cone, o.plan, o.shuffle_seed, err);
  const auto est = estimate_spectral(grouped.summaries, cone);

  if (o.atoms_out) {
    std::ofstream f(*o.atoms_out);
    if (!f) fail(ErrorKind::io, "cannot write " + *o.atoms_out);
    write_atoms_csv(f, est);
  }

  auto doc = report_header("spectral");
  doc["N"] = grouped.data.size();
  doc["plan"] = grouped.plan;
  doc["discarded"] = grouped.discarded;
  doc["atoms"] = est.n();
  doc["atom_weight"] = est.weight;
  doc["spectral_queries"] = run_queries(est, sets, g.level, err);
  if (!cells.empty()) doc["histogram"] = partition_histogram(est, cells);
  add_seed(doc, o.shuffle_seed);
  doc["input_digest"] = file_digest(o.input_path);
  emit(out, doc);
  return 0;
}

int cmd_mc_study(const GlobalOptions& g, const StudyOptions& o, std::ostream& out,
                 std::ostream& err) {
  const json j = read_json(o.study_path);
  auto spec = parse_with(o.study_path, [&] { return study_spec_from_json(j); });
  if (g.seed) spec.seed = *g.seed;
  validate(spec);
  err << "running " << spec.replicates << " replicates at " << spec.sample_sizes.size()
      << " sample size(s) on " << g.jobs << " job(s)\n";
  const auto result = run_study(spec, g.jobs);

  auto doc = report_header("mc-study");
  doc["study"] = spec;
  doc["rows"] = result;
  doc["seed"] = spec.seed;
  doc["input_digest"] = file_digest(o.study_path);
  emit(out, doc);

  if (const auto kind = result.first_failure()) {
    for (const auto& row : result.rows) {
      for (const auto& e : row.errors) err << "N=" << row.N << ": " << e << '\n';
    }
    return exit_code(*kind);
  }
  return 0;
}

int cmd_diagnose(const GlobalOptions& g, const DiagnoseOptions& o, std::ostream& out,
                 std::ostream& err) {
  if (o.input_path.has_value() == o.law_path.has_value()) {
    fail(ErrorKind::input, "diagnose needs exactly one of --input or --law");
  }
  if (!(o.alpha_true > 0.0)) fail(ErrorKind::input, "--alpha-true must be positive");

  auto doc = report_header("diagnose");
  std::optional<LawSpec> law;
  Dataset data = [&] {
    if (o.law_path) {
      const json j = read_json(*o.law_path);
      law = parse_with(*o.law_path, [&] { return law_spec_from_json(j); });
      validate(*law);
      if (!o.n_obs) fail(ErrorKind::input, "--law needs --n-obs");
      doc["law"] = *law;
      doc["input_digest"] = file_digest(*o.law_path);
      return sample(*o.n_obs, *law, g.seed.value_or(0));
    }
    if (!o.cone) fail(ErrorKind::input, "--input needs --cone");
    doc["input_digest"] = file_digest(*o.input_path);
    return read_csv_file(*o.input_path, load_cone(*o.cone));
  }();
  if (o.shuffle_seed) data = shuffled(data, *o.shuffle_seed);
  const auto plan = plan_from_flags(o.plan).resolve(data.size());
  const auto part = partition(data, plan);
  const auto summaries = summarize(data, plan);

  json results = json::array();
  auto uniform = kappa_uniformity(summaries, o.alpha_true);
  uniform.seed = g.seed;
  results.push_back(uniform);

  // With a known law the normalized group maxima can be checked against
  // their Poisson-arrival limits.
  if (law) {
    const auto lp = LimitParams::for_group_size(o.alpha_true, radial_c1(law->radial), plan.m);
    for (std::size_t k : {1u, 2u}) {
      std::vector<double> x;
      x.reserve(summaries.size());
      for (const auto& s : summaries) x.push_back((k == 1 ? s.m1 : s.m2) / lp.b_m);
      const double d = ks_distance(x, [&](double v) { return gamma_limit_cdf(o.alpha_true, k, v); });
      DiagnosticResult r;
      r.test = k == 1 ? "m1_limit" : "m2_limit";
      r.statistic = d;
      r.threshold = ks_critical(0.01, x.size());
      r.pass = d <= r.threshold;
      r.n = x.size();
      r.seed = g.seed;
      results.push_back(r);
    }
  }
  for (const auto& r : results) {
    if (!r["pass"].get<bool>()) err << "diagnostic " << r["test"].get<std::string>() << " rejected\n";
  }

  doc["plan"] = plan;
  doc["discarded"] = part.discarded;
  doc["alpha_true"] = o.alpha_true;
  doc["diagnostics"] = results;
  add_seed(doc, g.seed);
  emit(out, doc);
  return 0;
}

}  // namespace tailcone::cli
