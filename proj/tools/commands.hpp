#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "tailcone/planner.hpp"

namespace tailcone::cli {

constexpr int kSchemaVersion = 1;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  double level = 0.95;
};

// Raw plan flags; resolved into a PlanRequest by plan_from_flags.
struct PlanFlags {
  std::optional<std::size_t> n, m;
  std::optional<double> r;
  std::optional<double> zeta;
  std::optional<double> beta;
  std::optional<double> alpha_pilot;
  std::optional<double> epsilon;
  std::string target = "alpha_estimation";
};

PlanRequest plan_from_flags(const PlanFlags& flags);

struct SimulateOptions {
  std::string law_path;
  std::size_t n_obs = 0;
  std::string out_path;
  bool header = false;
};

struct PlanOptions {
  std::size_t N = 0;
  PlanFlags plan;
};

struct EstimateOptions {
  std::string input_path;
  std::string cone;  // path, or inline JSON starting with '{'
  PlanFlags plan;
  std::optional<std::string> query_set_path;
  std::optional<std::string> summaries_out;
  std::optional<std::uint64_t> shuffle_seed;
};

struct SpectralOptions {
  std::string input_path;
  std::string cone;
  PlanFlags plan;
  std::optional<std::string> query_set_path;
  std::optional<std::string> partition_path;
  std::optional<std::string> atoms_out;
  std::optional<std::uint64_t> shuffle_seed;
};

struct StudyOptions {
  std::string study_path;
};

struct DiagnoseOptions {
  std::optional<std::string> input_path;
  std::optional<std::string> cone;
  std::optional<std::string> law_path;
  std::optional<std::size_t> n_obs;
  PlanFlags plan;
  double alpha_true = 0.0;
  std::optional<std::uint64_t> shuffle_seed;
};

// Each command writes exactly one JSON document to out, logs to err, and
// returns the process exit code. Library errors propagate as tailcone::Error.
int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o, std::ostream& out, std::ostream& err);
int cmd_plan(const GlobalOptions& g, const PlanOptions& o, std::ostream& out, std::ostream& err);
int cmd_estimate(const GlobalOptions& g, const EstimateOptions& o, std::ostream& out, std::ostream& err);
int cmd_spectral(const GlobalOptions& g, const SpectralOptions& o, std::ostream& out, std::ostream& err);
int cmd_mc_study(const GlobalOptions& g, const StudyOptions& o, std::ostream& out, std::ostream& err);
int cmd_diagnose(const GlobalOptions& g, const DiagnoseOptions& o, std::ostream& out, std::ostream& err);

// SHA-256 of a file's bytes, lowercase hex.
std::string file_digest(const std::string& path);

}  // namespace tailcone::cli
