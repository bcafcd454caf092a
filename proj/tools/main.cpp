#include <cstdlib>
#include <functional>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "tailcone/error.hpp"

namespace {

using namespace tailcone::cli;

void add_plan_flags(CLI::App* cmd, PlanFlags& f) {
  cmd->add_option("--n", f.n, "number of groups (explicit plan, with --m)");
  cmd->add_option("--m", f.m, "group size (explicit plan, with --n)");
  cmd->add_option("--r", f.r, "simple plan: n = floor(N^r)")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--zeta", f.zeta, "second-order plan with known zeta (may be inf)");
  cmd->add_option("--alpha-pilot", f.alpha_pilot, "second-order plan: pilot tail index");
  cmd->add_option("--beta", f.beta, "second-order plan: second-order index (default 2 alpha)");
  cmd->add_option("--epsilon", f.epsilon, "second-order plan: exponent slack");
  cmd->add_option("--target", f.target, "alpha_estimation | spectral_estimation")
      ->capture_default_str();
}

int report_error(const std::string& kind, const std::string& message, int code) {
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"error", kind},
                      {"message", message},
                      {"exit_code", code}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail index and spectral measure estimation by group-maxima ratios"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "random seed")->option_text("UINT");
  app.add_option("--jobs", global.jobs, "worker threads for mc-study")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--level", global.level, "confidence level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  std::function<int()> run;

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "draw a synthetic sample to CSV");
  simulate->add_option("--law", sim.law_path, "law spec JSON")->required();
  simulate->add_option("--n-obs", sim.n_obs, "number of observations")->required();
  simulate->add_option("--out", sim.out_path, "output CSV")->required();
  simulate->add_flag("--header", sim.header, "write a header row");
  simulate->callback([&] { run = [&] { return cmd_simulate(global, sim, std::cout, std::cerr); }; });

  PlanOptions pl;
  auto* plan = app.add_subcommand("plan", "resolve a grouping plan for N observations");
  plan->add_option("--N", pl.N, "sample size")->required();
  add_plan_flags(plan, pl.plan);
  plan->callback([&] { run = [&] { return cmd_plan(global, pl, std::cout, std::cerr); }; });

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "estimate the tail index");
  estimate->add_option("--input", est.input_path, "input CSV")->required();
  estimate->add_option("--cone", est.cone, "cone JSON file or inline JSON")->required();
  add_plan_flags(estimate, est.plan);
  estimate->add_option("--query-set", est.query_set_path, "sphere set JSON (object or array)");
  estimate->add_option("--summaries-out", est.summaries_out, "write group summaries CSV");
  estimate->add_option("--shuffle-seed", est.shuffle_seed, "shuffle rows before grouping");
  estimate->callback([&] { run = [&] { return cmd_estimate(global, est, std::cout, std::cerr); }; });

  SpectralOptions spe;
  auto* spectral = app.add_subcommand("spectral", "spectral measure queries and histograms");
  spectral->add_option("--input", spe.input_path, "input CSV")->required();
  spectral->add_option("--cone", spe.cone, "cone JSON file or inline JSON")->required();
  add_plan_flags(spectral, spe.plan);
  spectral->add_option("--query-set", spe.query_set_path, "sphere set JSON (object or array)");
  spectral->add_option("--partition", spe.partition_path, "JSON array of cells");
  spectral->add_option("--atoms-out", spe.atoms_out, "write atoms CSV");
  spectral->add_option("--shuffle-seed", spe.shuffle_seed, "shuffle rows before grouping");
  spectral->callback([&] { run = [&] { return cmd_spectral(global, spe, std::cout, std::cerr); }; });

  StudyOptions stu;
  auto* study = app.add_subcommand("mc-study", "Monte Carlo study over sample sizes");
  study->add_option("--study", stu.study_path, "study spec JSON")->required();
  study->callback([&] { run = [&] { return cmd_mc_study(global, stu, std::cout, std::cerr); }; });

  DiagnoseOptions dia;
  auto* diagnose = app.add_subcommand("diagnose", "limit-law diagnostics");
  diagnose->add_option("--input", dia.input_path, "input CSV");
  diagnose->add_option("--cone", dia.cone, "cone JSON for --input");
  diagnose->add_option("--law", dia.law_path, "law spec JSON to sample from");
  diagnose->add_option("--n-obs", dia.n_obs, "sample size for --law");
  diagnose->add_option("--alpha-true", dia.alpha_true, "true tail index")->required();
  diagnose->add_option("--shuffle-seed", dia.shuffle_seed, "shuffle rows before grouping");
  add_plan_flags(diagnose, dia.plan);
  diagnose->callback([&] { run = [&] { return cmd_diagnose(global, dia, std::cout, std::cerr); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("input error", e.what(), 2);
  }

  try {
    return run();
  } catch (const tailcone::Error& e) {
    return report_error(std::string(tailcone::to_string(e.kind())), e.what(),
                        tailcone::exit_code(e.kind()));
  } catch (const std::exception& e) {
    return report_error("internal error", e.what(), 1);
  }
}
