// distls: plan, simulate and bound distributed online least-squares runs.
//
//   distls plan <config.json> [-o plan.json]
//   distls simulate <config.json> -o trace.csv [--parallel-runs N]
//   distls bounds <config.json> --at 100,1620

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distls/commands.hpp"
#include "distls/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Distributed online least-squares estimation: planner, simulator and error bounds"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string output_path;
  int parallel_runs = 1;
  std::vector<long> at;

  auto* plan = app.add_subcommand("plan", "Compute consensus steps T and stopping time S");
  plan->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  plan->add_option("-o,--output", output_path, "JSON result file")->default_val("plan.json");

  auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo simulation and write a CSV trace");
  simulate->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  simulate->add_option("-o,--output", output_path, "trace CSV")->required();
  simulate->add_option("--parallel-runs", parallel_runs, "worker threads for independent runs")
      ->check(CLI::PositiveNumber);

  auto* bounds = app.add_subcommand("bounds", "Evaluate the error bounds at given times");
  bounds->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  bounds->add_option("--at", at, "comma-separated times")->required()->delimiter(',');

  bool show_isa = false;
  app.add_flag("--isa", show_isa, "Print the active kernel variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : distls::cli::kConfigError;
  }

  if (show_isa) {
    std::cout << distls::kernels::isa_name(distls::kernels::active_isa()) << '\n';
    if (app.get_subcommands().empty()) return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return distls::cli::kConfigError;
  }
  if (*plan) return distls::cli::cmd_plan(config_path, output_path, std::cout, std::cerr);
  if (*simulate) return distls::cli::cmd_simulate(config_path, output_path, parallel_runs, std::cout, std::cerr);
  return distls::cli::cmd_bounds(config_path, at, std::cout, std::cerr);
}
