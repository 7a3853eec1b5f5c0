#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

void add_common(CLI::App* cmd, fracvide::cli::RunConfig& c, std::string& format) {
  cmd->add_option("--problem", c.problem, "Built-in problem (ex1..ex5) or problem file")->required();
  cmd->add_option("--alpha", c.alpha_c, "Collocation Jacobi alpha")->capture_default_str();
  cmd->add_option("--beta", c.beta_c, "Collocation Jacobi beta")->capture_default_str();
  cmd->add_option("--out", c.out, "Output file (directory for reproduce; '-' for stdout in sweep)");
  cmd->add_option("--format", format, "Table format")
      ->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--gamma-override", c.gamma_override, "Override gamma for ex1");
  cmd->add_option("--quad-points", c.quad_points, "Points of the L2-norm rule")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using fracvide::cli::Command;
  fracvide::cli::RunConfig config;
  std::string format = "csv";

  CLI::App app{"Fractional Jacobi collocation for third-kind delay VIDEs"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve once and write nodal and sampled data");
  auto* sweep = app.add_subcommand("sweep", "Convergence sweep over N");
  auto* reproduce = app.add_subcommand("reproduce", "Run the published experiment for a built-in");
  for (auto* cmd : {solve, sweep, reproduce}) add_common(cmd, config, format);
  for (auto* cmd : {solve, sweep}) {
    auto* n = cmd->add_option("--n", config.n, "Degree N, or start:step:stop for sweep");
    auto* range = cmd->add_option("--n-range", config.n_range, "start:step:stop");
    n->excludes(range);
    cmd->add_option("--lambda", config.lambda, "Fractional exponent in (0,1]")->capture_default_str();
  }
  sweep->add_option("--ref-lambda", config.ref_lambda, "Reference lambda without an exact solution")
      ->capture_default_str();
  sweep->add_option("--ref-n", config.ref_n, "Reference degree without an exact solution")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? 0 : fracvide::cli::kExitUsage;
  }

  if (solve->parsed()) config.command = Command::solve;
  if (sweep->parsed()) config.command = Command::sweep;
  if (reproduce->parsed()) config.command = Command::reproduce;
  config.format = fracvide::parse_table_format(format);
  return fracvide::cli::run(config, std::cout, std::cerr);
}
