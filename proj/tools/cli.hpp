#pragma once

// Command implementations behind the fracvide executable. Kept out of main
// so tests can drive them with in-memory streams.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracvide/analysis.hpp"
#include "fracvide/problem.hpp"

namespace fracvide::cli {

/// Bad flags or values; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { solve, sweep, reproduce };

struct RunConfig {
  Command command = Command::solve;
  std::string problem;
  double lambda = 1.0;
  std::optional<std::string> n;        // integer, or a range for sweep
  std::optional<std::string> n_range;  // start:step:stop
  double alpha_c = -0.5;
  double beta_c = -0.5;
  std::optional<std::string> out;
  TableFormat format = TableFormat::csv;
  std::optional<double> gamma_override;
  int quad_points = kDefaultNormPoints;
  double ref_lambda = 0.5;
  int ref_n = 18;
};

/// "start:step:stop" (inclusive) or a single integer.
std::vector<int> parse_n_range(const std::string& text);

/// Built-in name, else a problem file path.
ProblemSpec resolve_problem(const std::string& name, std::optional<double> gamma_override);

/// Each returns the process exit status; data goes to files or out, messages to err.
int run_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_reproduce(const RunConfig& config, std::ostream& out, std::ostream& err);
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kSolutionSamples = 201;

}  // namespace fracvide::cli
