#pragma once

// Error measurement, convergence sweeps and decay classification.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracvide/collocate.hpp"
#include "fracvide/problem.hpp"

namespace fracvide {

struct ErrorReport {
  int n = 0;
  double lambda = 1.0;
  double l2_e = 0.0;
  double linf_e = 0.0;
  double l2_estar = 0.0;
  double linf_estar = 0.0;
};

/// Errors of phi_N and phi*_N against phi and phi'. The L2 norm uses the
/// weight (1-theta)^alpha_c theta^beta_c; the sup norm uses default_sup_grid.
ErrorReport error_report(const SolutionApprox& sol, const Fn1& exact_phi,
                         const Fn1& exact_phi_prime, double alpha_c, double beta_c,
                         int quad_points = kDefaultNormPoints);

/// A high-resolution solution standing in for an unknown exact one.
struct ReferenceSolution {
  double lambda = 0.5;
  int n = 18;
  std::shared_ptr<const SolutionApprox> solution;
  Fn1 phi;
  Fn1 phi_prime;
};

ReferenceSolution self_reference(const ProblemSpec& spec, double lambda_ref, int n_ref,
                                 double alpha_c = -0.5, double beta_c = -0.5);

enum class RateClass { exponential, algebraic, inconclusive };
std::string_view to_string(RateClass c);

struct DecayFit {
  RateClass rate_class = RateClass::inconclusive;
  double fitted_rate = 0.0;  // slope of the winning fit
  double r2_exponential = 0.0;
  double r2_algebraic = 0.0;
  int points_used = 0;
};

constexpr double kClassifyMargin = 0.02;
constexpr int kClassifyMinPoints = 4;
constexpr double kClassifyErrorFloor = 1e-13;

/// Compares linear fits of log(err) against N and against log N.
DecayFit classify_decay(const std::vector<int>& n_values, const std::vector<double>& errors);

/// Verdict for the pair (phi_N, phi*_N): a decisive fit wins over an
/// inconclusive one, contradicting fits give inconclusive. The rate is taken
/// from the e fit when both agree.
DecayFit combine_fits(const DecayFit& e, const DecayFit& estar);

struct SweepRow {
  ErrorReport report;
  std::optional<std::string> error;  // set when this N failed
};

struct SweepResult {
  std::string problem;
  double lambda = 1.0;
  std::vector<SweepRow> rows;  // strictly increasing in N
  DecayFit fit_e;              // on linf_e
  DecayFit fit_estar;          // on linf_estar
  DecayFit fit;                // combine_fits(fit_e, fit_estar)

  RateClass rate_class() const { return fit.rate_class; }
  double fitted_rate() const { return fit.fitted_rate; }
};

struct SweepOptions {
  double alpha_c = -0.5;
  double beta_c = -0.5;
  int quad_points = kDefaultNormPoints;
  /// Used in place of the exact solution when set (required without one).
  std::shared_ptr<const ReferenceSolution> reference;
  AssemblyOptions assembly;
};

/// Smallest allowed gap between a reference degree and a compared N.
constexpr int kReferenceGap = 3;

SweepResult sweep(const ProblemSpec& spec, double lambda, const std::vector<int>& n_values,
                  const SweepOptions& options = {});

enum class TableFormat { csv, text };
TableFormat parse_table_format(std::string_view s);

/// CSV: header N,L2_e,Linf_e,L2_estar,Linf_estar then one row per N.
/// Text: N across the top, one line per norm.
std::string emit_table(const SweepResult& result, TableFormat format);

/// <problem>_<lambda>_sweep.csv
std::string sweep_filename(std::string_view problem, double lambda);

/// %.5e, the table number format.
std::string format_sci(double v);

}  // namespace fracvide
