#pragma once

// Published convergence data for the built-in examples, and the experiment
// plans that reproduce them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracvide/analysis.hpp"

namespace fracvide {

enum class Quantity { e, estar };
enum class Norm { l2, linf };

struct PublishedValue {
  std::string problem;
  double lambda = 0.0;
  Quantity quantity = Quantity::e;
  Norm norm = Norm::l2;
  int n = 0;
  double value = 0.0;
};

/// Parses problem,lambda,quantity,norm,N,value rows; '#' lines are comments.
std::vector<PublishedValue> parse_published_csv(std::string_view text);

/// The table compiled into the library.
const std::vector<PublishedValue>& published_values();

std::optional<double> published_value(std::string_view problem, double lambda, Quantity q, Norm norm,
                                      int n);

/// One sweep of a reproduction run.
struct ExperimentPlan {
  std::string problem;
  double lambda = 1.0;
  std::vector<int> n_e;      // rows of the e table
  std::vector<int> n_estar;  // rows of the e* table
  std::vector<int> sweep_n() const;  // sorted union
};

struct ReproductionPlan {
  std::vector<ExperimentPlan> runs;
  bool self_reference = false;
  double reference_lambda = 0.5;
  int reference_n = 18;
};

/// Throws std::invalid_argument for anything but ex1..ex5.
ReproductionPlan reproduction_plan(std::string_view problem);

double norm_of(const ErrorReport& r, Quantity q, Norm norm);

/// N,L2_<q>,Linf_<q> rows for the requested N (which must appear in result).
std::string emit_quantity_table(const SweepResult& result, Quantity q, const std::vector<int>& ns);

struct ComparisonRow {
  std::string problem;
  double lambda;
  Quantity quantity;
  Norm norm;
  int n;
  double computed;
  std::optional<double> published;
  std::optional<double> ratio;  // computed / published
};

std::vector<ComparisonRow> compare_with_published(const SweepResult& result,
                                                  const ExperimentPlan& plan);

/// problem,lambda,quantity,norm,N,computed,published,ratio
std::string emit_comparison(const std::vector<ComparisonRow>& rows);

std::string_view to_string(Quantity q);
std::string_view to_string(Norm n);

}  // namespace fracvide
