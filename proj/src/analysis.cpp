#include "fracvide/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fracvide {

ErrorReport error_report(const SolutionApprox& sol, const Fn1& exact_phi,
                         const Fn1& exact_phi_prime, double alpha_c, double beta_c,
                         int quad_points) {
  const auto e = [&](double theta) { return exact_phi(theta) - sol.evaluate(theta); };
  const auto estar = [&](double theta) {
    return exact_phi_prime(theta) - sol.evaluate_derivative(theta);
  };
  const std::vector<double> grid = default_sup_grid(sol.system->basis);
  ErrorReport r;
  r.n = sol.system->n;
  r.lambda = sol.system->lambda;
  r.l2_e = weighted_l2_norm(e, alpha_c, beta_c, 1.0, quad_points);
  r.linf_e = sup_norm(e, grid);
  r.l2_estar = weighted_l2_norm(estar, alpha_c, beta_c, 1.0, quad_points);
  r.linf_estar = sup_norm(estar, grid);
  return r;
}

ReferenceSolution self_reference(const ProblemSpec& spec, double lambda_ref, int n_ref,
                                 double alpha_c, double beta_c) {
  auto sol = std::make_shared<const SolutionApprox>(
      solve_problem(spec, n_ref, lambda_ref, alpha_c, beta_c));
  ReferenceSolution ref;
  ref.lambda = lambda_ref;
  ref.n = n_ref;
  ref.solution = sol;
  ref.phi = [sol](double theta) { return sol->evaluate(theta); };
  ref.phi_prime = [sol](double theta) { return sol->evaluate_derivative(theta); };
  return ref;
}

std::string_view to_string(RateClass c) {
  switch (c) {
    case RateClass::exponential:
      return "exponential";
    case RateClass::algebraic:
      return "algebraic";
    case RateClass::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

}  // namespace

DecayFit classify_decay(const std::vector<int>& n_values, const std::vector<double>& errors) {
  if (n_values.size() != errors.size()) {
    throw std::invalid_argument("classify_decay: size mismatch");
  }
  std::vector<double> n_lin, n_log, log_err;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    // Errors at round-off level carry no rate information.
    if (!std::isfinite(errors[i]) || errors[i] <= kClassifyErrorFloor || n_values[i] < 1) continue;
    n_lin.push_back(n_values[i]);
    n_log.push_back(std::log(static_cast<double>(n_values[i])));
    log_err.push_back(std::log(errors[i]));
  }
  DecayFit out;
  out.points_used = static_cast<int>(log_err.size());
  if (out.points_used < kClassifyMinPoints) return out;

  const LineFit ex = fit_line(n_lin, log_err);
  const LineFit al = fit_line(n_log, log_err);
  out.r2_exponential = ex.r2;
  out.r2_algebraic = al.r2;
  if (ex.r2 >= al.r2 + kClassifyMargin && ex.slope < 0.0) {
    out.rate_class = RateClass::exponential;
    out.fitted_rate = ex.slope;
  } else if (al.r2 >= ex.r2 + kClassifyMargin && al.slope < 0.0) {
    out.rate_class = RateClass::algebraic;
    out.fitted_rate = al.slope;
  }
  return out;
}

DecayFit combine_fits(const DecayFit& e, const DecayFit& estar) {
  if (e.rate_class == estar.rate_class || estar.rate_class == RateClass::inconclusive) return e;
  if (e.rate_class == RateClass::inconclusive) return estar;
  DecayFit out = e;
  out.rate_class = RateClass::inconclusive;
  out.fitted_rate = 0.0;
  return out;
}

SweepResult sweep(const ProblemSpec& spec, double lambda, const std::vector<int>& n_values,
                  const SweepOptions& options) {
  if (n_values.empty()) throw std::invalid_argument("sweep: no N values");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("sweep: N values must be strictly increasing");
    }
  }
  const TransformedProblem tp = transform(spec);
  Fn1 phi, phi_prime;
  if (options.reference) {
    const int max_n = n_values.back();
    if (options.reference->n < max_n + kReferenceGap) {
      throw std::invalid_argument("sweep: reference degree " + std::to_string(options.reference->n) +
                                  " must be at least N+" + std::to_string(kReferenceGap) +
                                  " (largest N is " + std::to_string(max_n) + ")");
    }
    phi = options.reference->phi;
    phi_prime = options.reference->phi_prime;
  } else if (spec.has_exact()) {
    phi = tp.phi;
    phi_prime = tp.phi_prime;
  } else {
    throw std::invalid_argument("sweep: problem '" + spec.name +
                                "' has no exact solution; a reference solution is required");
  }

  SweepResult result;
  result.problem = spec.name;
  result.lambda = lambda;
  result.rows.resize(n_values.size());
  const int count = static_cast<int>(n_values.size());

#ifdef FRACVIDE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int r = 0; r < count; ++r) {
    SweepRow& row = result.rows[r];
    row.report.n = n_values[r];
    row.report.lambda = lambda;
    try {
      const SolutionApprox sol = solve(
          assemble(tp, n_values[r], lambda, options.alpha_c, options.beta_c, options.assembly));
      row.report = error_report(sol, phi, phi_prime, options.alpha_c, options.beta_c,
                                options.quad_points);
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.report.l2_e = row.report.linf_e = row.report.l2_estar = row.report.linf_estar = nan;
      row.error = e.what();
    }
  }

  std::vector<int> ns;
  std::vector<double> errs, errs_star;
  for (const SweepRow& row : result.rows) {
    if (row.error) continue;
    ns.push_back(row.report.n);
    errs.push_back(row.report.linf_e);
    errs_star.push_back(row.report.linf_estar);
  }
  result.fit_e = classify_decay(ns, errs);
  result.fit_estar = classify_decay(ns, errs_star);
  result.fit = combine_fits(result.fit_e, result.fit_estar);
  return result;
}

TableFormat parse_table_format(std::string_view s) {
  if (s == "csv") return TableFormat::csv;
  if (s == "text") return TableFormat::text;
  if (s.empty()) throw std::invalid_argument("table format must not be empty");
  throw std::invalid_argument("unknown table format '" + std::string(s) + "' (expected csv or text)");
}

std::string format_sci(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

std::string emit_table(const SweepResult& result, TableFormat format) {
  if (result.rows.empty()) throw std::invalid_argument("emit_table: empty result");
  std::ostringstream os;
  if (format == TableFormat::csv) {
    os << "N,L2_e,Linf_e,L2_estar,Linf_estar\n";
    for (const SweepRow& row : result.rows) {
      const ErrorReport& r = row.report;
      os << r.n << ',' << format_sci(r.l2_e) << ',' << format_sci(r.linf_e) << ','
         << format_sci(r.l2_estar) << ',' << format_sci(r.linf_estar) << '\n';
    }
    return os.str();
  }

  constexpr int kLabel = 12;
  constexpr int kCell = 14;
  char buf[64];
  auto line = [&](const char* label, auto&& cell) {
    std::snprintf(buf, sizeof buf, "%-*s", kLabel, label);
    os << buf;
    for (const SweepRow& row : result.rows) {
      std::snprintf(buf, sizeof buf, "%*s", kCell, cell(row.report).c_str());
      os << buf;
    }
    os << '\n';
  };
  line("N", [](const ErrorReport& r) { return std::to_string(r.n); });
  line("L2_e", [](const ErrorReport& r) { return format_sci(r.l2_e); });
  line("Linf_e", [](const ErrorReport& r) { return format_sci(r.linf_e); });
  line("L2_estar", [](const ErrorReport& r) { return format_sci(r.l2_estar); });
  line("Linf_estar", [](const ErrorReport& r) { return format_sci(r.linf_estar); });
  return os.str();
}

std::string sweep_filename(std::string_view problem, double lambda) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", lambda);
  return std::string(problem) + "_" + buf + "_sweep.csv";
}

}  // namespace fracvide
