#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fracvide/collocate.hpp"
#include "fracvide/published.hpp"

namespace fracvide::cli {

namespace {

int parse_int(std::string_view s, const std::string& whole) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError("malformed N value '" + whole + "' (expected an integer or start:step:stop)");
  }
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void check_common(const RunConfig& c) {
  if (!(c.lambda > 0.0 && c.lambda <= 1.0)) throw UsageError("--lambda must lie in (0, 1]");
  if (!(c.alpha_c > -1.0 && c.beta_c > -1.0)) throw UsageError("--alpha and --beta must exceed -1");
  if (c.quad_points < 1) throw UsageError("--quad-points must be positive");
  if (c.n && c.n_range) throw UsageError("give exactly one of --n and --n-range");
}

std::string report_line(const ErrorReport& r) {
  std::ostringstream os;
  os << "N=" << r.n << " lambda=" << fmt_g(r.lambda) << " L2_e=" << format_sci(r.l2_e)
     << " Linf_e=" << format_sci(r.linf_e) << " L2_estar=" << format_sci(r.l2_estar)
     << " Linf_estar=" << format_sci(r.linf_estar);
  return os.str();
}

std::string fit_line(const SweepResult& r) {
  std::ostringstream os;
  os << r.problem << " lambda=" << fmt_g(r.lambda) << " classification=" << to_string(r.rate_class())
     << " rate=" << format_sci(r.fitted_rate()) << " e=" << to_string(r.fit_e.rate_class)
     << " (r2_exp=" << fmt_g(r.fit_e.r2_exponential) << " r2_alg=" << fmt_g(r.fit_e.r2_algebraic)
     << ") estar=" << to_string(r.fit_estar.rate_class) << " (r2_exp="
     << fmt_g(r.fit_estar.r2_exponential) << " r2_alg=" << fmt_g(r.fit_estar.r2_algebraic) << ")";
  return os.str();
}

void report_row_failures(const SweepResult& r, std::ostream& err) {
  for (const SweepRow& row : r.rows) {
    if (row.error) err << "N=" << row.report.n << " failed: " << *row.error << '\n';
  }
}

bool any_row_failed(const SweepResult& r) {
  for (const SweepRow& row : r.rows) {
    if (row.error) return true;
  }
  return false;
}

}  // namespace

std::vector<int> parse_n_range(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    const int n = parse_int(text, text);
    if (n < 0) throw UsageError("N must be non-negative");
    return {n};
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
    throw UsageError("malformed range '" + text + "' (expected start:step:stop)");
  }
  const std::string_view sv(text);
  const int start = parse_int(sv.substr(0, c1), text);
  const int step = parse_int(sv.substr(c1 + 1, c2 - c1 - 1), text);
  const int stop = parse_int(sv.substr(c2 + 1), text);
  if (step <= 0) throw UsageError("range step must be positive in '" + text + "'");
  if (start < 0 || stop < start) throw UsageError("range must satisfy 0 <= start <= stop in '" + text + "'");
  std::vector<int> out;
  for (int n = start; n <= stop; n += step) out.push_back(n);
  return out;
}

ProblemSpec resolve_problem(const std::string& name, std::optional<double> gamma_override) {
  if (name.empty()) throw UsageError("--problem is required");
  if (is_builtin(name)) {
    BuiltinOptions opts;
    opts.gamma_override = gamma_override;
    return builtin(name, opts);
  }
  if (gamma_override) throw UsageError("--gamma-override only applies to ex1");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(name, ec)) {
    throw std::invalid_argument("unknown problem '" + name + "' (not a built-in and not a file)");
  }
  return load_problem_file(name);
}

int run_solve(const RunConfig& c, std::ostream& out, std::ostream&) {
  check_common(c);
  if (c.n_range || !c.n) throw UsageError("solve needs --n with a single degree");
  const std::vector<int> ns = parse_n_range(*c.n);
  if (ns.size() != 1 || c.n->find(':') != std::string::npos) {
    throw UsageError("solve takes a single --n, not a range");
  }
  const int n = ns.front();
  const ProblemSpec spec = resolve_problem(c.problem, c.gamma_override);
  const SolutionApprox sol = solve_problem(spec, n, c.lambda, c.alpha_c, c.beta_c);

  std::ostringstream file;
  file << "# nodes\nj,theta,t,u,u_star,v\n";
  const auto& theta = sol.system->basis.nodes();
  for (int j = 0; j <= n; ++j) {
    file << j << ',' << fmt(theta[j]) << ',' << fmt(spec.T * theta[j]) << ',' << fmt(sol.u[j])
         << ',' << fmt(sol.u_star[j]) << ',' << fmt(sol.v[j]) << '\n';
  }
  file << "\n# samples\nt,y_N" << (spec.has_exact() ? ",y_exact" : "") << '\n';
  for (int k = 0; k < kSolutionSamples; ++k) {
    const double t = k == kSolutionSamples - 1 ? spec.T : spec.T * k / (kSolutionSamples - 1);
    file << fmt(t) << ',' << fmt(sol.to_physical(t));
    if (spec.has_exact()) file << ',' << fmt(spec.exact(t));
    file << '\n';
  }
  const std::string path =
      c.out.value_or(spec.name + "_N" + std::to_string(n) + "_" + fmt_g(c.lambda) + "_solution.csv");
  write_file(path, file.str());

  if (spec.has_exact()) {
    const TransformedProblem tp = transform(spec);
    const ErrorReport r =
        error_report(sol, tp.phi, tp.phi_prime, c.alpha_c, c.beta_c, c.quad_points);
    out << report_line(r) << '\n';
  }
  return 0;
}

int run_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_common(c);
  if (!c.n && !c.n_range) throw UsageError("sweep needs --n or --n-range");
  const std::vector<int> ns = parse_n_range(c.n ? *c.n : *c.n_range);
  const ProblemSpec spec = resolve_problem(c.problem, c.gamma_override);

  SweepOptions opts;
  opts.alpha_c = c.alpha_c;
  opts.beta_c = c.beta_c;
  opts.quad_points = c.quad_points;
  if (!spec.has_exact()) {
    err << "no exact solution for " << spec.name << "; using reference lambda=" << fmt_g(c.ref_lambda)
        << " N=" << c.ref_n << '\n';
    opts.reference = std::make_shared<const ReferenceSolution>(
        self_reference(spec, c.ref_lambda, c.ref_n, c.alpha_c, c.beta_c));
  }
  const SweepResult result = sweep(spec, c.lambda, ns, opts);
  report_row_failures(result, err);

  const std::string table = emit_table(result, c.format);
  if (c.out && *c.out == "-") {
    out << table;
    err << fit_line(result) << '\n';
  } else {
    write_file(c.out.value_or(sweep_filename(spec.name, c.lambda)), table);
    out << fit_line(result) << '\n';
  }
  return any_row_failed(result) ? kExitFailure : 0;
}

int run_reproduce(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_common(c);
  if (!is_builtin(c.problem)) throw UsageError("reproduce needs a built-in problem (ex1..ex5)");
  const ReproductionPlan plan = reproduction_plan(c.problem);
  const ProblemSpec spec = resolve_problem(c.problem, c.gamma_override);
  const std::filesystem::path dir = c.out.value_or(".");
  std::filesystem::create_directories(dir);

  SweepOptions opts;
  opts.alpha_c = c.alpha_c;
  opts.beta_c = c.beta_c;
  opts.quad_points = c.quad_points;
  if (plan.self_reference) {
    err << "computing reference solution lambda=" << fmt_g(plan.reference_lambda)
        << " N=" << plan.reference_n << '\n';
    opts.reference = std::make_shared<const ReferenceSolution>(self_reference(
        spec, plan.reference_lambda, plan.reference_n, c.alpha_c, c.beta_c));
  }

  std::vector<ComparisonRow> comparison;
  bool failed = false;
  for (const ExperimentPlan& run : plan.runs) {
    const SweepResult result = sweep(spec, run.lambda, run.sweep_n(), opts);
    report_row_failures(result, err);
    failed = failed || any_row_failed(result);
    const std::string stem = spec.name + "_" + fmt_g(run.lambda);
    write_file(dir / sweep_filename(spec.name, run.lambda), emit_table(result, TableFormat::csv));
    write_file(dir / (stem + "_e.csv"), emit_quantity_table(result, Quantity::e, run.n_e));
    write_file(dir / (stem + "_estar.csv"), emit_quantity_table(result, Quantity::estar, run.n_estar));
    const auto rows = compare_with_published(result, run);
    comparison.insert(comparison.end(), rows.begin(), rows.end());
    out << fit_line(result) << '\n';
  }
  const std::string summary = emit_comparison(comparison);
  write_file(dir / (spec.name + "_summary.csv"), summary);
  out << summary;
  return failed ? kExitFailure : 0;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    switch (c.command) {
      case Command::solve:
        return run_solve(c, out, err);
      case Command::sweep:
        return run_sweep(c, out, err);
      case Command::reproduce:
        return run_reproduce(c, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace fracvide::cli
