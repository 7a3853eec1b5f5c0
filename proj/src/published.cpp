#include "fracvide/published.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fracvide {

namespace detail {
extern const std::string_view kPublishedTablesCsv;
}  // namespace detail

namespace {

constexpr double kLambdaMatch = 1e-9;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("published data line " + std::to_string(line) + ": bad number '" +
                             std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(Quantity q) { return q == Quantity::e ? "e" : "estar"; }
std::string_view to_string(Norm n) { return n == Norm::l2 ? "L2" : "Linf"; }

std::vector<PublishedValue> parse_published_csv(std::string_view text) {
  std::vector<PublishedValue> out;
  int line_no = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) {
      throw std::runtime_error("published data line " + std::to_string(line_no) +
                               ": expected 6 fields");
    }
    PublishedValue v;
    v.problem = std::string(f[0]);
    v.lambda = to_double(f[1], line_no);
    if (f[2] == "e") {
      v.quantity = Quantity::e;
    } else if (f[2] == "estar") {
      v.quantity = Quantity::estar;
    } else {
      throw std::runtime_error("published data line " + std::to_string(line_no) +
                               ": bad quantity");
    }
    if (f[3] == "L2") {
      v.norm = Norm::l2;
    } else if (f[3] == "Linf") {
      v.norm = Norm::linf;
    } else {
      throw std::runtime_error("published data line " + std::to_string(line_no) + ": bad norm");
    }
    v.n = static_cast<int>(to_double(f[4], line_no));
    v.value = to_double(f[5], line_no);
    out.push_back(std::move(v));
  }
  return out;
}

const std::vector<PublishedValue>& published_values() {
  static const std::vector<PublishedValue> values = parse_published_csv(detail::kPublishedTablesCsv);
  return values;
}

std::optional<double> published_value(std::string_view problem, double lambda, Quantity q, Norm norm,
                                      int n) {
  for (const auto& v : published_values()) {
    if (v.problem == problem && std::abs(v.lambda - lambda) < kLambdaMatch && v.quantity == q &&
        v.norm == norm && v.n == n) {
      return v.value;
    }
  }
  return std::nullopt;
}

std::vector<int> ExperimentPlan::sweep_n() const {
  std::vector<int> all = n_e;
  all.insert(all.end(), n_estar.begin(), n_estar.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

ReproductionPlan reproduction_plan(std::string_view problem) {
  auto both = [](std::string p, double lambda, std::vector<int> e, std::vector<int> estar) {
    return ExperimentPlan{std::move(p), lambda, std::move(e), std::move(estar)};
  };
  auto same = [&](std::string p, double lambda, std::vector<int> ns) {
    return both(std::move(p), lambda, ns, ns);
  };
  ReproductionPlan plan;
  if (problem == "ex1") {
    plan.runs = {same("ex1", 0.5, {4, 6, 8, 10, 12}),
                 same("ex1", 1.0, {4, 6, 8, 10, 12, 14, 16, 18, 20})};
  } else if (problem == "ex2") {
    plan.runs = {same("ex2", 1.0 / 3.0, {2, 5, 10, 11, 13}), same("ex2", 1.0, {2, 5, 10, 11, 13})};
  } else if (problem == "ex3") {
    const ExperimentPlan frac = both("ex3", 0.5, {7, 9, 11, 13, 17}, {7, 10, 13, 15, 17});
    plan.runs = {frac, same("ex3", 1.0, frac.sweep_n())};
  } else if (problem == "ex4" || problem == "ex5") {
    const std::string p(problem);
    const ExperimentPlan frac = problem == "ex4"
                                    ? both(p, 0.5, {5, 7, 10, 12, 14}, {5, 7, 10, 13, 15})
                                    : same(p, 0.5, {5, 8, 10, 13, 15});
    plan.runs = {frac, same(p, 1.0, frac.sweep_n())};
    plan.self_reference = true;
  } else {
    throw std::invalid_argument("reproduce: unknown problem '" + std::string(problem) +
                                "' (expected ex1..ex5)");
  }
  return plan;
}

double norm_of(const ErrorReport& r, Quantity q, Norm norm) {
  if (q == Quantity::e) return norm == Norm::l2 ? r.l2_e : r.linf_e;
  return norm == Norm::l2 ? r.l2_estar : r.linf_estar;
}

namespace {

const ErrorReport& row_for(const SweepResult& result, int n) {
  for (const SweepRow& row : result.rows) {
    if (row.report.n == n) return row.report;
  }
  throw std::invalid_argument("no sweep row for N=" + std::to_string(n));
}

}  // namespace

std::string emit_quantity_table(const SweepResult& result, Quantity q, const std::vector<int>& ns) {
  std::ostringstream os;
  os << "N,L2_" << to_string(q) << ",Linf_" << to_string(q) << '\n';
  for (int n : ns) {
    const ErrorReport& r = row_for(result, n);
    os << n << ',' << format_sci(norm_of(r, q, Norm::l2)) << ','
       << format_sci(norm_of(r, q, Norm::linf)) << '\n';
  }
  return os.str();
}

std::vector<ComparisonRow> compare_with_published(const SweepResult& result,
                                                  const ExperimentPlan& plan) {
  std::vector<ComparisonRow> out;
  for (Quantity q : {Quantity::e, Quantity::estar}) {
    for (int n : q == Quantity::e ? plan.n_e : plan.n_estar) {
      const ErrorReport& r = row_for(result, n);
      for (Norm norm : {Norm::l2, Norm::linf}) {
        ComparisonRow row{plan.problem, plan.lambda, q, norm, n, norm_of(r, q, norm), {}, {}};
        row.published = published_value(plan.problem, plan.lambda, q, norm, n);
        if (row.published && *row.published > 0.0) row.ratio = row.computed / *row.published;
        out.push_back(std::move(row));
      }
    }
  }
  return out;
}

std::string emit_comparison(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  os << "problem,lambda,quantity,norm,N,computed,published,ratio\n";
  char lam[32];
  for (const auto& r : rows) {
    std::snprintf(lam, sizeof lam, "%g", r.lambda);
    os << r.problem << ',' << lam << ',' << to_string(r.quantity) << ',' << to_string(r.norm) << ','
       << r.n << ',' << format_sci(r.computed) << ','
       << (r.published ? format_sci(*r.published) : std::string()) << ','
       << (r.ratio ? format_sci(*r.ratio) : std::string()) << '\n';
  }
  return os.str();
}

}  // namespace fracvide
