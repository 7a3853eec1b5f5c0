#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <memory>
#include <string>

#include "fracvide/analysis.hpp"
#include "fracvide/published.hpp"

using namespace fracvide;

namespace {

std::vector<double> exp_errors(const std::vector<int>& ns, double rate) {
  std::vector<double> e;
  for (int n : ns) e.push_back(std::exp(-rate * n));
  return e;
}

std::vector<double> pow_errors(const std::vector<int>& ns, double p) {
  std::vector<double> e;
  for (int n : ns) e.push_back(std::pow(static_cast<double>(n), -p));
  return e;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("classify_decay on synthetic data") {
    const std::vector<int> ns{4, 6, 8, 10, 12, 14, 16};
    SUBCASE("exponential") {
      const DecayFit f = classify_decay(ns, exp_errors(ns, 1.3));
      CHECK(f.rate_class == RateClass::exponential);
      CHECK(f.fitted_rate == doctest::Approx(-1.3));
      CHECK(f.points_used == 7);
      CHECK(f.r2_exponential == doctest::Approx(1.0));
    }
    SUBCASE("algebraic") {
      const DecayFit f = classify_decay(ns, pow_errors(ns, 2.5));
      CHECK(f.rate_class == RateClass::algebraic);
      CHECK(f.fitted_rate == doctest::Approx(-2.5));
    }
    SUBCASE("growth is never a decay") {
      std::vector<double> e = exp_errors(ns, -0.5);
      CHECK(classify_decay(ns, e).rate_class == RateClass::inconclusive);
    }
    SUBCASE("round-off points are dropped") {
      std::vector<double> e = exp_errors({4, 6, 8}, 1.0);
      e.insert(e.end(), {1e-14, 2e-14, 5e-15, 1e-15, 0.0});
      const DecayFit f = classify_decay({4, 6, 8, 10, 12, 14, 16, 18}, e);
      CHECK(f.points_used == 3);
      CHECK(f.rate_class == RateClass::inconclusive);
    }
    SUBCASE("non-finite and single points") {
      CHECK(classify_decay({5}, {1e-3}).rate_class == RateClass::inconclusive);
      CHECK(classify_decay({}, {}).points_used == 0);
      std::vector<double> e = exp_errors(ns, 1.0);
      e[2] = std::nan("");
      CHECK(classify_decay(ns, e).points_used == 6);
    }
    CHECK_THROWS_AS(classify_decay({1, 2}, {1.0}), std::invalid_argument);
  }

  TEST_CASE("combine_fits") {
    DecayFit ex{.rate_class = RateClass::exponential, .fitted_rate = -1.0};
    DecayFit al{.rate_class = RateClass::algebraic, .fitted_rate = -2.0};
    DecayFit in{};
    CHECK(combine_fits(ex, ex).fitted_rate == -1.0);
    CHECK(combine_fits(ex, in).rate_class == RateClass::exponential);
    CHECK(combine_fits(in, al).rate_class == RateClass::algebraic);
    CHECK(combine_fits(in, al).fitted_rate == -2.0);
    CHECK(combine_fits(ex, al).rate_class == RateClass::inconclusive);
    CHECK(combine_fits(in, in).rate_class == RateClass::inconclusive);
    CHECK(to_string(RateClass::algebraic) == "algebraic");
  }

  TEST_CASE("error_report against the exact solution") {
    const ProblemSpec spec = builtin("ex1");
    const TransformedProblem tp = transform(spec);
    const SolutionApprox sol = solve_problem(spec, 6, 0.5, -0.5, -0.5);
    const ErrorReport r = error_report(sol, tp.phi, tp.phi_prime, -0.5, -0.5);
    CHECK(r.n == 6);
    CHECK(r.lambda == 0.5);
    CHECK(r.linf_e > 0.0);
    CHECK(r.linf_e < 1e-4);
    // The weighted L2 norm over [0,1] with this weight is bounded by sqrt(pi) sup|e|.
    CHECK(r.l2_e <= std::sqrt(std::numbers::pi) * r.linf_e * (1.0 + 1e-12));
    CHECK(r.l2_estar <= std::sqrt(std::numbers::pi) * r.linf_estar * (1.0 + 1e-12));
    // Against itself the error is zero.
    const auto self = [&](double th) { return sol.evaluate(th); };
    const auto self_d = [&](double th) { return sol.evaluate_derivative(th); };
    const ErrorReport z = error_report(sol, self, self_d, -0.5, -0.5);
    CHECK(z.l2_e == 0.0);
    CHECK(z.linf_estar == 0.0);
  }

  TEST_CASE("self reference") {
    const ProblemSpec spec = builtin("ex4");
    const ReferenceSolution ref = self_reference(spec, 0.5, 12);
    CHECK(ref.n == 12);
    // theta = 0 is outside the nodes, so y0 is only matched to the reference accuracy.
    CHECK(ref.phi(0.0) == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(ref.phi(0.4) == ref.solution->evaluate(0.4));
  }

  TEST_CASE("sweep with an exact solution") {
    const SweepResult r = sweep(builtin("ex1"), 0.5, {2, 3, 4, 5, 6, 7, 8});
    CHECK(r.problem == "ex1");
    REQUIRE(r.rows.size() == 7);
    for (const auto& row : r.rows) CHECK_FALSE(row.error);
    CHECK(r.rows.back().report.linf_e < r.rows.front().report.linf_e);
    CHECK(r.rate_class() == RateClass::exponential);
    CHECK(r.fitted_rate() < 0.0);

    const SweepResult single = sweep(builtin("ex1"), 0.5, {6});
    CHECK(single.rate_class() == RateClass::inconclusive);
    CHECK(single.fit.points_used == 1);
  }

  TEST_CASE("sweep argument checks") {
    const ProblemSpec ex4 = builtin("ex4");
    CHECK_THROWS_WITH_AS(sweep(ex4, 0.5, {4, 6}), doctest::Contains("reference solution"),
                         std::invalid_argument);
    CHECK_THROWS_AS(sweep(builtin("ex1"), 0.5, {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(builtin("ex1"), 0.5, {4, 4}), std::invalid_argument);
    SweepOptions opt;
    opt.reference = std::make_shared<const ReferenceSolution>(self_reference(ex4, 0.5, 10));
    CHECK_THROWS_WITH_AS(sweep(ex4, 0.5, {4, 8}, opt), doctest::Contains("at least N+3"),
                         std::invalid_argument);
    const SweepResult ok = sweep(ex4, 0.5, {4, 7}, opt);
    CHECK(ok.rows.size() == 2);
  }

  TEST_CASE("failed rows carry NaN and the message") {
    SweepOptions opt;
    opt.quad_points = 0;
    const SweepResult r = sweep(builtin("ex1"), 0.5, {2, 4}, opt);
    for (const auto& row : r.rows) {
      REQUIRE(row.error);
      CHECK(std::isnan(row.report.l2_e));
    }
    CHECK(emit_table(r, TableFormat::csv).find("nan") != std::string::npos);
  }

  TEST_CASE("table output") {
    SweepResult r;
    r.problem = "ex1";
    r.lambda = 0.5;
    r.rows.push_back({.report = {.n = 4, .lambda = 0.5, .l2_e = 1.5e-3, .linf_e = 2e-3,
                                 .l2_estar = 1e-2, .linf_estar = 3.25e-2},
                     .error = std::nullopt});
    r.rows.push_back({.report = {.n = 6, .lambda = 0.5, .l2_e = 1e-6, .linf_e = 2e-6,
                                 .l2_estar = 1e-5, .linf_estar = 3e-5},
                     .error = std::nullopt});
    CHECK(emit_table(r, TableFormat::csv) ==
          "N,L2_e,Linf_e,L2_estar,Linf_estar\n"
          "4,1.50000e-03,2.00000e-03,1.00000e-02,3.25000e-02\n"
          "6,1.00000e-06,2.00000e-06,1.00000e-05,3.00000e-05\n");
    const std::string text = emit_table(r, TableFormat::text);
    CHECK(text.rfind("N ", 0) == 0);
    CHECK(text.find("Linf_estar") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    CHECK_THROWS_AS(emit_table(SweepResult{}, TableFormat::csv), std::invalid_argument);

    CHECK(parse_table_format("csv") == TableFormat::csv);
    CHECK(parse_table_format("text") == TableFormat::text);
    CHECK_THROWS_AS(parse_table_format(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_table_format("json"), std::invalid_argument);

    CHECK(sweep_filename("ex1", 0.5) == "ex1_0.5_sweep.csv");
    CHECK(sweep_filename("ex2", 1.0 / 3.0) == "ex2_0.333333_sweep.csv");
    CHECK(sweep_filename("ex3", 1.0) == "ex3_1_sweep.csv");
    CHECK(format_sci(0.0) == "0.00000e+00");
  }

  TEST_CASE("published tables") {
    const auto& values = published_values();
    CHECK(values.size() == 100);
    const auto v = published_value("ex1", 0.5, Quantity::e, Norm::linf, 4);
    REQUIRE(v.has_value());
    CHECK(*v > 0.0);
    CHECK(published_value("ex2", 1.0 / 3.0, Quantity::estar, Norm::l2, 13).has_value());
    CHECK_FALSE(published_value("ex1", 0.25, Quantity::e, Norm::l2, 4).has_value());
    CHECK_THROWS_AS(parse_published_csv("problem,lambda,quantity,norm,N,value\nex1,x,e,l2,4,1\n"),
                    std::exception);

    for (const char* p : {"ex1", "ex2", "ex3", "ex4", "ex5"}) {
      const ReproductionPlan plan = reproduction_plan(p);
      CAPTURE(p);
      CHECK(plan.runs.size() == 2);
      CHECK(plan.self_reference == (std::string(p) == "ex4" || std::string(p) == "ex5"));
      for (const auto& run : plan.runs) {
        const auto ns = run.sweep_n();
        CHECK(std::is_sorted(ns.begin(), ns.end()));
        if (plan.self_reference) CHECK(ns.back() + kReferenceGap <= plan.reference_n);
      }
    }
  }
}
