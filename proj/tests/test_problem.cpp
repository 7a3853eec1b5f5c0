#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "fracvide/problem.hpp"
#include "oracles.hpp"

using namespace fracvide;

namespace {

bool mentions(const std::vector<std::string>& errors, const std::string& word) {
  for (const auto& e : errors) {
    if (e.find(word) != std::string::npos) return true;
  }
  return false;
}

std::string error_of(std::string_view text) {
  try {
    parse_problem_config(text, "cfg");
  } catch (const std::runtime_error& err) {
    return err.what();
  }
  return {};
}

constexpr std::string_view kExactConfig = R"(
# y = t e^-t on [0, 1]
mu = 1/2
gamma = 1
eps = 0.5
T = 1
p = t
q = 0
K1 = exp(-s)
K2 = 1
exact = t * exp(-t)
exact_prime = (1 - t) * exp(-t)
)";

}  // namespace

TEST_SUITE("problem") {
  TEST_CASE("validate reports every violated constraint") {
    ProblemSpec s;
    s.mu = 1.0;
    s.gamma = -1.0;
    s.eps = 0.0;
    s.T = 0.0;
    const auto errors = validate(s);
    for (const char* w : {"mu must", "gamma must", "mu + gamma", "eps", "T must", "p is", "q is",
                          "K1", "K2", "g is"}) {
      CAPTURE(w);
      CHECK(mentions(errors, w));
    }
    ProblemSpec ok = builtin("ex4");
    CHECK(validate(ok).empty());
    ok.exact = [](double) { return 0.0; };
    CHECK(mentions(validate(ok), "together"));
    ok.exact = {};
    ok.gamma = 0.4;  // mu + gamma < 1
    CHECK(mentions(validate(ok), "mu + gamma"));
  }

  TEST_CASE("builtins are valid and have the expected data") {
    for (const auto& n : builtin_names()) {
      CAPTURE(n);
      CHECK(is_builtin(n));
      const ProblemSpec s = builtin(n);
      CHECK(s.name == n);
      CHECK(validate(s).empty());
    }
    CHECK_FALSE(is_builtin("ex6"));
    CHECK_THROWS_WITH_AS(builtin("ex6"), doctest::Contains("unknown problem"), std::invalid_argument);
    CHECK(builtin("ex1").has_exact());
    CHECK(builtin("ex3").has_exact());
    CHECK_FALSE(builtin("ex4").has_exact());
    CHECK(builtin("ex4").y0 == 3.0);
    CHECK(builtin("ex5").mu == doctest::Approx(2.0 - std::sqrt(2.0)));
    CHECK(builtin("ex2").T == 0.5);
  }

  TEST_CASE("gamma override") {
    const ProblemSpec s = builtin("ex1", {.gamma_override = 0.75});
    CHECK(s.gamma == 0.75);
    CHECK(validate(s).empty());
    CHECK_THROWS_AS(builtin("ex2", {.gamma_override = 1.0}), std::invalid_argument);
    // mu + gamma >= 1 must still hold.
    CHECK_THROWS_AS(builtin("ex1", {.gamma_override = 0.25}), std::invalid_argument);
  }

  TEST_CASE("manufactured forcing matches the closed forms") {
    for (const char* n : {"ex1", "ex2", "ex3"}) {
      const ProblemSpec s = builtin(n);
      REQUIRE(s.g_reference);
      for (double f : {0.01, 0.2, 0.5, 0.83, 1.0}) {
        const double t = f * s.T;
        CAPTURE(n);
        CAPTURE(t);
        CHECK(s.g(t) == doctest::Approx(s.g_reference(t)).epsilon(1e-12).scale(1.0));
      }
    }
    for (double gamma : {0.5, 0.8, 1.7}) {
      const ProblemSpec s = builtin("ex1", {.gamma_override = gamma});
      CHECK(s.g(0.6) == doctest::Approx(s.g_reference(0.6)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(manufactured_g(builtin("ex4")), std::invalid_argument);
  }

  TEST_CASE("exact solutions satisfy the equation") {
    for (const char* n : {"ex1", "ex2", "ex3"}) {
      const ProblemSpec s = builtin(n);
      for (double f : {0.1, 0.45, 0.9}) {
        CAPTURE(n);
        CHECK(oracle::relative_residual(s, s.exact, s.exact_prime, f * s.T) < 1e-12);
      }
    }
  }

  TEST_CASE("transform rescales onto [0,1]") {
    const ProblemSpec s = builtin("ex2");
    const TransformedProblem tp = transform(s);
    const double th = 0.4, eta = 0.25, T = s.T;
    CHECK(tp.T == T);
    CHECK(tp.p1(th) == doctest::Approx(T * std::pow(T * th, -s.gamma) * s.p(T * th)));
    CHECK(tp.g1(th) == doctest::Approx(T * std::pow(T * th, -s.gamma) * s.g(T * th)));
    CHECK(tp.K2bar(th, eta) == doctest::Approx(T * s.K2(T * th, T * eta)));
    CHECK(tp.phi(th) == doctest::Approx(s.exact(T * th)));
    CHECK(tp.phi_prime(th) == doctest::Approx(T * s.exact_prime(T * th)));
    CHECK_FALSE(transform(builtin("ex4")).phi);
  }

  TEST_CASE("config with an exact solution manufactures g") {
    const ProblemSpec s = parse_problem_config(kExactConfig, "cfg");
    CHECK(s.name == "cfg");
    CHECK(s.mu == 0.5);
    CHECK(s.y0 == 0.0);
    CHECK(s.has_exact());
    CHECK_FALSE(s.g_reference);
    for (double t : {0.2, 0.7}) CHECK(oracle::relative_residual(s, s.exact, s.exact_prime, t) < 1e-12);
  }

  TEST_CASE("config keeps a user g as a reference") {
    std::string text(kExactConfig);
    text += "g = 1 + mu\n";
    const ProblemSpec s = parse_problem_config(text, "cfg");
    REQUIRE(s.g_reference);
    CHECK(s.g_reference(0.3) == 1.5);
  }

  TEST_CASE("config without an exact solution") {
    const ProblemSpec s = parse_problem_config(
        "mu=0.25\ngamma=1\neps=0.5\nT=2\ny0=1\np=t\nq=t^2\ng=sin(t)\nK1=t*s\nK2=tau\n", "plain");
    CHECK(s.T == 2.0);
    CHECK(s.y0 == 1.0);
    CHECK(s.K1(2.0, 3.0) == 6.0);
    CHECK(s.K2(2.0, 0.5) == 0.5);
    CHECK(s.g(0.5) == doctest::Approx(std::sin(0.5)));
  }

  TEST_CASE("config errors name the file and line") {
    const std::string base = "mu=0.5\ngamma=1\neps=0.5\nT=1\np=t\nq=t\nK1=1\nK2=1\n";
    CHECK(error_of(base + "g=1\nfoo=2\n").find("cfg:10: unknown key 'foo'") == 0);
    CHECK(error_of(base + "g=1\nmu=0.3\n").find("cfg:10: duplicate key 'mu'") == 0);
    CHECK(error_of(base + "g=\n").find("cfg:9: empty value") == 0);
    CHECK(error_of(base + "g 1\n").find("cfg:9: expected") == 0);
    CHECK(error_of(base + "g=1 +\n").find("cfg:9: g:") == 0);
    CHECK(error_of(base + "g=s\n").find("cfg:9: g may not use variable 's'") == 0);
    CHECK(error_of(base + "g=1\nK3=2\n").find("unknown key 'K3'") != std::string::npos);
    CHECK(error_of(base).find("g is required") != std::string::npos);
    CHECK(error_of("gamma=1\neps=1\nT=1\n").find("missing required key 'mu'") != std::string::npos);
    CHECK(error_of("mu=t\n" + base.substr(7) + "g=1\n").find("constant expression") !=
          std::string::npos);
    CHECK(error_of("mu=1.5\n" + base.substr(7) + "g=1\n").find("invalid problem") !=
          std::string::npos);
    std::string k2(base);
    k2.replace(k2.find("K2=1"), 4, "K2=s");
    CHECK(error_of(k2 + "g=1\n").find("K2 may not use variable 's'") != std::string::npos);
  }

  TEST_CASE("load_problem_file") {
    const auto path = std::filesystem::temp_directory_path() / "fracvide_test_problem.cfg";
    {
      std::ofstream out(path);
      out << kExactConfig;
    }
    const ProblemSpec s = load_problem_file(path.string());
    CHECK(s.name == "fracvide_test_problem");
    std::filesystem::remove(path);
    CHECK_THROWS_WITH_AS(load_problem_file("/nonexistent/x.cfg"), doctest::Contains("cannot open"),
                         std::runtime_error);
  }
}
