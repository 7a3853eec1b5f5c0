#include "fracvide/problem.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "fracvide/specfun.hpp"

namespace fracvide {

std::vector<std::string> validate(const ProblemSpec& spec) {
  std::vector<std::string> errors;
  if (!(spec.mu >= 0.0 && spec.mu < 1.0)) {
    errors.push_back("mu must satisfy 0 <= mu < 1 (got " + std::to_string(spec.mu) + ")");
  }
  if (!(spec.gamma > 0.0)) {
    errors.push_back("gamma must be positive (got " + std::to_string(spec.gamma) + ")");
  }
  if (!(spec.mu + spec.gamma >= 1.0)) {
    errors.push_back("mu + gamma must be >= 1 (got " + std::to_string(spec.mu + spec.gamma) + ")");
  }
  if (!(spec.eps > 0.0 && spec.eps <= 1.0)) {
    errors.push_back("eps must satisfy 0 < eps <= 1 (got " + std::to_string(spec.eps) + ")");
  }
  if (!(spec.T > 0.0) || !std::isfinite(spec.T)) {
    errors.push_back("T must be positive (got " + std::to_string(spec.T) + ")");
  }
  if (!std::isfinite(spec.y0)) errors.push_back("y0 must be finite");
  if (!spec.p) errors.push_back("p is missing");
  if (!spec.q) errors.push_back("q is missing");
  if (!spec.K1) errors.push_back("K1 is missing");
  if (!spec.K2) errors.push_back("K2 is missing");
  if (!spec.g) errors.push_back("g is missing (give g, or exact and exact_prime)");
  if (static_cast<bool>(spec.exact) != static_cast<bool>(spec.exact_prime)) {
    errors.push_back("exact and exact_prime must be given together");
  }
  return errors;
}

TransformedProblem transform(const ProblemSpec& spec) {
  TransformedProblem tp;
  tp.mu = spec.mu;
  tp.gamma = spec.gamma;
  tp.eps = spec.eps;
  tp.T = spec.T;
  tp.y0 = spec.y0;
  const double T = spec.T;
  const double gamma = spec.gamma;
  auto scaled = [T, gamma](Fn1 f) -> Fn1 {
    return [T, gamma, f = std::move(f)](double theta) {
      const double t = T * theta;
      return T * std::pow(t, -gamma) * f(t);
    };
  };
  tp.p1 = scaled(spec.p);
  tp.q1 = scaled(spec.q);
  tp.g1 = scaled(spec.g);
  tp.K1bar = [T, k = spec.K1](double theta, double eta) { return T * k(T * theta, T * eta); };
  tp.K2bar = [T, k = spec.K2](double theta, double eta) { return T * k(T * theta, T * eta); };
  if (spec.has_exact()) {
    tp.phi = [T, y = spec.exact](double theta) { return y(T * theta); };
    tp.phi_prime = [T, dy = spec.exact_prime](double theta) { return T * dy(T * theta); };
  }
  return tp;
}

Fn1 manufactured_g(const ProblemSpec& spec, int points) {
  if (!spec.has_exact()) {
    throw std::invalid_argument("manufactured_g: problem '" + spec.name +
                                "' has no exact solution and derivative");
  }
  auto rule = std::make_shared<const QuadratureRule>(
      frac_gauss_jacobi(points, -spec.mu, spec.mu + spec.gamma - 1.0, 1.0));
  return [rule, gamma = spec.gamma, eps = spec.eps, p = spec.p, q = spec.q, K1 = spec.K1,
          K2 = spec.K2, y = spec.exact, dy = spec.exact_prime](double t) {
    const double tg = std::pow(t, gamma);
    // s = t x maps both memory integrals onto the fixed weight
    // (1-x)^-mu x^(mu+gamma-1); the Jacobian and singular factors collapse to t^gamma.
    double memory = 0.0;
    for (std::size_t k = 0; k < rule->nodes.size(); ++k) {
      const double x = rule->nodes[k];
      const double s = t * x;
      const double tau = eps * t * x;
      memory += rule->weights[k] * (K1(t, s) * y(s) + K2(t, tau) * y(tau));
    }
    return tg * dy(t) - p(t) * y(t) - q(t) * y(eps * t) - tg * memory;
  };
}

// ---------------------------------------------------------------- built-ins

namespace {

constexpr double kSqrt3Over3Pi = std::numbers::sqrt3 / (3.0 * std::numbers::pi);

ProblemSpec example1(double gamma) {
  ProblemSpec s;
  s.name = "ex1";
  s.mu = 0.5;
  s.gamma = gamma;
  s.eps = 0.5;
  s.T = 1.0;
  s.y0 = 0.0;
  const double mu = s.mu;
  s.p = [](double t) { return std::pow(t, 5.0 / 3.0); };
  s.q = s.p;
  s.K1 = [mu](double, double x) { return std::exp(std::pow(x, 1.0 - mu)); };
  s.K2 = s.K1;
  s.exact = [mu](double t) { return t * std::exp(-std::pow(t, 1.0 - mu)); };
  s.exact_prime = [mu](double t) {
    const double r = std::pow(t, 1.0 - mu);
    return std::exp(-r) * (1.0 - (1.0 - mu) * r);
  };
  // K1 y = s, so both memory terms are Beta integrals of s^(mu+gamma).
  const double eps = s.eps;
  s.g_reference = [mu, gamma, eps, y = s.exact, dy = s.exact_prime](double t) {
    const double b = fracvide::beta(1.0 - mu, mu + gamma + 1.0);
    return std::pow(t, gamma) * dy(t) - std::pow(t, 5.0 / 3.0) * (y(t) + y(eps * t)) -
           (1.0 + eps) * b * std::pow(t, gamma + 1.0);
  };
  s.g = [](double) { return 0.0; };
  if (auto errors = validate(s); !errors.empty()) {
    throw std::invalid_argument("ex1: " + errors.front());
  }
  s.g = manufactured_g(s);
  return s;
}

// Shared equation of ex2/ex3 with exact solution sum_w t^(1+w) e^-t.
ProblemSpec power_exponential_example(std::string name, double T, std::vector<double> powers) {
  ProblemSpec s;
  s.name = std::move(name);
  s.mu = 1.0 / 3.0;
  s.gamma = 1.0;
  s.eps = 0.66;
  s.T = T;
  s.y0 = 0.0;
  s.p = [](double t) { return std::pow(t, 5.0 / 3.0); };
  s.q = s.p;
  s.K1 = [](double, double x) { return kSqrt3Over3Pi * std::exp(x); };
  s.K2 = s.K1;
  s.exact = [powers](double t) {
    double sum = 0.0;
    for (double w : powers) sum += std::pow(t, 1.0 + w);
    return sum * std::exp(-t);
  };
  s.exact_prime = [powers](double t) {
    double sum = 0.0;
    for (double w : powers) sum += (1.0 + w) * std::pow(t, w) - std::pow(t, 1.0 + w);
    return sum * std::exp(-t);
  };
  const double mu = s.mu, gamma = s.gamma, eps = s.eps;
  s.g_reference = [powers, mu, gamma, eps, y = s.exact, dy = s.exact_prime](double t) {
    double memory = 0.0;
    for (double w : powers) {
      memory += kSqrt3Over3Pi * fracvide::beta(1.0 - mu, 1.0 + w + mu + gamma) *
                std::pow(t, 1.0 + w + gamma) * (1.0 + std::pow(eps, 1.0 + w));
    }
    return std::pow(t, gamma) * dy(t) - std::pow(t, 5.0 / 3.0) * (y(t) + y(eps * t)) - memory;
  };
  s.g = manufactured_g(s);
  return s;
}

ProblemSpec unknown_solution_example(std::string name, double mu) {
  ProblemSpec s;
  s.name = std::move(name);
  s.mu = mu;
  s.gamma = 1.0;
  s.eps = 0.5;
  s.T = 0.5;
  s.y0 = 3.0;
  s.p = [](double t) { return std::pow(t, 1.5) * std::cos(t); };
  s.q = [](double t) { return std::pow(t, 1.5) * std::exp(-t); };
  s.g = [](double t) { return std::sin(2.0 * t); };
  // The first memory term enters with a minus sign.
  s.K1 = [mu](double t, double x) { return -std::pow(x, 1.0 + mu) * (1.0 + std::sin(t * x)); };
  s.K2 = [mu](double t, double x) { return std::pow(x, 1.0 + mu) * (1.0 + std::cos(t * x)); };
  return s;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"ex1", "ex2", "ex3", "ex4", "ex5"}; }

bool is_builtin(std::string_view name) {
  for (const auto& n : builtin_names()) {
    if (n == name) return true;
  }
  return false;
}

ProblemSpec builtin(std::string_view name, const BuiltinOptions& options) {
  if (options.gamma_override && name != "ex1") {
    throw std::invalid_argument("gamma override only applies to ex1");
  }
  if (name == "ex1") return example1(options.gamma_override.value_or(1.0));
  if (name == "ex2") return power_exponential_example("ex2", 0.5, {1.0 / 3.0});
  if (name == "ex3") return power_exponential_example("ex3", 1.0, {0.5, std::numbers::sqrt2});
  if (name == "ex4") return unknown_solution_example("ex4", 0.5);
  if (name == "ex5") return unknown_solution_example("ex5", 2.0 - std::numbers::sqrt2);
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

}  // namespace fracvide
