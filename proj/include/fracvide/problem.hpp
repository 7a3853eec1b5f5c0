#pragma once

// Problem definitions for third-kind VIDEs with proportional delay:
//
//   t^gamma y'(t) = p(t) y(t) + q(t) y(eps t) + g(t)
//                 + int_0^t (t-s)^-mu s^(mu+gamma-1) K1(t,s) y(s) ds
//                 + eps^-gamma int_0^(eps t) (eps t-tau)^-mu tau^(mu+gamma-1) K2(t,tau) y(tau) dtau
//   y(0) = y0,  t in [0, T].

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracvide {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

struct ProblemSpec {
  std::string name;
  double mu = 0.0;     // weak singularity exponent, [0,1)
  double gamma = 1.0;  // > 0, mu + gamma >= 1
  double eps = 1.0;    // proportional delay factor, (0,1]
  double T = 1.0;
  double y0 = 0.0;
  Fn1 p, q, g;
  Fn2 K1;  // K1(t, s)
  Fn2 K2;  // K2(t, tau)
  Fn1 exact;        // optional
  Fn1 exact_prime;  // optional
  Fn1 g_reference;  // optional closed-form forcing, kept for cross-checks

  bool has_exact() const { return static_cast<bool>(exact) && static_cast<bool>(exact_prime); }
};

/// All violated constraints; empty when the spec is usable.
std::vector<std::string> validate(const ProblemSpec& spec);

/// The problem rescaled to theta in [0,1] via t = T theta.
struct TransformedProblem {
  double mu = 0.0;
  double gamma = 1.0;
  double eps = 1.0;
  double T = 1.0;
  double y0 = 0.0;
  Fn1 p1;      // T (T theta)^-gamma p(T theta)
  Fn1 q1;      // T (T theta)^-gamma q(T theta)
  Fn1 g1;      // T (T theta)^-gamma g(T theta)
  Fn2 K1bar;   // T K1(T theta, T eta)
  Fn2 K2bar;   // T K2(T theta, T eta'), eta' the (already delayed) argument
  Fn1 phi;        // y(T theta), when known
  Fn1 phi_prime;  // T y'(T theta), when known
};

TransformedProblem transform(const ProblemSpec& spec);

struct BuiltinOptions {
  std::optional<double> gamma_override;  // only meaningful for ex1
};

/// ex1 .. ex5.
ProblemSpec builtin(std::string_view name, const BuiltinOptions& options = {});
std::vector<std::string> builtin_names();
bool is_builtin(std::string_view name);

constexpr int kManufacturedPoints = 200;

/// Forcing g(t) that makes spec.exact solve the equation. Both memory
/// integrals use a Gauss-Jacobi rule matched to (1-x)^-mu x^(mu+gamma-1).
Fn1 manufactured_g(const ProblemSpec& spec, int points = kManufacturedPoints);

/// Reads a key=value problem file (see README). Throws std::runtime_error
/// with the file name and line on any problem.
ProblemSpec load_problem_file(const std::string& path);
ProblemSpec parse_problem_config(std::string_view text, std::string name);

}  // namespace fracvide
