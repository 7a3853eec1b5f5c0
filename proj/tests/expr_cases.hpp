#pragma once

// Golden expressions and a random tree generator shared by the unit and
// acceptance tests.

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fracvide/expr.hpp"

namespace expr_cases {

struct Golden {
  const char* source;
  const char* printed;  // canonical fully parenthesised form
  double value;         // under bindings()
};

inline fracvide::expr::Bindings bindings() {
  using fracvide::expr::Var;
  fracvide::expr::Bindings b;
  b.set(Var::t, 0.7).set(Var::s, 0.3).set(Var::tau, 0.2).set(Var::eps, 0.5);
  b.set(Var::mu, 0.5).set(Var::gamma, 1.0).set(Var::T, 2.0);
  return b;
}

inline std::vector<Golden> golden() {
  const double t = 0.7, s = 0.3, tau = 0.2, eps = 0.5, mu = 0.5, gamma = 1.0, T = 2.0;
  const double pi = std::numbers::pi, e = std::numbers::e;
  return {
      {"1 + 2 * 3", "(1 + (2 * 3))", 7.0},
      {"(1 + 2) * 3", "((1 + 2) * 3)", 9.0},
      {"2 ^ 3 ^ 2", "(2 ^ (3 ^ 2))", 512.0},
      {"-2 ^ 2", "(-(2 ^ 2))", -4.0},
      {"2 ^ -1", "(2 ^ (-1))", 0.5},
      {"8 / 4 / 2", "((8 / 4) / 2)", 1.0},
      {"10 - 4 - 3", "((10 - 4) - 3)", 3.0},
      {"--3", "(-(-3))", 3.0},
      {"t^(5/3)", "(t ^ (5 / 3))", std::pow(t, 5.0 / 3.0)},
      {"t*exp(-t^(1-mu))", "(t * exp((-(t ^ (1 - mu)))))", t * std::exp(-std::pow(t, 1.0 - mu))},
      {"exp(s^(1-mu))", "exp((s ^ (1 - mu)))", std::exp(std::pow(s, 1.0 - mu))},
      {"tau^(1+mu)*(1+cos(t*tau))", "((tau ^ (1 + mu)) * (1 + cos((t * tau))))",
       std::pow(tau, 1.0 + mu) * (1.0 + std::cos(t * tau))},
      {"sqrt(3)/(3*pi)*exp(s)", "((sqrt(3) / (3 * pi)) * exp(s))",
       std::sqrt(3.0) / (3.0 * pi) * std::exp(s)},
      {"beta(1-mu, mu+gamma)", "beta((1 - mu), (mu + gamma))", std::tgamma(0.5) * std::tgamma(1.5) / std::tgamma(2.0)},
      {"pow(t, 1.5) * cos(t)", "(pow(t, 1.5) * cos(t))", std::pow(t, 1.5) * std::cos(t)},
      {"ln(e) + abs(-2.5)", "(ln(e) + abs((-2.5)))", 3.5},
      {"sin(pi/2) - 1e-3", "(sin((pi / 2)) - 0.001)", 1.0 - 1e-3},
      {"T * eps * t", "((T * eps) * t)", T * eps * t},
      {".5 * 2.5E2", "(0.5 * 250)", 125.0},
      {"-(t - s) * -tau", "((-(t - s)) * (-tau))", (t - s) * tau},
      {"exp(-t)*(t^(1+1/3))", "(exp((-t)) * (t ^ (1 + (1 / 3))))",
       std::exp(-t) * std::pow(t, 4.0 / 3.0)},
      {"gamma + mu * 2 ^ 2", "(gamma + (mu * (2 ^ 2)))", gamma + mu * 4.0},
      {" e ^ ( 1 ) ", "(e ^ 1)", e},
  };
}

/// Random expression of the given depth over a fixed variable and function set.
class TreeGen {
 public:
  explicit TreeGen(unsigned seed) : rng_(seed) {}

  fracvide::expr::Expr make(int depth) {
    using namespace fracvide::expr;
    if (depth == 0) {
      if (pick(2) == 0) return number(static_cast<double>(pick(1000)) / 8.0);
      static constexpr Var vars[] = {Var::t, Var::s, Var::tau, Var::eps, Var::mu, Var::gamma, Var::T};
      return variable(vars[pick(7)]);
    }
    switch (pick(4)) {
      case 0:
        return negate(make(depth - 1));
      case 1: {
        static constexpr Func unary[] = {Func::exp, Func::ln, Func::sin, Func::cos, Func::sqrt,
                                         Func::abs};
        return call(unary[pick(6)], {make(depth - 1)});
      }
      case 2:
        return call(pick(2) ? Func::pow : Func::beta, {make(depth - 1), make(depth - 1)});
      default: {
        static constexpr char ops[] = {'+', '-', '*', '/', '^'};
        return binary(ops[pick(5)], make(depth - 1), make(depth - 1));
      }
    }
  }

 private:
  unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }
  std::mt19937 rng_;
};

}  // namespace expr_cases
