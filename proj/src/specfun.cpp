#include "fracvide/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace fracvide {

namespace {

constexpr int kNewtonMaxIterations = 100;
// Relative to the extended-precision node, so well below a double ulp.
constexpr long double kNewtonTolerance = 1e-18L;

// Gamma stays finite (and glibc's tgamma is a few ulp accurate) well below 171.
constexpr double kDirectGammaLimit = 150.0;

}  // namespace

void check_jacobi_params(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("Jacobi parameters must satisfy alpha, beta > -1 (got alpha=" +
                      std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw DomainError("lambda must lie in (0, 1] (got " + std::to_string(lambda) + ")");
  }
}

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("ln_gamma: argument must be positive and finite (got " + std::to_string(x) +
                      ")");
  }
  int sign = 0;
  // lgamma_r: the plain lgamma writes the global signgam.
  return ::lgamma_r(x, &sign);
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("beta: arguments must be positive (got " + std::to_string(a) + ", " +
                      std::to_string(b) + ")");
  }
  if (a + b < kDirectGammaLimit) {
    return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  }
  return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

namespace {

template <typename Real>
Real jacobi_value(int n, Real alpha, Real beta, Real x) {
  if (n == 0) return 1;
  Real p_prev = 1;
  Real p = ((alpha + beta + 2) * x + alpha - beta) / 2;
  const Real ab = alpha + beta;
  const Real a2b2 = alpha * alpha - beta * beta;
  for (int k = 2; k <= n; ++k) {
    const Real s = 2 * k + ab;
    const Real denom = 2 * k * (k + ab) * (s - 2);
    const Real c1 = (s - 1) * (s * (s - 2) * x + a2b2);
    const Real c2 = 2 * (k + alpha - 1) * (k + beta - 1) * s;
    const Real next = (c1 * p - c2 * p_prev) / denom;
    p_prev = p;
    p = next;
  }
  return p;
}

}  // namespace

JacobiValue jacobi_eval(int n, double alpha, double beta, double x) {
  if (n < 0) throw DomainError("jacobi_eval: degree must be non-negative");
  check_jacobi_params(alpha, beta);
  if (n == 0) return {1.0, 0.0};
  // d/dx P_n^{(a,b)} = (n + a + b + 1) / 2 * P_{n-1}^{(a+1,b+1)}
  return {jacobi_value<double>(n, alpha, beta, x),
          0.5 * (n + alpha + beta + 1.0) * jacobi_value<double>(n - 1, alpha + 1.0, beta + 1.0, x)};
}

GaussRule gauss_jacobi(int n_points, double alpha, double beta) {
  if (n_points < 1) throw DomainError("gauss_jacobi: need at least one point");
  check_jacobi_params(alpha, beta);
  const int n = n_points;
  const double ab = alpha + beta;

  // Symmetric Jacobi matrix of the monic recurrence.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k == 1) {
      // The general form is 0/0 when alpha + beta = -1.
      sub(0) = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    } else {
      const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
      const double den = s * s * (s + 1.0) * (s - 1.0);
      sub(k - 1) = std::sqrt(num / den);
    }
  }

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw DomainError("gauss_jacobi: tridiagonal eigensolver failed for n=" + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) rule.nodes[j] = solver.eigenvalues()(j);
  }

  // Gamma(n+a+1) Gamma(n+b+1) / (Gamma(n+a+b+1) n!) as a running product:
  // differencing lgamma values near n ln n would cost ~n ln n ulp.
  using Ext = long double;
  const Ext a = alpha, b = beta, abx = ab;
  Ext ratio = std::exp(ln_gamma(alpha + 2.0) + ln_gamma(beta + 2.0) - ln_gamma(ab + 2.0));
  for (int k = 2; k <= n; ++k) ratio *= (k + a) * (k + b) / ((k + abx) * k);
  const Ext scale = std::exp2(abx + 1) * ratio;
  // Newton polish and weights run in extended precision. Near +-1 the
  // weight changes by ~1/(1-|x|) per unit of x, so evaluating it at the
  // double-rounded node would cost up to ~1e-12; the weight instead belongs
  // to the exact node and only the final values are rounded.
  const Ext dscale = (abx + n + 1) / 2;
  for (int j = 0; j < n; ++j) {
    Ext x = rule.nodes[j];
    bool converged = false;
    Ext d = 0;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      const Ext p = jacobi_value<Ext>(n, a, b, x);
      d = dscale * jacobi_value<Ext>(n - 1, a + 1, b + 1, x);
      const Ext step = p / d;
      x -= step;
      if (std::abs(step) <= kNewtonTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged || !(x > -1 && x < 1)) {
      throw DomainError("gauss_jacobi: Newton polish failed for node " + std::to_string(j) +
                        " (n=" + std::to_string(n) + ", alpha=" + std::to_string(alpha) +
                        ", beta=" + std::to_string(beta) + ")");
    }
    d = dscale * jacobi_value<Ext>(n - 1, a + 1, b + 1, x);
    rule.nodes[j] = static_cast<double>(x);
    rule.weights[j] = static_cast<double>(scale / ((1 - x) * (1 + x) * d * d));
  }
  for (int j = 1; j < n; ++j) {
    if (!(rule.nodes[j] > rule.nodes[j - 1])) {
      throw DomainError("gauss_jacobi: nodes not strictly increasing (n=" + std::to_string(n) +
                        ")");
    }
  }
  return rule;
}

QuadratureRule frac_gauss_jacobi(int n_points, double alpha, double beta, double lambda) {
  check_lambda(lambda);
  GaussRule classical = gauss_jacobi(n_points, alpha, beta);
  QuadratureRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.lambda = lambda;
  rule.n_points = n_points;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  rule.z_nodes.resize(n_points);
  const double weight_scale = std::exp2(-(alpha + beta + 1.0));
  for (int j = 0; j < n_points; ++j) {
    const double z = 0.5 * (1.0 + classical.nodes[j]);
    rule.z_nodes[j] = z;
    rule.nodes[j] = lambda == 1.0 ? z : std::pow(z, 1.0 / lambda);
    rule.weights[j] = weight_scale * classical.weights[j];
  }
  return rule;
}

}  // namespace fracvide
