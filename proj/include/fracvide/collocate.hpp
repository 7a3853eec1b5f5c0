#pragma once

// Fractional Jacobi collocation for the transformed problem on [0,1].
//
// Unknowns are nodal values of phi' (u_star), phi (u) and phi(eps theta) (v).
// With the integral operators discretised on N+1 point rules the scheme reads
//
//   u_star = (P + C + D) u + Q v + G,   u = U0 + E u_star,   v = U0 + H u_star,
//
// and u, v are eliminated before the dense solve.

#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "fracvide/fracbasis.hpp"
#include "fracvide/problem.hpp"
#include "fracvide/specfun.hpp"

namespace fracvide {

enum class Execution { serial_reference, parallel };

struct AssemblyOptions {
  int oversample = 1;  // quadrature points = oversample * (N+1)
  Execution exec = Execution::parallel;
};

struct CollocationSystem {
  int n = 0;
  double lambda = 1.0;
  double alpha_c = -0.5;
  double beta_c = -0.5;
  double mu = 0.0;
  double gamma = 1.0;
  double eps = 1.0;
  double T = 1.0;
  double y0 = 0.0;
  FractionalBasis basis;
  Eigen::VectorXd p_diag;  // diagonal of P
  Eigen::VectorXd q_diag;  // diagonal of Q
  Eigen::VectorXd G;
  Eigen::VectorXd U0;
  Eigen::MatrixXd C, D, E, H;
  QuadratureRule kernel_rule;  // in xi, weight (1-xi)^-mu xi^((mu+gamma)/lambda - 1)
  QuadratureRule anti_rule;    // in xi, weight xi^(1/lambda - 1)

  int size() const { return n + 1; }
};

/// exp(-mu [log1p(-xi^(1/lambda)) - log1p(-xi)]), i.e.
/// ((1 - xi^(1/lambda)) / (1 - xi))^-mu. Exactly 1 at lambda = 1.
/// Throws DomainError unless 0 < xi < 1.
double singular_ratio(double xi, double lambda, double mu);

/// Kernel seen by the xi-rule at collocation point theta:
/// (theta, xi) -> (1/lambda) singular_ratio(xi) kbar(theta, eta) with
/// eta = theta xi^(1/lambda) (times eps for the delayed kernel).
Fn2 transform_kernel(Fn2 kbar, double lambda, double mu, double eps = 1.0);

CollocationSystem assemble(const TransformedProblem& tp, int n, double lambda, double alpha_c,
                           double beta_c, const AssemblyOptions& options = {});

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int n, double lambda)
      : std::runtime_error(what), n_(n), lambda_(lambda) {}
  int n() const { return n_; }
  double lambda() const { return lambda_; }

 private:
  int n_;
  double lambda_;
};

struct SolutionApprox {
  std::shared_ptr<const CollocationSystem> system;
  Eigen::VectorXd u_star;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double residual = 0.0;  // ||A u_star - rhs||_inf of the reduced system

  /// phi_N(theta) = sum_j u_j F_j(theta).
  double evaluate(double theta) const;
  /// phi*_N(theta) = sum_j u*_j F_j(theta); an independent approximation of
  /// phi', not the derivative of phi_N.
  double evaluate_derivative(double theta) const;
  /// y_N(t) = phi_N(t / T); throws std::out_of_range outside [0, T].
  double to_physical(double t) const;
};

SolutionApprox solve(std::shared_ptr<const CollocationSystem> system);
SolutionApprox solve(CollocationSystem system);

/// Debug path: solves the full 3(N+1) block system for (u_star, u, v).
SolutionApprox solve_block(std::shared_ptr<const CollocationSystem> system);

/// assemble + solve on the transformed problem.
SolutionApprox solve_problem(const ProblemSpec& spec, int n, double lambda, double alpha_c,
                             double beta_c, const AssemblyOptions& options = {});

}  // namespace fracvide
