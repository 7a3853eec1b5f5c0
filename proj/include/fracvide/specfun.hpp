#pragma once

// Special functions and Gauss-Jacobi machinery.
//
// Classical Jacobi polynomials use the Szego normalisation, orthogonal on
// [-1,1] under (1-x)^alpha (1+x)^beta. The fractional rules live on [0,1]
// and integrate against
//
//   w(theta) = lambda (1 - theta^lambda)^alpha theta^((beta+1) lambda - 1),
//
// which becomes the Jacobi weight (1-z)^alpha z^beta under z = theta^lambda.

#include <stdexcept>
#include <string>
#include <vector>

namespace fracvide {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) for a, b > 0.
double beta(double a, double b);

struct JacobiValue {
  double value;
  double derivative;
};

/// Value and first derivative of P_n^{(alpha,beta)}(x) by the three-term
/// recurrence.
JacobiValue jacobi_eval(int n, double alpha, double beta, double x);

/// Nodes ascending, weights positive; nodes are the zeros of P_n^{(alpha,beta)}.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Jacobi rule on [-1,1] for (1-x)^alpha (1+x)^beta.
///
/// Nodes start from the eigenvalues of the symmetric Jacobi matrix and are
/// polished by Newton on P_n; weights come from the closed-form Christoffel
/// numbers (gamma ratio as a running product) rather than eigenvector components,
/// so they keep full relative accuracy near the endpoints.
GaussRule gauss_jacobi(int n_points, double alpha, double beta);

struct QuadratureRule {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 1.0;
  int n_points = 0;
  std::vector<double> nodes;    // theta_j, strictly increasing in (0,1)
  std::vector<double> weights;  // omega_j > 0
  std::vector<double> z_nodes;  // theta_j^lambda = (t_j + 1) / 2, kept exact

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * f(nodes[k]);
    return sum;
  }
};

/// Fractional Jacobi-Gauss rule on [0,1]: theta_j = ((t_j+1)/2)^(1/lambda),
/// omega_j = 2^-(alpha+beta+1) w_j.
QuadratureRule frac_gauss_jacobi(int n_points, double alpha, double beta, double lambda);

void check_jacobi_params(double alpha, double beta);
void check_lambda(double lambda);

}  // namespace fracvide
