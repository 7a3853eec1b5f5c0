#pragma once

// Generalised Lagrange basis on fractional Jacobi-Gauss nodes and the two
// error norms used for convergence studies.

#include <functional>
#include <span>
#include <vector>

#include "fracvide/specfun.hpp"

namespace fracvide {

/// Cardinal functions F_j(theta) on the zeros of J_{N+1}^{alpha,beta,lambda}.
///
/// Each F_j is a polynomial of degree N in z = theta^lambda; evaluation uses
/// the second barycentric form in z.
class FractionalBasis {
 public:
  FractionalBasis(int degree, double alpha, double beta, double lambda);

  int degree() const { return static_cast<int>(nodes_.size()) - 1; }
  int size() const { return static_cast<int>(nodes_.size()); }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double lambda() const { return lambda_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& z_nodes() const { return z_nodes_; }
  const std::vector<double>& bary_weights() const { return bary_weights_; }

  double to_z(double theta) const;

  /// F_j(theta).
  double eval(int j, double theta) const;

  /// Writes F_0(theta) .. F_N(theta) into out (size N+1).
  void eval_all(double theta, std::span<double> out) const;

  /// Same as eval_all, for a point already expressed in z = theta^lambda.
  void eval_all_z(double z, std::span<double> out) const;

  /// sum_j values[j] F_j(theta).
  double interpolate(std::span<const double> values, double theta) const;

 private:
  // Index of the node hit by z, or -1.
  int node_hit(double z) const;

  double alpha_;
  double beta_;
  double lambda_;
  std::vector<double> nodes_;
  std::vector<double> z_nodes_;
  std::vector<double> bary_weights_;
};

FractionalBasis build_basis(int degree, double alpha, double beta, double lambda);

double eval_basis(const FractionalBasis& basis, int j, double theta);

double interpolate(const FractionalBasis& basis, std::span<const double> values, double theta);

/// max over a uniform theta grid of sum_j |F_j(theta)|.
double lebesgue_constant(const FractionalBasis& basis, int grid_size);

using RealFunction = std::function<double(double)>;

constexpr int kDefaultNormPoints = 200;
constexpr int kDefaultSupGridPoints = 1000;

/// ||f||_{0,w} with w = w^{alpha,beta,lambda}, computed with an m-point
/// fractional Gauss rule.
double weighted_l2_norm(const RealFunction& f, double alpha, double beta, double lambda,
                        int m_points = kDefaultNormPoints);

/// 1000 uniform points on [0,1] (endpoints included) merged with the basis
/// nodes, sorted.
std::vector<double> default_sup_grid(const FractionalBasis& basis);
std::vector<double> uniform_grid(int points);

/// max |f| over the grid; a grid approximation of the true sup norm.
double sup_norm(const RealFunction& f, std::span<const double> grid);

}  // namespace fracvide
