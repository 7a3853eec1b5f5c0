#include "fracvide/fracbasis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracvide {

namespace {

constexpr double kNodeHitTolerance = 1e-15;

}  // namespace

FractionalBasis::FractionalBasis(int degree, double alpha, double beta, double lambda)
    : alpha_(alpha), beta_(beta), lambda_(lambda) {
  if (degree < 0) throw std::invalid_argument("FractionalBasis: degree must be >= 0");
  QuadratureRule rule = frac_gauss_jacobi(degree + 1, alpha, beta, lambda);
  nodes_ = std::move(rule.nodes);
  z_nodes_ = std::move(rule.z_nodes);

  const int n = size();
  bary_weights_.assign(n, 1.0);
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      if (i != j) prod *= z_nodes_[j] - z_nodes_[i];
    }
    bary_weights_[j] = 1.0 / prod;
  }
  // Common scaling cancels in the second form; normalise to avoid overflow.
  double scale = 0.0;
  for (double w : bary_weights_) scale = std::max(scale, std::abs(w));
  for (double& w : bary_weights_) w /= scale;
}

double FractionalBasis::to_z(double theta) const {
  return lambda_ == 1.0 ? theta : std::pow(theta, lambda_);
}

int FractionalBasis::node_hit(double z) const {
  for (int k = 0; k < size(); ++k) {
    if (std::abs(z - z_nodes_[k]) <= kNodeHitTolerance * std::max(1.0, std::abs(z_nodes_[k]))) {
      return k;
    }
  }
  return -1;
}

void FractionalBasis::eval_all_z(double z, std::span<double> out) const {
  const int n = size();
  if (static_cast<int>(out.size()) != n) {
    throw std::invalid_argument("eval_all: output span has wrong length");
  }
  if (const int hit = node_hit(z); hit >= 0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[hit] = 1.0;
    return;
  }
  double denom = 0.0;
  for (int k = 0; k < n; ++k) {
    const double term = bary_weights_[k] / (z - z_nodes_[k]);
    out[k] = term;
    denom += term;
  }
  for (int k = 0; k < n; ++k) out[k] /= denom;
}

void FractionalBasis::eval_all(double theta, std::span<double> out) const {
  eval_all_z(to_z(theta), out);
}

double FractionalBasis::eval(int j, double theta) const {
  if (j < 0 || j >= size()) throw std::out_of_range("eval_basis: index out of range");
  const double z = to_z(theta);
  if (const int hit = node_hit(z); hit >= 0) return hit == j ? 1.0 : 0.0;
  double denom = 0.0;
  for (int k = 0; k < size(); ++k) denom += bary_weights_[k] / (z - z_nodes_[k]);
  return bary_weights_[j] / (z - z_nodes_[j]) / denom;
}

double FractionalBasis::interpolate(std::span<const double> values, double theta) const {
  if (static_cast<int>(values.size()) != size()) {
    throw std::invalid_argument("interpolate: expected " + std::to_string(size()) +
                                " values, got " + std::to_string(values.size()));
  }
  const double z = to_z(theta);
  if (const int hit = node_hit(z); hit >= 0) return values[hit];
  double num = 0.0;
  double denom = 0.0;
  for (int k = 0; k < size(); ++k) {
    const double term = bary_weights_[k] / (z - z_nodes_[k]);
    num += term * values[k];
    denom += term;
  }
  return num / denom;
}

FractionalBasis build_basis(int degree, double alpha, double beta, double lambda) {
  return FractionalBasis(degree, alpha, beta, lambda);
}

double eval_basis(const FractionalBasis& basis, int j, double theta) {
  return basis.eval(j, theta);
}

double interpolate(const FractionalBasis& basis, std::span<const double> values, double theta) {
  return basis.interpolate(values, theta);
}

double lebesgue_constant(const FractionalBasis& basis, int grid_size) {
  if (grid_size < 10 * basis.size()) {
    throw std::invalid_argument("lebesgue_constant: grid_size must be at least 10(N+1)");
  }
  std::vector<double> f(basis.size());
  double best = 0.0;
  for (int g = 0; g < grid_size; ++g) {
    const double theta = static_cast<double>(g) / (grid_size - 1);
    basis.eval_all(theta, f);
    double sum = 0.0;
    for (double v : f) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

double weighted_l2_norm(const RealFunction& f, double alpha, double beta, double lambda,
                        int m_points) {
  if (m_points < 1) throw std::invalid_argument("weighted_l2_norm: m_points must be >= 1");
  const QuadratureRule rule = frac_gauss_jacobi(m_points, alpha, beta, lambda);
  const double sq = rule.integrate([&](double theta) {
    const double v = f(theta);
    return v * v;
  });
  return std::sqrt(sq);
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> grid(points);
  for (int g = 0; g < points; ++g) grid[g] = static_cast<double>(g) / (points - 1);
  return grid;
}

std::vector<double> default_sup_grid(const FractionalBasis& basis) {
  std::vector<double> grid;
  grid.reserve(kDefaultSupGridPoints + basis.nodes().size());
  for (int g = 0; g < kDefaultSupGridPoints; ++g) {
    grid.push_back(static_cast<double>(g) / (kDefaultSupGridPoints - 1));
  }
  for (double theta : basis.nodes()) grid.push_back(theta);
  std::sort(grid.begin(), grid.end());
  return grid;
}

double sup_norm(const RealFunction& f, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("sup_norm: empty grid");
  double best = 0.0;
  for (double theta : grid) {
    const double v = std::abs(f(theta));
    if (std::isnan(v)) return v;
    best = std::max(best, v);
  }
  return best;
}

}  // namespace fracvide
