#include "fracvide/assembly_kernels.hpp"

#include <cmath>
#include <vector>

#ifdef FRACVIDE_HAVE_OPENMP
#include <omp.h>
#endif

namespace fracvide {

namespace {

double root_lambda(double xi, double lambda) {
  return lambda == 1.0 ? xi : std::pow(xi, 1.0 / lambda);
}

}  // namespace

int assembly_threads() {
#ifdef FRACVIDE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void assemble_operators_parallel(const TransformedProblem& tp, CollocationSystem& sys) {
  const int m = sys.size();
  const double lambda = sys.lambda;
  const double mu = sys.mu;
  const double eps = sys.eps;
  const double eps_z = lambda == 1.0 ? eps : std::pow(eps, lambda);
  const FractionalBasis& basis = sys.basis;
  const auto& theta = basis.nodes();
  const auto& z = basis.z_nodes();
  const QuadratureRule& kr = sys.kernel_rule;
  const QuadratureRule& ar = sys.anti_rule;
  const int nk = static_cast<int>(kr.nodes.size());
  const int na = static_cast<int>(ar.nodes.size());

  // Per-point factors shared by every row.
  std::vector<double> k_root(nk), k_scale(nk), a_root(na);
  for (int k = 0; k < nk; ++k) {
    k_root[k] = root_lambda(kr.nodes[k], lambda);
    k_scale[k] = kr.weights[k] * singular_ratio(kr.nodes[k], lambda, mu) / lambda;
  }
  for (int k = 0; k < na; ++k) a_root[k] = root_lambda(ar.nodes[k], lambda);

  sys.C.setZero(m, m);
  sys.D.setZero(m, m);
  sys.E.setZero(m, m);
  sys.H.setZero(m, m);

#ifdef FRACVIDE_HAVE_OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> f(m);
#ifdef FRACVIDE_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
    for (int i = 0; i < m; ++i) {
      const double th = theta[i];
      for (int k = 0; k < nk; ++k) {
        const double eta = th * k_root[k];
        const double xi = kr.nodes[k];
        const double c = k_scale[k] * tp.K1bar(th, eta);
        basis.eval_all_z(z[i] * xi, f);
        for (int j = 0; j < m; ++j) sys.C(i, j) += c * f[j];
        const double d = k_scale[k] * tp.K2bar(th, eps * eta);
        basis.eval_all_z(eps_z * z[i] * xi, f);
        for (int j = 0; j < m; ++j) sys.D(i, j) += d * f[j];
      }
      for (int k = 0; k < na; ++k) {
        const double xi = ar.nodes[k];
        const double w = ar.weights[k] * th / lambda;
        basis.eval_all_z(z[i] * xi, f);
        for (int j = 0; j < m; ++j) sys.E(i, j) += w * f[j];
        basis.eval_all_z(eps_z * z[i] * xi, f);
        for (int j = 0; j < m; ++j) sys.H(i, j) += eps * w * f[j];
      }
    }
  }
}

void assemble_operators_serial(const TransformedProblem& tp, CollocationSystem& sys) {
  const int m = sys.size();
  const double lambda = sys.lambda;
  const double eps = sys.eps;
  const FractionalBasis& basis = sys.basis;
  const auto& theta = basis.nodes();
  const Fn2 k1 = transform_kernel(tp.K1bar, lambda, sys.mu);
  const Fn2 k2 = transform_kernel(tp.K2bar, lambda, sys.mu, eps);

  sys.C.setZero(m, m);
  sys.D.setZero(m, m);
  sys.E.setZero(m, m);
  sys.H.setZero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < sys.kernel_rule.nodes.size(); ++k) {
        const double xi = sys.kernel_rule.nodes[k];
        const double w = sys.kernel_rule.weights[k];
        const double eta = theta[i] * std::pow(xi, 1.0 / lambda);
        sys.C(i, j) += k1(theta[i], xi) * basis.eval(j, eta) * w;
        sys.D(i, j) += k2(theta[i], xi) * basis.eval(j, eps * eta) * w;
      }
      for (std::size_t k = 0; k < sys.anti_rule.nodes.size(); ++k) {
        const double xi = sys.anti_rule.nodes[k];
        const double w = sys.anti_rule.weights[k];
        const double eta = theta[i] * std::pow(xi, 1.0 / lambda);
        sys.E(i, j) += theta[i] / lambda * basis.eval(j, eta) * w;
        sys.H(i, j) += eps * theta[i] / lambda * basis.eval(j, eps * eta) * w;
      }
    }
  }
}

}  // namespace fracvide
