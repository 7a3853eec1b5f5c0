#include "fracvide/collocate.hpp"

#include <cmath>
#include <sstream>

#include "fracvide/assembly_kernels.hpp"

namespace fracvide {

namespace {

constexpr double kPivotTolerance = 1e-14;

std::string describe(int n, double lambda) {
  std::ostringstream os;
  os << "N=" << n << ", lambda=" << lambda;
  return os.str();
}

// Partial-pivot LU with a relative pivot floor.
Eigen::VectorXd checked_lu_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int n,
                                 double lambda) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw SolverError("collocation matrix is zero or not finite (" + describe(n, lambda) + ")",
                      n, lambda);
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot >= kPivotTolerance * scale)) {
    std::ostringstream os;
    os << "collocation matrix is numerically singular (" << describe(n, lambda)
       << ", min pivot " << min_pivot << ", scale " << scale << ")";
    throw SolverError(os.str(), n, lambda);
  }
  return lu.solve(b);
}

}  // namespace

double singular_ratio(double xi, double lambda, double mu) {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw DomainError("singular_ratio: xi must lie in (0,1)");
  }
  if (lambda == 1.0 || mu == 0.0) return 1.0;
  return std::exp(-mu * (std::log1p(-std::pow(xi, 1.0 / lambda)) - std::log1p(-xi)));
}

Fn2 transform_kernel(Fn2 kbar, double lambda, double mu, double eps) {
  check_lambda(lambda);
  if (!(mu >= 0.0 && mu < 1.0)) throw std::invalid_argument("transform_kernel: mu must be in [0,1)");
  return [kbar = std::move(kbar), lambda, mu, eps](double theta, double xi) {
    const double ratio = singular_ratio(xi, lambda, mu);
    const double eta = theta * (lambda == 1.0 ? xi : std::pow(xi, 1.0 / lambda));
    return ratio / lambda * kbar(theta, eps * eta);
  };
}

CollocationSystem assemble(const TransformedProblem& tp, int n, double lambda, double alpha_c,
                           double beta_c, const AssemblyOptions& options) {
  if (n < 0) throw std::invalid_argument("assemble: N must be >= 0");
  if (options.oversample < 1) throw std::invalid_argument("assemble: oversample must be >= 1");
  check_lambda(lambda);
  check_jacobi_params(alpha_c, beta_c);
  const int points = options.oversample * (n + 1);

  CollocationSystem sys{
      .n = n,
      .lambda = lambda,
      .alpha_c = alpha_c,
      .beta_c = beta_c,
      .mu = tp.mu,
      .gamma = tp.gamma,
      .eps = tp.eps,
      .T = tp.T,
      .y0 = tp.y0,
      .basis = FractionalBasis(n, alpha_c, beta_c, lambda),
      .p_diag = {},
      .q_diag = {},
      .G = {},
      .U0 = {},
      .C = {},
      .D = {},
      .E = {},
      .H = {},
      .kernel_rule = frac_gauss_jacobi(points, -tp.mu, (tp.mu + tp.gamma) / lambda - 1.0, 1.0),
      .anti_rule = frac_gauss_jacobi(points, 0.0, 1.0 / lambda - 1.0, 1.0),
  };

  const int m = n + 1;
  const auto& theta = sys.basis.nodes();
  sys.p_diag.resize(m);
  sys.q_diag.resize(m);
  sys.G.resize(m);
  sys.U0 = Eigen::VectorXd::Constant(m, tp.y0);
  for (int i = 0; i < m; ++i) {
    sys.p_diag[i] = tp.p1(theta[i]);
    sys.q_diag[i] = tp.q1(theta[i]);
    sys.G[i] = tp.g1(theta[i]);
  }

  if (options.exec == Execution::parallel) {
    assemble_operators_parallel(tp, sys);
  } else {
    assemble_operators_serial(tp, sys);
  }
  return sys;
}

SolutionApprox solve(std::shared_ptr<const CollocationSystem> system) {
  const CollocationSystem& s = *system;
  const int m = s.size();
  const Eigen::MatrixXd pcd = Eigen::MatrixXd(s.p_diag.asDiagonal()) + s.C + s.D;
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - pcd * s.E -
                            s.q_diag.asDiagonal() * s.H;
  const Eigen::VectorXd rhs = (pcd + Eigen::MatrixXd(s.q_diag.asDiagonal())) * s.U0 + s.G;
  if (!rhs.allFinite()) {
    throw SolverError("right-hand side is not finite (" + describe(s.n, s.lambda) + ")", s.n,
                      s.lambda);
  }

  SolutionApprox sol;
  sol.u_star = checked_lu_solve(a, rhs, s.n, s.lambda);
  sol.u = s.U0 + s.E * sol.u_star;
  sol.v = s.U0 + s.H * sol.u_star;
  sol.residual = (a * sol.u_star - rhs).cwiseAbs().maxCoeff();
  sol.system = std::move(system);
  return sol;
}

SolutionApprox solve(CollocationSystem system) {
  return solve(std::make_shared<const CollocationSystem>(std::move(system)));
}

SolutionApprox solve_block(std::shared_ptr<const CollocationSystem> system) {
  const CollocationSystem& s = *system;
  const int m = s.size();
  const auto id = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * m, 3 * m);
  // Row blocks: derivative equation, antiderivative for u, delayed antiderivative for v.
  a.block(0, 0, m, m) = id;
  a.block(0, m, m, m) = -(Eigen::MatrixXd(s.p_diag.asDiagonal()) + s.C + s.D);
  a.block(0, 2 * m, m, m) = -Eigen::MatrixXd(s.q_diag.asDiagonal());
  a.block(m, 0, m, m) = -s.E;
  a.block(m, m, m, m) = id;
  a.block(2 * m, 0, m, m) = -s.H;
  a.block(2 * m, 2 * m, m, m) = id;
  Eigen::VectorXd rhs(3 * m);
  rhs << s.G, s.U0, s.U0;

  const Eigen::VectorXd x = checked_lu_solve(a, rhs, s.n, s.lambda);
  SolutionApprox sol;
  sol.u_star = x.segment(0, m);
  sol.u = x.segment(m, m);
  sol.v = x.segment(2 * m, m);
  sol.residual = (a * x - rhs).cwiseAbs().maxCoeff();
  sol.system = std::move(system);
  return sol;
}

SolutionApprox solve_problem(const ProblemSpec& spec, int n, double lambda, double alpha_c,
                             double beta_c, const AssemblyOptions& options) {
  return solve(assemble(transform(spec), n, lambda, alpha_c, beta_c, options));
}

double SolutionApprox::evaluate(double theta) const {
  return system->basis.interpolate(std::span<const double>(u.data(), u.size()), theta);
}

double SolutionApprox::evaluate_derivative(double theta) const {
  return system->basis.interpolate(std::span<const double>(u_star.data(), u_star.size()), theta);
}

double SolutionApprox::to_physical(double t) const {
  if (!(t >= 0.0 && t <= system->T)) {
    throw std::out_of_range("to_physical: t must lie in [0, T]");
  }
  return evaluate(t / system->T);
}

}  // namespace fracvide
