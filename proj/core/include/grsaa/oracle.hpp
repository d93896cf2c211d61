#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "grsaa/problems.hpp"

namespace grsaa {

// Ground truth that does not go through sampling or the homotopy: analytic or
// quadrature expectations over xi ~ uniform[-1, 1], solved by damped Newton.

/// E f_i = x_i - 5 sin(1) sin(i * sum x).
Eigen::VectorXd sin_expected_residual(const Eigen::VectorXd& x);
Eigen::MatrixXd sin_expected_jacobian(const Eigen::VectorXd& x);

/// E[exp(cos(a + xi))] for xi ~ uniform[-1, 1], adaptive Gauss-Kronrod.
double expected_exp_cos(double a);
/// E[exp(cos(a + xi)) sin(a + xi)].
double expected_exp_cos_sin(double a);

/// E f_i = x_i - E exp(cos(i * sum x + xi)) (unsigned, as printed).
Eigen::VectorXd svi_expected_residual(const Eigen::VectorXd& x);
Eigen::MatrixXd svi_expected_jacobian(const Eigen::VectorXd& x);

/// Expected CES demand by adaptive quadrature over xi in [-1, 1 - clip].
Eigen::Vector3d market_expected_demand(const Eigen::Vector3d& p);

struct OracleResult {
  bool converged = false;
  Eigen::VectorXd x;
  double residual = 0.0;  // |E f(x)|_inf
  int iterations = 0;
  std::size_t start_index = 0;
  std::string message;
};

using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using MatrixFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Newton with backtracking on |F|_2^2.
OracleResult damped_newton(const VectorFn& F, const MatrixFn& J, const Eigen::VectorXd& start, double tol = 1e-12,
                           int max_iters = 100);

/// Solves the analytic-expectation system of "sin" or "svi" starting from
/// `start`, then from each of `extra_starts` until one converges.
OracleResult oracle_solve(const ProblemInstance& instance, const Eigen::VectorXd& start,
                          const std::vector<Eigen::VectorXd>& extra_starts = {});

/// KKT check of a reported market price against E f(p) - B^T z = 0,
/// B p <= b, z >= 0, z_i = 0 off the active set.
struct MarketCheck {
  Eigen::Vector3d expected_demand;
  Eigen::VectorXd multipliers;  // least-squares z on the active rows, clipped at 0
  std::vector<int> active;
  double stationarity = 0.0;    // |E f(p) - B^T z|_inf
  double feasibility = 0.0;     // max(B p - b, 0)
};

MarketCheck market_reference_check(const Eigen::Vector3d& p, double active_tol = 1e-6);

}  // namespace grsaa
