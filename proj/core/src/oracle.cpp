#include "grsaa/oracle.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "grsaa/errors.hpp"

namespace grsaa {

namespace {

template <class F>
double average_over_unit_interval(F&& f, double upper = 1.0) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double integral = gauss_kronrod<double, 61>::integrate(f, -1.0, upper, 15, 1e-14, &error);
  return integral / 2.0;  // density 1/2 on [-1, 1]
}

}  // namespace

Eigen::VectorXd sin_expected_residual(const Eigen::VectorXd& x) {
  const double s = x.sum();
  Eigen::VectorXd r(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) r[i] = x[i] - 5.0 * std::sin(1.0) * std::sin((i + 1) * s);
  return r;
}

Eigen::MatrixXd sin_expected_jacobian(const Eigen::VectorXd& x) {
  const double s = x.sum();
  const Eigen::Index n = x.size();
  Eigen::MatrixXd J(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    J.row(i).setConstant(-5.0 * std::sin(1.0) * (i + 1) * std::cos((i + 1) * s));
    J(i, i) += 1.0;
  }
  return J;
}

double expected_exp_cos(double a) {
  return average_over_unit_interval([a](double xi) { return std::exp(std::cos(a + xi)); });
}

double expected_exp_cos_sin(double a) {
  return average_over_unit_interval([a](double xi) { return std::exp(std::cos(a + xi)) * std::sin(a + xi); });
}

Eigen::VectorXd svi_expected_residual(const Eigen::VectorXd& x) {
  const double s = x.sum();
  Eigen::VectorXd r(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) r[i] = x[i] - expected_exp_cos((i + 1) * s);
  return r;
}

Eigen::MatrixXd svi_expected_jacobian(const Eigen::VectorXd& x) {
  const double s = x.sum();
  const Eigen::Index n = x.size();
  Eigen::MatrixXd J(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    J.row(i).setConstant((i + 1) * expected_exp_cos_sin((i + 1) * s));
    J(i, i) += 1.0;
  }
  return J;
}

Eigen::Vector3d market_expected_demand(const Eigen::Vector3d& p) {
  const MarketSystem market;
  Eigen::Vector3d out;
  const double upper = 1.0 - MarketSystem::kXiClip;
  for (int i = 0; i < 3; ++i) {
    out[i] = average_over_unit_interval(
        [&](double xi) {
          Eigen::VectorXd f(3);
          Eigen::VectorXd xv(1);
          xv[0] = xi;
          market.residual(p, xv, f);
          return f[i];
        },
        upper);
  }
  return out;
}

OracleResult damped_newton(const VectorFn& F, const MatrixFn& J, const Eigen::VectorXd& start, double tol,
                           int max_iters) {
  OracleResult res;
  res.x = start;
  Eigen::VectorXd fx = F(res.x);
  for (int k = 0; k < max_iters; ++k) {
    res.residual = fx.lpNorm<Eigen::Infinity>();
    if (res.residual <= tol) {
      res.converged = true;
      return res;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J(res.x));
    if (!(lu.rcond() > 1e-14)) {
      res.message = "singular Jacobian";
      return res;
    }
    const Eigen::VectorXd step = lu.solve(-fx);
    const double merit = fx.squaredNorm();
    double lambda = 1.0;
    bool accepted = false;
    for (int b = 0; b < 40; ++b) {
      const Eigen::VectorXd trial = res.x + lambda * step;
      const Eigen::VectorXd ft = F(trial);
      if (ft.allFinite() && ft.squaredNorm() <= (1.0 - 1e-4 * lambda) * merit) {
        res.x = trial;
        fx = ft;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    ++res.iterations;
    if (!accepted) {
      res.residual = fx.lpNorm<Eigen::Infinity>();
      res.converged = res.residual <= tol;
      if (!res.converged) res.message = "line search failed";
      return res;
    }
  }
  res.residual = fx.lpNorm<Eigen::Infinity>();
  res.converged = res.residual <= tol;
  if (!res.converged) res.message = "iteration limit";
  return res;
}

OracleResult oracle_solve(const ProblemInstance& instance, const Eigen::VectorXd& start,
                          const std::vector<Eigen::VectorXd>& extra_starts) {
  VectorFn F;
  MatrixFn J;
  if (instance.name == "sin") {
    F = sin_expected_residual;
    J = sin_expected_jacobian;
  } else if (instance.name == "svi") {
    F = svi_expected_residual;
    J = svi_expected_jacobian;
  } else {
    throw ConfigError("no expectation oracle for problem '" + instance.name + "'");
  }
  std::vector<Eigen::VectorXd> starts{start};
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());
  OracleResult last;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    last = damped_newton(F, J, starts[s], 1e-12, 200);
    last.start_index = s;
    if (last.converged) return last;
  }
  if (last.message.empty()) last.message = "no start converged";
  return last;
}

MarketCheck market_reference_check(const Eigen::Vector3d& p, double active_tol) {
  const LinearConstraints c = MarketSystem::constraints();
  MarketCheck mc;
  mc.expected_demand = market_expected_demand(p);
  const Eigen::VectorXd slack = c.b - c.B * p;
  mc.feasibility = std::max(0.0, (-slack).maxCoeff());
  for (int i = 0; i < c.rows(); ++i) {
    if (slack[i] <= active_tol) mc.active.push_back(i);
  }
  mc.multipliers = Eigen::VectorXd::Zero(c.rows());
  if (!mc.active.empty()) {
    Eigen::MatrixXd BA(3, static_cast<Eigen::Index>(mc.active.size()));
    for (std::size_t k = 0; k < mc.active.size(); ++k) BA.col(static_cast<Eigen::Index>(k)) = c.B.row(mc.active[k]).transpose();
    const Eigen::VectorXd z = BA.colPivHouseholderQr().solve(mc.expected_demand);
    for (std::size_t k = 0; k < mc.active.size(); ++k) mc.multipliers[mc.active[k]] = std::max(0.0, z[static_cast<Eigen::Index>(k)]);
  }
  mc.stationarity = (mc.expected_demand - c.B.transpose() * mc.multipliers).lpNorm<Eigen::Infinity>();
  return mc;
}

}  // namespace grsaa
