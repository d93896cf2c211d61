// The ground-truth side is checked before anything is compared against it.
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "grsaa/oracle.hpp"

using namespace grsaa;

namespace {

// composite Simpson over [-1, 1] with the 1/2 density, independent of the
// adaptive quadrature under test
template <class F>
double simpson_mean(F&& f, double upper = 1.0, int panels = 20000) {
  const double a = -1.0, h = (upper - a) / panels;
  double s = f(a) + f(upper);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0 / 2.0;
}

}  // namespace

TEST_CASE("sin expectation: closed form matches quadrature of the sample residual") {
  Eigen::VectorXd x(3);
  x << 0.3, -1.2, 2.0;
  const Eigen::VectorXd closed = sin_expected_residual(x);
  const double s = x.sum();
  for (int i = 0; i < 3; ++i) {
    const double q = simpson_mean([&](double xi) { return x[i] - 5.0 * std::sin((i + 1) * s + xi); });
    CHECK(closed[i] == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("exp-cos expectations agree with Simpson to 1e-12") {
  for (double a : {0.0, 0.7, -2.5, 3.0, 12.0}) {
    CHECK(expected_exp_cos(a) ==
          doctest::Approx(simpson_mean([a](double xi) { return std::exp(std::cos(a + xi)); })).epsilon(1e-12));
    CHECK(expected_exp_cos_sin(a) ==
          doctest::Approx(simpson_mean([a](double xi) { return std::exp(std::cos(a + xi)) * std::sin(a + xi); }))
              .epsilon(1e-11));
  }
}

TEST_CASE("expected exp-cos at 0 lies in [1/e, e]") {
  const double v = expected_exp_cos(0.0);
  CHECK(v > std::exp(-1.0));
  CHECK(v < std::exp(1.0));
}

TEST_CASE("oracle Jacobians match finite differences") {
  Eigen::VectorXd x(2);
  x << 0.4, -0.9;
  auto fd = [](auto F, const Eigen::VectorXd& x0) {
    Eigen::MatrixXd J(x0.size(), x0.size());
    for (Eigen::Index j = 0; j < x0.size(); ++j) {
      Eigen::VectorXd p = x0, m = x0;
      p[j] += 1e-6;
      m[j] -= 1e-6;
      J.col(j) = (F(p) - F(m)) / 2e-6;
    }
    return J;
  };
  CHECK((sin_expected_jacobian(x) - fd(sin_expected_residual, x)).cwiseAbs().maxCoeff() < 1e-7);
  CHECK((svi_expected_jacobian(x) - fd(svi_expected_residual, x)).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("damped newton solves a scalar cubic") {
  auto F = [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x[0] * x[0] * x[0] - 2.0); };
  auto J = [](const Eigen::VectorXd& x) { return Eigen::MatrixXd::Constant(1, 1, 3.0 * x[0] * x[0]); };
  const OracleResult r = damped_newton(F, J, Eigen::VectorXd::Constant(1, 5.0));
  REQUIRE(r.converged);
  CHECK(r.x[0] == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
}

TEST_CASE("oracle_solve: sin and svi roots have tiny expected residual") {
  const OracleResult s = oracle_solve(sin_instance(3), Eigen::Vector3d(4.2, 1.1, -3.9));
  REQUIRE(s.converged);
  CHECK(sin_expected_residual(s.x).lpNorm<Eigen::Infinity>() <= 1e-12);

  const OracleResult v = oracle_solve(svi_instance(1), Eigen::VectorXd::Constant(1, 1.3));
  REQUIRE(v.converged);
  CHECK(std::abs(v.x[0] - expected_exp_cos(v.x[0])) <= 1e-12);
  // |x| <= e, so the box [-10, 10] is inactive
  CHECK(std::abs(v.x[0]) < std::numbers::e);
}

TEST_CASE("oracle_solve falls back to extra starts and rejects market") {
  const OracleResult s = oracle_solve(sin_instance(1), Eigen::VectorXd::Constant(1, std::nan("")),
                                      {Eigen::VectorXd::Constant(1, 0.5)});
  CHECK(s.converged);
  CHECK(s.start_index == 1);
  CHECK_THROWS(oracle_solve(market_instance(), Eigen::Vector3d(0.4, 0.45, 0.15)));
}

TEST_CASE("market expected demand by quadrature matches Simpson") {
  const Eigen::Vector3d p(0.4, 0.45, 0.15);
  const Eigen::Vector3d q = market_expected_demand(p);
  const MarketSystem m;
  for (int i = 0; i < 3; ++i) {
    const double s = simpson_mean(
        [&](double xi) {
          Eigen::VectorXd f(3), xv(1);
          xv[0] = xi;
          m.residual(p, xv, f);
          return f[i];
        },
        1.0 - MarketSystem::kXiClip);
    CHECK(q[i] == doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("market reference check at the reported price") {
  const MarketCheck mc = market_reference_check(Eigen::Vector3d(0.40, 0.45, 0.15));
  CHECK(mc.feasibility <= 1e-12);
  // row 0 (A p)_1 = 0 and row 5 e^T p = 1 are active
  CHECK(std::find(mc.active.begin(), mc.active.end(), 0) != mc.active.end());
  CHECK(std::find(mc.active.begin(), mc.active.end(), 5) != mc.active.end());
  CHECK(mc.stationarity < 1e-3);
}
