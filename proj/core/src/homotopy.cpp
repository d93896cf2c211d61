#include "grsaa/homotopy.hpp"

#include <cmath>

#include "grsaa/errors.hpp"

namespace grsaa {

namespace {

double ipow(double base, int exponent) {
  double r = 1.0;
  for (int k = 0; k < exponent; ++k) r *= base;
  return r;
}

}  // namespace

TransformValues smoothed_transform(const Eigen::VectorXd& y, double t, int kappa0) {
  if (kappa0 < 2) throw ConfigError("kappa0 must be at least 2");
  if (!(t >= 0.0)) throw ConfigError("transform requires t >= 0");
  const Eigen::Index m = y.size();
  TransformValues tv;
  tv.neg.resize(m);
  tv.pos.resize(m);
  tv.dneg_dy.resize(m);
  tv.dpos_dy.resize(m);
  tv.dneg_dt.resize(m);
  tv.dpos_dt.resize(m);
  const double k = kappa0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double yi = y[i];
    const double r = std::sqrt(yi * yi + 4.0 * t);
    if (r == 0.0) {
      // y = 0, t = 0: both branches of max(+-y, 0)^k are flat here
      tv.neg[i] = tv.pos[i] = 0.0;
      tv.dneg_dy[i] = tv.dpos_dy[i] = 0.0;
      tv.dneg_dt[i] = tv.dpos_dt[i] = kappa0 == 2 ? 1.0 : 0.0;
      continue;
    }
    // a = (r - y)/2, b = (r + y)/2, a * b = t; take the cancellation-free root first
    double a, b;
    if (yi >= 0.0) {
      b = 0.5 * (r + yi);
      a = t / b;
    } else {
      a = 0.5 * (r - yi);
      b = t / a;
    }
    const double a_km1 = ipow(a, kappa0 - 1);
    const double b_km1 = ipow(b, kappa0 - 1);
    tv.neg[i] = a_km1 * a;
    tv.pos[i] = b_km1 * b;
    tv.dneg_dy[i] = -k * tv.neg[i] / r;
    tv.dpos_dy[i] = k * tv.pos[i] / r;
    tv.dneg_dt[i] = k * a_km1 / r;
    tv.dpos_dt[i] = k * b_km1 / r;
  }
  return tv;
}

double invert_pos(double s, double t, int kappa0) {
  if (!(s > 0.0) || !(t > 0.0)) throw ConfigError("invert_pos requires s > 0 and t > 0");
  const double b = std::pow(s, 1.0 / kappa0);
  return b - t / b;
}

HomotopyMap::HomotopyMap(Kind kind, BlendedMap blended, Eigen::VectorXd x0, Eigen::VectorXd alpha,
                         std::optional<LinearConstraints> constraints, int kappa0)
    : kind_(kind),
      blended_(std::move(blended)),
      x0_(std::move(x0)),
      alpha_(std::move(alpha)),
      constraints_(std::move(constraints)),
      kappa0_(kappa0) {
  const int n = blended_.dim();
  if (x0_.size() != n) throw ConfigError("x0 has wrong dimension");
  if (alpha_.size() == 0) alpha_ = Eigen::VectorXd::Zero(n);
  if (alpha_.size() != n) throw ConfigError("alpha has wrong dimension");
  if (kind_ == Kind::smoothed_kkt) {
    if (kappa0_ < 2) throw ConfigError("kappa0 must be at least 2");
    if (!constraints_ || constraints_->B.cols() != n || constraints_->B.rows() != constraints_->b.size()) {
      throw ConfigError("constraint matrix dimensions do not match the state");
    }
  }
}

HomotopyMap HomotopyMap::plain(BlendedMap blended, Eigen::VectorXd x0, Eigen::VectorXd alpha) {
  return HomotopyMap(Kind::plain, std::move(blended), std::move(x0), std::move(alpha), std::nullopt, 2);
}

HomotopyMap HomotopyMap::smoothed_kkt(BlendedMap blended, Eigen::VectorXd x0, LinearConstraints constraints,
                                      int kappa0, Eigen::VectorXd alpha) {
  return HomotopyMap(Kind::smoothed_kkt, std::move(blended), std::move(x0), std::move(alpha),
                     std::move(constraints), kappa0);
}

Eigen::VectorXd HomotopyMap::start_point() const {
  if (kind_ == Kind::plain) return x0_;
  const auto& c = *constraints_;
  const Eigen::VectorXd slack = c.b - c.B * x0_;
  Eigen::VectorXd u(unknowns());
  u.head(state_dim()) = x0_;
  for (int i = 0; i < c.rows(); ++i) {
    if (!(slack[i] > 0.0)) {
      throw ConfigError("start point violates constraint row " + std::to_string(i) + " (slack " +
                        std::to_string(slack[i]) + ")");
    }
    u[state_dim() + i] = invert_pos(slack[i], 1.0, kappa0_);
  }
  return u;
}

Eigen::VectorXd HomotopyMap::eval(const Eigen::VectorXd& u, double t) const {
  return evaluate(u, t, false).value;
}

Eigen::MatrixXd HomotopyMap::jacobian(const Eigen::VectorXd& u, double t) const {
  return evaluate(u, t, true).jacobian;
}

HomotopyEvaluation HomotopyMap::evaluate(const Eigen::VectorXd& u, double t, bool with_jacobian) const {
  if (u.size() != unknowns()) throw ConfigError("unknown vector has wrong dimension");
  if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("homotopy parameter outside [0,1]");
  const int n = state_dim();
  const int d = unknowns();
  const Eigen::VectorXd x = u.head(n);
  const Eigen::VectorXd dx = x - x0_;
  const double s = 1.0 - t;
  const double pert = t * s;

  HomotopyEvaluation out;
  out.value.resize(d);
  if (with_jacobian) out.jacobian.setZero(d, d + 1);

  // d(x, 1) = f^0 = 0 and its t-derivative vanishes, so t = 1 needs no samples
  BlendEvaluation be;
  if (t == 1.0) {
    be.value = Eigen::VectorXd::Zero(n);
    be.jac_x = Eigen::MatrixXd::Zero(n, n);
    be.deriv_t = Eigen::VectorXd::Zero(n);
  } else {
    be = blended_.evaluate(x, t, with_jacobian);
  }

  if (kind_ == Kind::plain) {
    if (t == 1.0) {
      out.value = dx;
    } else if (t == 0.0) {
      out.value = be.value;
    } else {
      out.value = s * be.value + t * dx - pert * alpha_;
    }
    if (with_jacobian) {
      auto jx = out.jacobian.leftCols(n);
      if (t == 1.0) {
        jx.setIdentity();
      } else {
        jx = s * be.jac_x;
        jx.diagonal().array() += t;
      }
      out.jacobian.col(n) = -be.value + s * be.deriv_t + dx - (1.0 - 2.0 * t) * alpha_;
    }
    return out;
  }

  const auto& c = *constraints_;
  const int m = c.rows();
  const Eigen::VectorXd y = u.tail(m);
  const TransformValues tv = smoothed_transform(y, t, kappa0_);
  const Eigen::VectorXd stationarity = be.value - c.B.transpose() * tv.neg;

  if (t == 1.0) {
    out.value.head(n) = -dx;
  } else {
    out.value.head(n) = s * stationarity - t * dx - pert * alpha_;
  }
  out.value.tail(m) = c.B * x + tv.pos - c.b;

  if (with_jacobian) {
    auto& J = out.jacobian;
    if (t == 1.0) {
      J.topLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    } else {
      J.topLeftCorner(n, n) = s * be.jac_x;
      J.topLeftCorner(n, n).diagonal().array() -= t;
      J.block(0, n, n, m) = -s * (c.B.transpose() * tv.dneg_dy.asDiagonal());
    }
    J.col(d).head(n) = -stationarity + s * (be.deriv_t - c.B.transpose() * tv.dneg_dt) - dx -
                       (1.0 - 2.0 * t) * alpha_;
    J.block(n, 0, m, n) = c.B;
    J.block(n, n, m, m) = tv.dpos_dy.asDiagonal();
    J.col(d).tail(m) = tv.dpos_dt;
  }
  return out;
}

Eigen::VectorXd HomotopyMap::target_residual(const Eigen::VectorXd& u, double t) const {
  const int n = state_dim();
  const Eigen::VectorXd x = u.head(n);
  const Eigen::VectorXd fL = blended_.sample_average(blended_.partition().groups(), x);
  if (kind_ == Kind::plain) return fL;
  const auto& c = *constraints_;
  const int m = c.rows();
  const TransformValues tv = smoothed_transform(u.tail(m), t, kappa0_);
  Eigen::VectorXd r(n + m);
  r.head(n) = fL - c.B.transpose() * tv.neg;
  r.tail(m) = c.B * x + tv.pos - c.b;
  return r;
}

}  // namespace grsaa
