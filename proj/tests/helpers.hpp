#pragma once

#include <cmath>
#include <functional>
#include <memory>

#include <Eigen/Core>

#include "grsaa/saa.hpp"

namespace grsaa::testing {

// f(x, xi) = c * x + xi * e: with c = 0 the residual is the sample itself.
class AffineSystem final : public StochasticSystem {
 public:
  AffineSystem(int n, double c, double half_width = 1.0) : n_(n), c_(c), hw_(half_width) {}
  std::string name() const override { return "affine"; }
  int dim() const override { return n_; }
  void residual(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                Eigen::Ref<Eigen::VectorXd> out) const override {
    out = c_ * x + Eigen::VectorXd::Constant(n_, xi[0]);
  }
  Box domain() const override { return Box::symmetric(hw_, n_); }
  Eigen::VectorXd reference_point() const override { return Eigen::VectorXd::Zero(n_); }

 private:
  int n_;
  double c_;
  double hw_;
};

// f(x, xi) = x - a, deterministic; with x0 the homotopy path is (1-t) a + t x0.
class ShiftSystem final : public StochasticSystem {
 public:
  explicit ShiftSystem(Eigen::VectorXd a) : a_(std::move(a)) {}
  std::string name() const override { return "shift"; }
  int dim() const override { return static_cast<int>(a_.size()); }
  void residual(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd>,
                Eigen::Ref<Eigen::VectorXd> out) const override {
    out = x - a_;
  }
  void jacobian(const Eigen::VectorXd&, Eigen::Ref<const Eigen::VectorXd>,
                Eigen::Ref<Eigen::MatrixXd> out) const override {
    out.setIdentity();
  }
  bool has_analytic_jacobian() const override { return true; }
  Box domain() const override { return Box::symmetric(10.0, dim()); }
  Eigen::VectorXd reference_point() const override { return Eigen::VectorXd::Zero(dim()); }

 private:
  Eigen::VectorXd a_;
};

inline Eigen::MatrixXd central_difference(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                          const Eigen::VectorXd& x, double h = 1e-6) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd J(f0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return J;
}

// max |A - B| / (1 + max |B|), the relative measure used for derivative checks
inline double rel_diff(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  return (A - B).cwiseAbs().maxCoeff() / (1.0 + B.cwiseAbs().maxCoeff());
}

}  // namespace grsaa::testing
