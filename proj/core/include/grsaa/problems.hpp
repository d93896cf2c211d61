#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "grsaa/homotopy.hpp"
#include "grsaa/saa.hpp"
#include "grsaa/sampling.hpp"

namespace grsaa {

/// f_i(x, xi) = x_i - 5 sin(i * sum_j x_j + xi), i = 1..n. Box [-10, 10]^n, x0 = 0.
class SinSystem final : public StochasticSystem {
 public:
  explicit SinSystem(int n);
  std::string name() const override { return "sin"; }
  int dim() const override { return n_; }
  void residual(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                Eigen::Ref<Eigen::VectorXd> out) const override;
  void jacobian(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                Eigen::Ref<Eigen::MatrixXd> out) const override;
  bool has_analytic_jacobian() const override { return true; }
  Box domain() const override { return Box::symmetric(10.0, n_); }
  Eigen::VectorXd reference_point() const override { return Eigen::VectorXd::Zero(n_); }

 private:
  int n_;
};

/// Orientation of the variational inequality over the box for the SVI
/// benchmark. `stationary` feeds -f to the KKT homotopy, so the traced path
/// stays interior and ends at a root of the sample average. `as_printed` feeds
/// f itself; that system also admits the box corners as solutions and the
/// path from x0 = 0 ends on a corner.
enum class SviForm { stationary, as_printed };

/// f_i(x, xi) = x_i - exp(cos(i * sum_j x_j + xi)). Box [-10, 10]^n, x0 = 0.
/// `sign` multiplies the residual (-1 for SviForm::stationary).
class SviSystem final : public StochasticSystem {
 public:
  explicit SviSystem(int n, double sign = 1.0);
  std::string name() const override { return "svi"; }
  int dim() const override { return n_; }
  double sign() const { return sign_; }
  void residual(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                Eigen::Ref<Eigen::VectorXd> out) const override;
  void jacobian(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                Eigen::Ref<Eigen::MatrixXd> out) const override;
  bool has_analytic_jacobian() const override { return true; }
  Box domain() const override { return Box::symmetric(10.0, n_); }
  Eigen::VectorXd reference_point() const override { return Eigen::VectorXd::Zero(n_); }

 private:
  int n_;
  double sign_;
};

/// CES consumer demand for three goods with utility (2x^xi + 3y^xi + z^xi)^(1/xi)
/// at prices p and income p^T w, w = (1, 1, 1):
///
///   f_i(p, xi) = (p^T w) * P_i / g_i,  P_i = p_i^(1/(xi-1)),
///   g_i = sum_j (a_i / a_j)^(1/(xi-1)) P_j^xi,  a = (2, 3, 1).
///
/// Evaluated in log space (log-sum-exp), which stays finite for xi close to 1.
/// xi is clipped to [-1, 1 - kXiClip].
class MarketSystem final : public StochasticSystem {
 public:
  static constexpr double kXiClip = 1e-6;

  std::string name() const override { return "market"; }
  int dim() const override { return 3; }
  void residual(const Eigen::VectorXd& p, Eigen::Ref<const Eigen::VectorXd> xi,
                Eigen::Ref<Eigen::VectorXd> out) const override;
  void jacobian(const Eigen::VectorXd& p, Eigen::Ref<const Eigen::VectorXd> xi,
                Eigen::Ref<Eigen::MatrixXd> out) const override;
  bool has_analytic_jacobian() const override { return true; }
  Box domain() const override { return Box{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Ones(3)}; }
  Eigen::VectorXd reference_point() const override;

  static double clip_xi(double xi);
  /// Number of samples that residual() clips.
  static std::size_t clipped_count(const SampleSet& samples);
  /// Production technology rows (-3/2, 1, 1) and (-1, -77/27, 11/9).
  static Eigen::MatrixXd technology();
  /// B = [A; -I; e^T], b = (0, 0, 0, 0, 0, 1).
  static LinearConstraints constraints();
};

/// Box constraints -10 <= x_i <= 10 as C = [I; -I], b = (10 e; 10 e).
LinearConstraints svi_constraints(int n);

/// A fully specified benchmark: system, sampling distribution, start point
/// and (for constrained problems) the smoothed-KKT data.
struct ProblemInstance {
  std::string name;
  std::shared_ptr<const StochasticSystem> system;
  BoxUniform distribution;
  Eigen::VectorXd x0;
  std::optional<LinearConstraints> constraints;
  int kappa0 = 2;
  std::size_t default_samples = 10'000;

  int dim() const { return system->dim(); }
  bool constrained() const { return constraints.has_value(); }
};

ProblemInstance market_instance(int kappa0 = 2);
ProblemInstance sin_instance(int n);
ProblemInstance svi_instance(int n, int kappa0 = 2, SviForm form = SviForm::stationary);
/// By name: "market", "sin", "svi".
ProblemInstance make_instance(const std::string& name, int n, int kappa0 = 2, SviForm form = SviForm::stationary);

/// Assembles the homotopy for an instance: plain for unconstrained problems,
/// smoothed KKT otherwise.
HomotopyMap make_homotopy(const ProblemInstance& instance, SampleSet samples, Partition partition,
                          NodeSchedule schedule, Eigen::VectorXd alpha = {});

}  // namespace grsaa
