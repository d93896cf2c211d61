#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include <Eigen/Core>

#include "grsaa/sampling.hpp"
#include "grsaa/schedule.hpp"

namespace grsaa {

/// Axis-aligned box [lo, hi] in state space.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static Box symmetric(double half_width, int dim);

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& x) const;
  bool strictly_contains(const Eigen::VectorXd& x) const;
  /// Same centre, half-widths scaled by factor.
  Box expanded(double factor) const;
};

/// A stochastic system E_xi[f(x, xi)] = 0 with x in R^n and xi in R^m.
///
/// Implementations must be pure: equal inputs give equal outputs. The
/// Jacobian defaults to central finite differences; problems that override
/// it report has_analytic_jacobian() == true.
class StochasticSystem {
 public:
  virtual ~StochasticSystem() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  virtual int sample_dim() const { return 1; }

  virtual void residual(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                        Eigen::Ref<Eigen::VectorXd> out) const = 0;
  virtual void jacobian(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                        Eigen::Ref<Eigen::MatrixXd> out) const;
  virtual bool has_analytic_jacobian() const { return false; }

  /// Compact set of the coercivity assumption.
  virtual Box domain() const = 0;
  /// Start point x0, strictly inside domain().
  virtual Eigen::VectorXd reference_point() const = 0;
};

struct CoercivityReport {
  double min_inner_product = 0.0;
  Eigen::VectorXd argmin_x;
  std::size_t argmin_sample = 0;
  std::size_t points_checked = 0;
  std::size_t samples_checked = 0;
  bool passed() const { return min_inner_product > 0.0; }
};

/// Value, x-Jacobian and t-derivative of d(x, t) from one pass over samples.
struct BlendEvaluation {
  Eigen::VectorXd value;
  Eigen::MatrixXd jac_x;    // empty unless requested
  Eigen::VectorXd deriv_t;  // empty unless requested
  std::size_t segment = 0;
};

/// The gradually reinforced sample-average map
///
///   d(x, t) = (1 - theta_l(t)) f^{l-1}(x) + theta_l(t) f^l(x),  t in [t_l, t_{l-1}],
///
/// with f^l the mean of f over the first q_l samples and f^0 = 0.
///
/// Both averages of a segment come from a single pass over the first q_l
/// samples: f^{l-1} is read off the running sum at index q_{l-1}. A call in
/// segment l therefore costs q_l residual evaluations (plus q_l Jacobian
/// evaluations when derivatives are requested). Sums are accumulated in
/// sample index order so results are bit-reproducible.
class BlendedMap {
 public:
  BlendedMap(std::shared_ptr<const StochasticSystem> system, SampleSet samples, Partition partition,
             NodeSchedule schedule);

  const StochasticSystem& system() const { return *system_; }
  std::shared_ptr<const StochasticSystem> system_ptr() const { return system_; }
  const SampleSet& samples() const { return samples_; }
  const Partition& partition() const { return partition_; }
  const NodeSchedule& schedule() const { return schedule_; }
  int dim() const { return system_->dim(); }

  /// f^l(x), l in 0..L. l = 0 returns zero without touching samples.
  Eigen::VectorXd sample_average(std::size_t l, const Eigen::VectorXd& x) const;
  /// Mean of the per-sample Jacobians over the first q_l samples.
  Eigen::MatrixXd sample_average_jacobian(std::size_t l, const Eigen::VectorXd& x) const;

  Eigen::VectorXd blend(const Eigen::VectorXd& x, double t) const;
  Eigen::MatrixXd blend_jac_x(const Eigen::VectorXd& x, double t) const;
  Eigen::VectorXd blend_deriv_t(const Eigen::VectorXd& x, double t) const;
  /// All of the above in one pass; derivatives only when with_derivatives.
  BlendEvaluation evaluate(const Eigen::VectorXd& x, double t, bool with_derivatives) const;

  /// Boundary-grid diagnostic of (x - x0)^T f(x, xi_i) > 0. Each face of the
  /// domain box is covered by grid_density points per free coordinate; at most
  /// max_samples samples (evenly strided) are used. Not counted in the
  /// evaluation counters.
  CoercivityReport check_coercivity(std::size_t grid_density, std::size_t max_samples = 200) const;

  /// Single-sample residual calls made so far.
  std::size_t residual_evals() const { return residual_evals_; }
  /// Single-sample Jacobian calls made so far.
  std::size_t jacobian_evals() const { return jacobian_evals_; }
  void reset_counters() const {
    residual_evals_ = 0;
    jacobian_evals_ = 0;
  }

 private:
  void accumulate(std::size_t l, const Eigen::VectorXd& x, bool with_jacobian, Eigen::VectorXd& prev_sum,
                  Eigen::VectorXd& sum, Eigen::MatrixXd* prev_jac_sum, Eigen::MatrixXd* jac_sum) const;

  std::shared_ptr<const StochasticSystem> system_;
  SampleSet samples_;
  Partition partition_;
  NodeSchedule schedule_;
  mutable std::size_t residual_evals_ = 0;
  mutable std::size_t jacobian_evals_ = 0;
};

/// Central-difference Jacobian of x -> f(x, xi).
Eigen::MatrixXd finite_difference_jacobian(const StochasticSystem& system, const Eigen::VectorXd& x,
                                           Eigen::Ref<const Eigen::VectorXd> xi, double step = 1e-6);

}  // namespace grsaa
