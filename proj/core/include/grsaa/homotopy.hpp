#pragma once

#include <optional>

#include <Eigen/Core>

#include "grsaa/saa.hpp"

namespace grsaa {

/// Componentwise smoothed complementarity pair
///
///   neg(y, t) = ((sqrt(y^2 + 4t) - y) / 2)^kappa0
///   pos(y, t) = ((sqrt(y^2 + 4t) + y) / 2)^kappa0
///
/// with neg * pos = t^kappa0 and neg, pos >= 0. At t = 0 the pair reduces
/// to max(-y, 0)^kappa0 and max(y, 0)^kappa0.
struct TransformValues {
  Eigen::VectorXd neg, pos;
  Eigen::VectorXd dneg_dy, dpos_dy;
  Eigen::VectorXd dneg_dt, dpos_dt;
};

TransformValues smoothed_transform(const Eigen::VectorXd& y, double t, int kappa0);

/// Solves pos(y, t) = s for y (s > 0, t > 0). Closed form: with b = s^(1/kappa0),
/// y = b - t / b.
double invert_pos(double s, double t, int kappa0);

/// Affine constraints B x <= b.
struct LinearConstraints {
  Eigen::MatrixXd B;
  Eigen::VectorXd b;
  int rows() const { return static_cast<int>(B.rows()); }
};

/// Value and full Jacobian (unknowns, then t in the last column).
struct HomotopyEvaluation {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;  // d x (d + 1), empty unless requested
};

/// The traced map H(u, t).
///
/// plain:        h(x, t) = (1 - t) d(x, t) + t (x - x0) - t (1 - t) alpha
/// smoothed_kkt: u = (x, y)
///               (1 - t)(d(x, t) - B^T neg(y, t)) - t (x - x0) - t (1 - t) alpha
///               B x + pos(y, t) - b
///
/// The KKT form encodes multipliers neg(y) and slacks pos(y) of B x <= b;
/// their product is t^kappa0, so exact complementarity is recovered at t = 0.
class HomotopyMap {
 public:
  enum class Kind { plain, smoothed_kkt };

  static HomotopyMap plain(BlendedMap blended, Eigen::VectorXd x0, Eigen::VectorXd alpha = {});
  static HomotopyMap smoothed_kkt(BlendedMap blended, Eigen::VectorXd x0, LinearConstraints constraints,
                                  int kappa0 = 2, Eigen::VectorXd alpha = {});

  Kind kind() const { return kind_; }
  int state_dim() const { return blended_.dim(); }
  int constraint_dim() const { return constraints_ ? constraints_->rows() : 0; }
  int unknowns() const { return state_dim() + constraint_dim(); }
  int kappa0() const { return kappa0_; }
  const Eigen::VectorXd& x0() const { return x0_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const std::optional<LinearConstraints>& constraints() const { return constraints_; }
  const BlendedMap& blended() const { return blended_; }

  Eigen::VectorXd eval(const Eigen::VectorXd& u, double t) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u, double t) const;
  HomotopyEvaluation evaluate(const Eigen::VectorXd& u, double t, bool with_jacobian) const;

  /// The unique zero at t = 1: x0 (plain) or (x0, y1) with B x0 + pos(y1, 1) = b.
  Eigen::VectorXd start_point() const;

  /// Residual of the target system: f^L(x) for plain; for the KKT form the
  /// stacked f^L(x) - B^T neg(y, t), B x + pos(y, t) - b at the given t.
  Eigen::VectorXd target_residual(const Eigen::VectorXd& u, double t = 0.0) const;

  Eigen::VectorXd state_part(const Eigen::VectorXd& u) const { return u.head(state_dim()); }

 private:
  HomotopyMap(Kind kind, BlendedMap blended, Eigen::VectorXd x0, Eigen::VectorXd alpha,
              std::optional<LinearConstraints> constraints, int kappa0);

  Kind kind_;
  BlendedMap blended_;
  Eigen::VectorXd x0_;
  Eigen::VectorXd alpha_;
  std::optional<LinearConstraints> constraints_;
  int kappa0_ = 2;
};

}  // namespace grsaa
