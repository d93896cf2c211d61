#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "grsaa/homotopy.hpp"

namespace grsaa {

enum class PredictorKind { tangent, secant };

struct TraceConfig {
  /// tangent: Euler step along ker J. secant: step along the chord through the
  /// last two accepted points (tangent for the first step).
  PredictorKind predictor = PredictorKind::tangent;
  double h0 = 1e-2;
  double h_min = 1e-10;
  double h_max = 0.2;
  double corrector_tol = 1e-10;
  int max_corrector_iters = 10;
  /// First Newton correction may be at most this multiple of the step length.
  double max_first_correction = 1.0;
  /// Steps whose consecutive tangents have cosine below this are rejected.
  double min_tangent_cos = 0.5;
  double grow = 1.5;
  double shrink = 0.5;
  std::size_t max_steps = 1'000'000;
  /// Terminal threshold; unset means 0 for plain maps and 1e-8 for smoothed KKT.
  std::optional<double> t_end;
  double polish_tol = 1e-12;
  int max_polish_iters = 30;
  /// Augmented matrices with reciprocal condition below this are treated as singular.
  double min_rcond = 1e-12;
  /// Leaving the problem box expanded by this factor counts as divergence.
  double box_expansion = 2.0;
  /// Keep every accepted point in TraceResult::path.
  bool record_path = true;

  void validate() const;
  double resolved_t_end(HomotopyMap::Kind kind) const;
};

struct PathPoint {
  Eigen::VectorXd u;
  double t = 1.0;
  double step_len = 0.0;
  int corrector_iters = 0;
  double residual = 0.0;
  std::size_t sample_evals = 0;  // cumulative at acceptance
};

enum class TraceStatus { converged, stalled, max_steps, diverged };
std::string to_string(TraceStatus status);

struct TraceCounters {
  std::size_t predictor_steps = 0;  // accepted predictor-corrector steps
  std::size_t rejected_steps = 0;
  std::size_t corrector_iters_total = 0;
  std::size_t polish_iters = 0;
  std::size_t sample_evals = 0;    // single-sample residual evaluations
  std::size_t jacobian_evals = 0;  // single-sample Jacobian evaluations
};

struct TraceResult {
  TraceStatus status = TraceStatus::stalled;
  std::string message;
  Eigen::VectorXd u;
  double t = 1.0;
  /// |H(u, t)|_inf at the terminal point.
  double residual = 0.0;
  /// |f^L(x)|_inf for plain maps; the stacked KKT residual at t for smoothed KKT.
  double target_residual = 0.0;
  std::vector<PathPoint> path;
  TraceCounters counters;

  bool converged() const { return status == TraceStatus::converged; }
};

/// Unit vector spanning ker J for a d x (d+1) Jacobian of full row rank.
/// Oriented so that tau . prev > 0, or, without prev, so that the t-component
/// (the last one) is negative.
Eigen::VectorXd tangent(const Eigen::MatrixXd& J, const Eigen::VectorXd* prev = nullptr);

struct CorrectorResult {
  bool ok = false;
  Eigen::VectorXd w;  // (u, t)
  int iters = 0;
  double residual = 0.0;
  HomotopyEvaluation last;  // evaluation (with Jacobian) at w
  std::string reason;
};

/// Newton on {H(w) = 0, tau . (w - w_pred) = 0} starting at w_pred.
/// t is clamped to [0, 1] after each update. Fails (without throwing) on
/// non-convergence, non-contraction, a singular augmented matrix or an
/// evaluator error.
CorrectorResult correct(const HomotopyMap& map, const Eigen::VectorXd& w_pred, const Eigen::VectorXd& tau,
                        const TraceConfig& cfg, double step_len);

/// Newton in u at fixed t. Used for landing on t_end and for the final polish
/// on f^L(x) = 0.
CorrectorResult solve_fixed_t(const HomotopyMap& map, const Eigen::VectorXd& u_start, double t, double tol,
                              int max_iters, double min_rcond);

/// Predictor-corrector continuation from (start_point, 1) to t_end.
TraceResult trace(const HomotopyMap& map, const TraceConfig& cfg);

/// CSV: step,t,norm_u,residual,step_len,corrector_iters,sample_evals
void write_path_csv(std::ostream& out, const TraceResult& result);

}  // namespace grsaa
