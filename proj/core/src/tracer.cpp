#include "grsaa/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <Eigen/Dense>

#include "grsaa/errors.hpp"

namespace grsaa {

void TraceConfig::validate() const {
  if (!(h_min > 0.0 && h_min <= h0 && h0 <= h_max)) throw ConfigError("tracer requires 0 < h_min <= h0 <= h_max");
  if (!(shrink > 0.0 && shrink < 1.0 && grow > 1.0)) throw ConfigError("tracer requires 0 < shrink < 1 < grow");
  if (!(corrector_tol > 0.0) || !(polish_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (max_corrector_iters < 1 || max_polish_iters < 1) throw ConfigError("iteration limits must be positive");
  if (max_steps == 0) throw ConfigError("max_steps must be positive");
  if (t_end && !(*t_end >= 0.0 && *t_end < 1.0)) throw ConfigError("t_end must lie in [0, 1)");
  if (!(box_expansion >= 1.0)) throw ConfigError("box_expansion must be >= 1");
  if (!(max_first_correction > 0.0)) throw ConfigError("max_first_correction must be positive");
  if (!(min_tangent_cos >= 0.0 && min_tangent_cos < 1.0)) throw ConfigError("min_tangent_cos must lie in [0, 1)");
}

double TraceConfig::resolved_t_end(HomotopyMap::Kind kind) const {
  if (t_end) return *t_end;
  return kind == HomotopyMap::Kind::plain ? 0.0 : 1e-8;
}

std::string to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::converged: return "converged";
    case TraceStatus::stalled: return "stalled";
    case TraceStatus::max_steps: return "max_steps";
    case TraceStatus::diverged: return "diverged";
  }
  return "unknown";
}

Eigen::VectorXd tangent(const Eigen::MatrixXd& J, const Eigen::VectorXd* prev) {
  const Eigen::Index d = J.rows();
  if (J.cols() != d + 1) throw SingularJacobian("tangent: Jacobian must be d x (d+1)");
  if (!J.allFinite()) throw SingularJacobian("tangent: non-finite Jacobian");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J.transpose());
  qr.setThreshold(1e-13);
  if (qr.rank() < d) {
    throw SingularJacobian("singular Jacobian (rank " + std::to_string(qr.rank()) + " < " + std::to_string(d) + ")");
  }
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::VectorXd tau = Q.col(d);
  tau.normalize();
  const double orient = prev ? tau.dot(*prev) : -tau[d];
  if (orient < 0.0) tau = -tau;
  return tau;
}

namespace {

bool finite_rcond_ok(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, double min_rcond) {
  const double rc = lu.rcond();
  return std::isfinite(rc) && rc >= min_rcond;
}

}  // namespace

CorrectorResult correct(const HomotopyMap& map, const Eigen::VectorXd& w_pred, const Eigen::VectorXd& tau,
                        const TraceConfig& cfg, double step_len) {
  const Eigen::Index d = map.unknowns();
  CorrectorResult res;
  res.w = w_pred;
  res.w[d] = std::clamp(res.w[d], 0.0, 1.0);
  double prev_norm = 0.0;
  Eigen::MatrixXd A(d + 1, d + 1);
  Eigen::VectorXd rhs(d + 1);
  for (int k = 0;; ++k) {
    try {
      res.last = map.evaluate(res.w.head(d), res.w[d], true);
    } catch (const std::exception& e) {
      res.reason = e.what();
      return res;
    }
    res.residual = res.last.value.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(res.residual)) {
      res.reason = "non-finite homotopy value";
      return res;
    }
    if (res.residual <= cfg.corrector_tol) {
      res.ok = true;
      return res;
    }
    if (k == cfg.max_corrector_iters) {
      res.reason = "corrector did not converge";
      return res;
    }
    A.topRows(d) = res.last.jacobian;
    A.row(d) = tau.transpose();
    rhs.head(d) = -res.last.value;
    rhs[d] = -tau.dot(res.w - w_pred);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (!finite_rcond_ok(lu, cfg.min_rcond)) {
      res.reason = "singular augmented matrix";
      return res;
    }
    const Eigen::VectorXd delta = lu.solve(rhs);
    const double norm = delta.norm();
    if (!std::isfinite(norm) || (k == 0 && norm > cfg.max_first_correction * step_len) || (k > 0 && norm > prev_norm)) {
      res.reason = "corrector not contracting";
      return res;
    }
    prev_norm = norm;
    res.w += delta;
    res.w[d] = std::clamp(res.w[d], 0.0, 1.0);
    ++res.iters;
  }
}

CorrectorResult solve_fixed_t(const HomotopyMap& map, const Eigen::VectorXd& u_start, double t, double tol,
                              int max_iters, double min_rcond) {
  const Eigen::Index d = map.unknowns();
  CorrectorResult res;
  res.w.resize(d + 1);
  res.w.head(d) = u_start;
  res.w[d] = t;
  double prev_norm = std::numeric_limits<double>::infinity();
  for (int k = 0;; ++k) {
    try {
      res.last = map.evaluate(res.w.head(d), t, true);
    } catch (const std::exception& e) {
      res.reason = e.what();
      return res;
    }
    res.residual = res.last.value.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(res.residual)) {
      res.reason = "non-finite homotopy value";
      return res;
    }
    if (res.residual <= tol) {
      res.ok = true;
      return res;
    }
    if (k == max_iters) {
      res.reason = "fixed-t Newton did not converge";
      return res;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(res.last.jacobian.leftCols(d));
    if (!finite_rcond_ok(lu, min_rcond)) {
      res.reason = "singular Jacobian at fixed t";
      return res;
    }
    const Eigen::VectorXd delta = lu.solve(-res.last.value);
    const double norm = delta.norm();
    // allow round-off level wobble once the iteration is essentially converged
    if (!std::isfinite(norm) || (k > 0 && norm > prev_norm && norm > 1e-12 * (1.0 + res.w.head(d).norm()))) {
      res.reason = "fixed-t Newton not contracting";
      return res;
    }
    prev_norm = norm;
    res.w.head(d) += delta;
    ++res.iters;
  }
}

TraceResult trace(const HomotopyMap& map, const TraceConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = map.unknowns();
  const int n = map.state_dim();
  const double t_end = cfg.resolved_t_end(map.kind());
  const Box outer = map.blended().system().domain().expanded(cfg.box_expansion);
  const BlendedMap& bm = map.blended();
  const std::size_t base_res = bm.residual_evals();
  const std::size_t base_jac = bm.jacobian_evals();

  TraceResult out;
  auto sample_evals = [&] { return bm.residual_evals() - base_res; };
  auto finish = [&](TraceStatus status, std::string message) {
    out.status = status;
    out.message = std::move(message);
    out.counters.sample_evals = bm.residual_evals() - base_res;
    out.counters.jacobian_evals = bm.jacobian_evals() - base_jac;
    return out;
  };

  Eigen::VectorXd w(d + 1);
  w.head(d) = map.start_point();
  w[d] = 1.0;
  HomotopyEvaluation ev = map.evaluate(w.head(d), 1.0, true);
  Eigen::VectorXd tau;
  try {
    tau = tangent(ev.jacobian);
  } catch (const SingularJacobian& e) {
    out.u = w.head(d);
    out.t = 1.0;
    return finish(TraceStatus::stalled, std::string("at start: ") + e.what());
  }

  auto record = [&](const Eigen::VectorXd& wp, double step_len, int iters, double residual) {
    out.u = wp.head(d);
    out.t = wp[d];
    out.residual = residual;
    if (cfg.record_path) {
      PathPoint p;
      p.u = wp.head(d);
      p.t = wp[d];
      p.step_len = step_len;
      p.corrector_iters = iters;
      p.residual = residual;
      p.sample_evals = sample_evals();
      out.path.push_back(std::move(p));
    }
  };
  record(w, 0.0, 0, ev.value.lpNorm<Eigen::Infinity>());

  const bool plain = map.kind() == HomotopyMap::Kind::plain;
  const double land_tol = plain ? cfg.polish_tol : cfg.corrector_tol;
  const int land_iters = plain ? cfg.max_polish_iters : cfg.max_corrector_iters;

  // Land on t_end from u_guess. Plain maps polish on h(x, 0) = f^L(x).
  auto land = [&](const Eigen::VectorXd& u_guess, double radius) -> bool {
    const double t_land = plain ? 0.0 : t_end;
    CorrectorResult pol = solve_fixed_t(map, u_guess, t_land, land_tol, land_iters, cfg.min_rcond);
    out.counters.polish_iters += static_cast<std::size_t>(pol.iters);
    if (!pol.ok) return false;
    if (!outer.contains(pol.w.head(n))) return false;
    if ((pol.w.head(d) - u_guess).norm() > radius) return false;
    Eigen::VectorXd wp = pol.w;
    record(wp, 0.0, pol.iters, pol.residual);
    return true;
  };

  double h = cfg.h0;
  std::size_t attempts = 0;
  Eigen::VectorXd w_prev_accepted;
  bool have_prev = false;
  while (true) {
    if (attempts++ >= cfg.max_steps) {
      return finish(TraceStatus::max_steps, "step budget exhausted at t=" + std::to_string(w[d]));
    }
    if (h < cfg.h_min) {
      return finish(TraceStatus::stalled, "step length below h_min at t=" + std::to_string(w[d]));
    }
    Eigen::VectorXd dir = tau;
    if (cfg.predictor == PredictorKind::secant && have_prev) {
      dir = w - w_prev_accepted;
      const double len = dir.norm();
      if (len > 0.0) dir /= len;
      // a chord that disagrees with the oriented tangent would walk back along the path
      if (!(len > 0.0) || dir.dot(tau) <= 0.0) dir = tau;
    }
    const Eigen::VectorXd w_pred = w + h * dir;

    if (w_pred[d] < t_end && dir[d] < 0.0) {
      const double s_end = (t_end - w[d]) / dir[d];
      const Eigen::VectorXd u_guess = w.head(d) + s_end * dir.head(d);
      if (land(u_guess, h)) break;
      h *= cfg.shrink;
      ++out.counters.rejected_steps;
      continue;
    }

    CorrectorResult cr = correct(map, w_pred, dir, cfg, h);
    out.counters.corrector_iters_total += static_cast<std::size_t>(cr.iters);
    Eigen::VectorXd tau_new;
    if (cr.ok) {
      try {
        tau_new = tangent(cr.last.jacobian, &tau);
      } catch (const SingularJacobian& e) {
        cr.ok = false;
        cr.reason = e.what();
      }
    }
    // the corrected point must advance along the path, not fall back behind w;
    // a sharp turn between consecutive tangents means the step skipped a bend
    // and the orientation of tau_new cannot be trusted
    if (cr.ok && tau_new.dot(tau) < cfg.min_tangent_cos) {
      cr.ok = false;
      cr.reason = "tangent turned too sharply";
    }
    if (cr.ok && (cr.w - w).dot(tau) <= 0.0) {
      cr.ok = false;
      cr.reason = "corrector moved backwards along the path";
    }
    if (!cr.ok) {
      h *= cfg.shrink;
      ++out.counters.rejected_steps;
      continue;
    }
    if (!outer.contains(cr.w.head(n))) {
      record(cr.w, h, cr.iters, cr.residual);
      return finish(TraceStatus::diverged, "path left the expanded domain box at t=" + std::to_string(cr.w[d]));
    }

    const Eigen::VectorXd w_prev = w;
    w_prev_accepted = w;
    have_prev = true;
    w = cr.w;
    tau = tau_new;
    ++out.counters.predictor_steps;
    record(w, h, cr.iters, cr.residual);
    if (cr.iters <= 3) h = std::min(cfg.grow * h, cfg.h_max);

    if (w[d] <= t_end) {
      // first crossing: start the landing from the linear interpolant at t_end
      const double span = w_prev[d] - w[d];
      const double frac = span > 0.0 ? (w_prev[d] - t_end) / span : 1.0;
      const Eigen::VectorXd u_guess = w_prev.head(d) + frac * (w.head(d) - w_prev.head(d));
      if (land(u_guess, h) || land(w.head(d), h)) break;
      return finish(TraceStatus::stalled, "terminal landing failed after crossing t_end");
    }
  }

  out.counters.sample_evals = sample_evals();
  out.counters.jacobian_evals = bm.jacobian_evals() - base_jac;
  out.status = TraceStatus::converged;
  if (plain) {
    out.target_residual = out.residual;
  } else {
    out.target_residual = map.target_residual(out.u, out.t).lpNorm<Eigen::Infinity>();
  }
  return out;
}

void write_path_csv(std::ostream& out, const TraceResult& result) {
  out << "step,t,norm_u,residual,step_len,corrector_iters,sample_evals\n";
  char buf[256];
  for (std::size_t k = 0; k < result.path.size(); ++k) {
    const auto& p = result.path[k];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%d,%zu\n", k, p.t, p.u.norm(), p.residual,
                  p.step_len, p.corrector_iters, p.sample_evals);
    out << buf;
  }
}

}  // namespace grsaa
