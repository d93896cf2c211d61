#include "grsaa/saa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grsaa/errors.hpp"

namespace grsaa {

Box Box::symmetric(double half_width, int dim) {
  return Box{Eigen::VectorXd::Constant(dim, -half_width), Eigen::VectorXd::Constant(dim, half_width)};
}

bool Box::contains(const Eigen::VectorXd& x) const {
  return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

bool Box::strictly_contains(const Eigen::VectorXd& x) const {
  return (x.array() > lo.array()).all() && (x.array() < hi.array()).all();
}

Box Box::expanded(double factor) const {
  const Eigen::VectorXd centre = 0.5 * (lo + hi);
  const Eigen::VectorXd half = 0.5 * (hi - lo) * factor;
  return Box{centre - half, centre + half};
}

void StochasticSystem::jacobian(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                                Eigen::Ref<Eigen::MatrixXd> out) const {
  out = finite_difference_jacobian(*this, x, xi);
}

Eigen::MatrixXd finite_difference_jacobian(const StochasticSystem& system, const Eigen::VectorXd& x,
                                           Eigen::Ref<const Eigen::VectorXd> xi, double step) {
  const int n = system.dim();
  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd plus(n), minus(n);
  Eigen::VectorXd xp = x;
  for (int j = 0; j < n; ++j) {
    const double h = step * std::max(1.0, std::abs(x[j]));
    xp[j] = x[j] + h;
    system.residual(xp, xi, plus);
    xp[j] = x[j] - h;
    system.residual(xp, xi, minus);
    xp[j] = x[j];
    jac.col(j) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

BlendedMap::BlendedMap(std::shared_ptr<const StochasticSystem> system, SampleSet samples, Partition partition,
                       NodeSchedule schedule)
    : system_(std::move(system)),
      samples_(std::move(samples)),
      partition_(std::move(partition)),
      schedule_(std::move(schedule)) {
  if (!system_) throw ConfigError("blended map needs a system");
  if (partition_.groups() != schedule_.segments()) {
    throw ConfigError("partition has " + std::to_string(partition_.groups()) + " groups but schedule has " +
                      std::to_string(schedule_.segments()) + " segments");
  }
  if (partition_.total() != samples_.size()) {
    throw ConfigError("partition terminal count " + std::to_string(partition_.total()) +
                      " does not equal sample size " + std::to_string(samples_.size()));
  }
  if (samples_.dim() != system_->sample_dim()) {
    throw ConfigError("sample dimension does not match the system");
  }
}

void BlendedMap::accumulate(std::size_t l, const Eigen::VectorXd& x, bool with_jacobian, Eigen::VectorXd& prev_sum,
                            Eigen::VectorXd& sum, Eigen::MatrixXd* prev_jac_sum, Eigen::MatrixXd* jac_sum) const {
  const int n = dim();
  const std::size_t q_prev = partition_.count(l - 1);
  const std::size_t q = partition_.count(l);
  sum.setZero(n);
  prev_sum.setZero(n);
  Eigen::VectorXd fi(n);
  Eigen::MatrixXd ji;
  if (with_jacobian) {
    jac_sum->setZero(n, n);
    prev_jac_sum->setZero(n, n);
    ji.resize(n, n);
  }
  for (std::size_t i = 0; i < q; ++i) {
    if (i == q_prev) {
      prev_sum = sum;
      if (with_jacobian) *prev_jac_sum = *jac_sum;
    }
    const auto xi = samples_.sample(i);
    system_->residual(x, xi, fi);
    if (!fi.allFinite()) {
      residual_evals_ += i + 1;
      throw NonFiniteResidual(i, "non-finite residual at sample " + std::to_string(i));
    }
    sum += fi;
    if (with_jacobian) {
      system_->jacobian(x, xi, ji);
      if (!ji.allFinite()) {
        residual_evals_ += i + 1;
        jacobian_evals_ += i + 1;
        throw NonFiniteResidual(i, "non-finite jacobian at sample " + std::to_string(i));
      }
      *jac_sum += ji;
    }
  }
  if (q_prev == q) {  // unreachable for a valid partition; keeps prev_sum defined
    prev_sum = sum;
  }
  residual_evals_ += q;
  if (with_jacobian) jacobian_evals_ += q;
}

Eigen::VectorXd BlendedMap::sample_average(std::size_t l, const Eigen::VectorXd& x) const {
  if (l > partition_.groups()) throw ConfigError("group index out of range");
  if (l == 0) return Eigen::VectorXd::Zero(dim());
  Eigen::VectorXd prev_sum, sum;
  // the group-l average is the "current" sum of a pass over segment l
  accumulate(l, x, false, prev_sum, sum, nullptr, nullptr);
  return sum / static_cast<double>(partition_.count(l));
}

Eigen::MatrixXd BlendedMap::sample_average_jacobian(std::size_t l, const Eigen::VectorXd& x) const {
  if (l > partition_.groups()) throw ConfigError("group index out of range");
  if (l == 0) return Eigen::MatrixXd::Zero(dim(), dim());
  Eigen::VectorXd prev_sum, sum;
  Eigen::MatrixXd prev_jac, jac;
  accumulate(l, x, true, prev_sum, sum, &prev_jac, &jac);
  return jac / static_cast<double>(partition_.count(l));
}

BlendEvaluation BlendedMap::evaluate(const Eigen::VectorXd& x, double t, bool with_derivatives) const {
  if (x.size() != dim()) throw ConfigError("state dimension mismatch in blend");
  const std::size_t l = schedule_.segment_of(t);
  const double theta = schedule_.theta(l, t);

  Eigen::VectorXd prev_sum, sum;
  Eigen::MatrixXd prev_jac, jac;
  accumulate(l, x, with_derivatives, prev_sum, sum, &prev_jac, &jac);

  const double q = static_cast<double>(partition_.count(l));
  const double q_prev = static_cast<double>(partition_.count(l - 1));
  const Eigen::VectorXd f_cur = sum / q;
  const Eigen::VectorXd f_prev = l == 1 ? Eigen::VectorXd::Zero(dim()) : Eigen::VectorXd(prev_sum / q_prev);

  BlendEvaluation out;
  out.segment = l;
  if (theta == 0.0) {
    out.value = f_prev;
  } else if (theta == 1.0) {
    out.value = f_cur;
  } else {
    out.value = (1.0 - theta) * f_prev + theta * f_cur;
  }
  if (with_derivatives) {
    const Eigen::MatrixXd j_cur = jac / q;
    const Eigen::MatrixXd j_prev =
        l == 1 ? Eigen::MatrixXd::Zero(dim(), dim()) : Eigen::MatrixXd(prev_jac / q_prev);
    if (theta == 0.0) {
      out.jac_x = j_prev;
    } else if (theta == 1.0) {
      out.jac_x = j_cur;
    } else {
      out.jac_x = (1.0 - theta) * j_prev + theta * j_cur;
    }
    const double dtheta = schedule_.theta_prime(l, t);
    out.deriv_t = dtheta == 0.0 ? Eigen::VectorXd::Zero(dim()) : Eigen::VectorXd(dtheta * (f_cur - f_prev));
  }
  return out;
}

Eigen::VectorXd BlendedMap::blend(const Eigen::VectorXd& x, double t) const {
  return evaluate(x, t, false).value;
}

Eigen::MatrixXd BlendedMap::blend_jac_x(const Eigen::VectorXd& x, double t) const {
  return evaluate(x, t, true).jac_x;
}

Eigen::VectorXd BlendedMap::blend_deriv_t(const Eigen::VectorXd& x, double t) const {
  return evaluate(x, t, true).deriv_t;
}

CoercivityReport BlendedMap::check_coercivity(std::size_t grid_density, std::size_t max_samples) const {
  if (grid_density < 2) throw ConfigError("coercivity grid density must be at least 2");
  const Box box = system_->domain();
  const Eigen::VectorXd x0 = system_->reference_point();
  const int n = dim();

  const std::size_t total = samples_.size();
  const std::size_t used = std::max<std::size_t>(1, std::min(total, max_samples));
  const std::size_t stride = total / used;

  CoercivityReport report;
  report.min_inner_product = std::numeric_limits<double>::infinity();
  report.samples_checked = used;

  Eigen::VectorXd x(n), fx(n);
  std::vector<std::size_t> idx(static_cast<std::size_t>(std::max(n - 1, 0)));
  for (int face = 0; face < 2 * n; ++face) {
    const int fixed = face / 2;
    const double fixed_value = (face % 2 == 0) ? box.lo[fixed] : box.hi[fixed];
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (int k = 0, j = 0; k < n; ++k) {
        if (k == fixed) {
          x[k] = fixed_value;
          continue;
        }
        const double frac = static_cast<double>(idx[static_cast<std::size_t>(j++)]) /
                            static_cast<double>(grid_density - 1);
        x[k] = box.lo[k] + frac * (box.hi[k] - box.lo[k]);
      }
      ++report.points_checked;
      for (std::size_t s = 0; s < used; ++s) {
        const std::size_t i = s * stride;
        system_->residual(x, samples_.sample(i), fx);
        const double ip = (x - x0).dot(fx);
        if (ip < report.min_inner_product) {
          report.min_inner_product = ip;
          report.argmin_x = x;
          report.argmin_sample = i;
        }
      }
      // odometer over the free coordinates
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == grid_density) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return report;
}

}  // namespace grsaa
