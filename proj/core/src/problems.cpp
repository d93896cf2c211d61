#include "grsaa/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "grsaa/errors.hpp"

namespace grsaa {

SinSystem::SinSystem(int n) : n_(n) {
  if (n < 1) throw ConfigError("sin system needs n >= 1");
}

void SinSystem::residual(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                         Eigen::Ref<Eigen::VectorXd> out) const {
  const double s = x.sum();
  for (int i = 0; i < n_; ++i) {
    out[i] = x[i] - 5.0 * std::sin((i + 1) * s + xi[0]);
  }
}

void SinSystem::jacobian(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                         Eigen::Ref<Eigen::MatrixXd> out) const {
  const double s = x.sum();
  for (int i = 0; i < n_; ++i) {
    out.row(i).setConstant(-5.0 * (i + 1) * std::cos((i + 1) * s + xi[0]));
    out(i, i) += 1.0;
  }
}

SviSystem::SviSystem(int n, double sign) : n_(n), sign_(sign) {
  if (n < 1) throw ConfigError("svi needs n >= 1");
}

void SviSystem::residual(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                         Eigen::Ref<Eigen::VectorXd> out) const {
  const double s = x.sum();
  for (int i = 0; i < n_; ++i) {
    out[i] = sign_ * (x[i] - std::exp(std::cos((i + 1) * s + xi[0])));
  }
}

void SviSystem::jacobian(const Eigen::VectorXd& x, Eigen::Ref<const Eigen::VectorXd> xi,
                         Eigen::Ref<Eigen::MatrixXd> out) const {
  const double s = x.sum();
  for (int i = 0; i < n_; ++i) {
    const double a = (i + 1) * s + xi[0];
    // d/dx_j of -exp(cos a) = exp(cos a) sin(a) (i+1)
    out.row(i).setConstant(sign_ * std::exp(std::cos(a)) * std::sin(a) * (i + 1));
    out(i, i) += sign_;
  }
}

namespace {

constexpr std::array<double, 3> kCesWeights{2.0, 3.0, 1.0};

// k_ij = e (log(a_i/a_j) + xi log p_j - log p_i), e = 1/(xi - 1);
// f_i = I * exp(-logsumexp_j k_ij), softmax weights returned in w.
void ces_demand(const Eigen::VectorXd& p, double xi, Eigen::Ref<Eigen::VectorXd> f, Eigen::Matrix3d* w) {
  for (int i = 0; i < 3; ++i) {
    if (!(p[i] > 0.0)) throw DomainError("market demand requires strictly positive prices");
  }
  const double e = 1.0 / (xi - 1.0);
  const double income = p.sum();
  std::array<double, 3> logp{std::log(p[0]), std::log(p[1]), std::log(p[2])};
  for (int i = 0; i < 3; ++i) {
    std::array<double, 3> k{};
    double kmax = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 3; ++j) {
      k[j] = e * (std::log(kCesWeights[i] / kCesWeights[j]) + xi * logp[j] - logp[i]);
      kmax = std::max(kmax, k[j]);
    }
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) acc += std::exp(k[j] - kmax);
    const double lse = kmax + std::log(acc);
    f[i] = income * std::exp(-lse);
    if (w) {
      for (int j = 0; j < 3; ++j) (*w)(i, j) = std::exp(k[j] - lse);
    }
  }
}

}  // namespace

double MarketSystem::clip_xi(double xi) { return std::min(xi, 1.0 - kXiClip); }

std::size_t MarketSystem::clipped_count(const SampleSet& samples) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples.sample(i)[0] > 1.0 - kXiClip) ++c;
  }
  return c;
}

void MarketSystem::residual(const Eigen::VectorXd& p, Eigen::Ref<const Eigen::VectorXd> xi,
                            Eigen::Ref<Eigen::VectorXd> out) const {
  ces_demand(p, clip_xi(xi[0]), out, nullptr);
}

void MarketSystem::jacobian(const Eigen::VectorXd& p, Eigen::Ref<const Eigen::VectorXd> xi,
                            Eigen::Ref<Eigen::MatrixXd> out) const {
  const double x = clip_xi(xi[0]);
  Eigen::Vector3d f;
  Eigen::Matrix3d w;
  ces_demand(p, x, f, &w);
  const double e = 1.0 / (x - 1.0);
  const double income = p.sum();
  // f_i = I phi_i;  d phi_i / d p_m = -phi_i e (xi w_im - delta_im) / p_m
  for (int i = 0; i < 3; ++i) {
    const double phi = f[i] / income;
    for (int m = 0; m < 3; ++m) {
      const double dk = e * (x * w(i, m) - (i == m ? 1.0 : 0.0)) / p[m];
      out(i, m) = phi - f[i] * dk;
    }
  }
}

Eigen::VectorXd MarketSystem::reference_point() const { return Eigen::Vector3d(0.4, 0.3, 0.1); }

Eigen::MatrixXd MarketSystem::technology() {
  Eigen::MatrixXd A(2, 3);
  A << -1.5, 1.0, 1.0, -1.0, -77.0 / 27.0, 11.0 / 9.0;
  return A;
}

LinearConstraints MarketSystem::constraints() {
  LinearConstraints c;
  c.B.resize(6, 3);
  c.B.topRows(2) = technology();
  c.B.middleRows(2, 3) = -Eigen::MatrixXd::Identity(3, 3);
  c.B.row(5).setOnes();
  c.b = Eigen::VectorXd::Zero(6);
  c.b[5] = 1.0;
  return c;
}

LinearConstraints svi_constraints(int n) {
  LinearConstraints c;
  c.B.resize(2 * n, n);
  c.B.topRows(n) = Eigen::MatrixXd::Identity(n, n);
  c.B.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
  c.b = Eigen::VectorXd::Constant(2 * n, 10.0);
  return c;
}

ProblemInstance market_instance(int kappa0) {
  ProblemInstance inst;
  inst.name = "market";
  inst.system = std::make_shared<MarketSystem>();
  inst.distribution = BoxUniform::symmetric(1.0);
  inst.x0 = inst.system->reference_point();
  inst.constraints = MarketSystem::constraints();
  inst.kappa0 = kappa0;
  inst.default_samples = 10'000;
  return inst;
}

ProblemInstance sin_instance(int n) {
  ProblemInstance inst;
  inst.name = "sin";
  inst.system = std::make_shared<SinSystem>(n);
  inst.distribution = BoxUniform::symmetric(1.0);
  inst.x0 = inst.system->reference_point();
  inst.default_samples = 10'000;
  return inst;
}

ProblemInstance svi_instance(int n, int kappa0, SviForm form) {
  ProblemInstance inst;
  inst.name = "svi";
  inst.system = std::make_shared<SviSystem>(n, form == SviForm::stationary ? -1.0 : 1.0);
  inst.distribution = BoxUniform::symmetric(1.0);
  inst.x0 = inst.system->reference_point();
  inst.constraints = svi_constraints(n);
  inst.kappa0 = kappa0;
  inst.default_samples = 10'000;
  return inst;
}

ProblemInstance make_instance(const std::string& name, int n, int kappa0, SviForm form) {
  if (name == "market") {
    if (n != 3) throw ConfigError("market problem has n = 3");
    return market_instance(kappa0);
  }
  if (name == "sin") return sin_instance(n);
  if (name == "svi") return svi_instance(n, kappa0, form);
  throw ConfigError("unknown problem '" + name + "' (expected market|sin|svi)");
}

HomotopyMap make_homotopy(const ProblemInstance& instance, SampleSet samples, Partition partition,
                          NodeSchedule schedule, Eigen::VectorXd alpha) {
  BlendedMap bm(instance.system, std::move(samples), std::move(partition), std::move(schedule));
  if (instance.constraints) {
    return HomotopyMap::smoothed_kkt(std::move(bm), instance.x0, *instance.constraints, instance.kappa0,
                                     std::move(alpha));
  }
  return HomotopyMap::plain(std::move(bm), instance.x0, std::move(alpha));
}

}  // namespace grsaa
