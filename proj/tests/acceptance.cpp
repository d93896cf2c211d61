// One PASS/FAIL line per acceptance criterion. Optional arguments select
// criteria by number ("acceptance 1 4"). Exit status is 0 only if every
// selected criterion passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "grsaa/experiment.hpp"
#include "grsaa/homotopy.hpp"
#include "grsaa/oracle.hpp"
#include "grsaa/problems.hpp"
#include "grsaa/tracer.hpp"

using namespace grsaa;

namespace {

struct Verdict {
  bool pass = false;
  bool inconclusive = false;  // an oracle could not be established; counts as failure
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

RunConfig load(const std::string& name) { return RunConfig::load(std::string(GRSAA_EXPERIMENTS_DIR) + "/" + name); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void note(const std::string& line) { std::printf("    %s\n", line.c_str()); }

// ---- 1: market equilibrium

Verdict market_equilibrium() {
  const Eigen::Vector3d reported(0.40, 0.45, 0.15);
  const MarketCheck oracle = market_reference_check(reported);
  if (!(oracle.stationarity < 1e-3) || oracle.feasibility > 0.0)
    return {false, true, fmt("reported price fails the KKT check (stationarity %.3g)", oracle.stationarity)};

  const RunConfig cfg = load("market.cfg");
  const LinearConstraints con = MarketSystem::constraints();
  std::vector<double> dist;
  double worst_feas = 0.0, worst_time = 0.0;
  bool all_converged = true;
  for (std::size_t rep = 0; rep < 5; ++rep) {
    const SolveOutcome o = solve_once(cfg, cfg.groups(cfg.L), rep);
    all_converged = all_converged && o.trace.converged();
    const Eigen::Vector3d p = o.x;
    dist.push_back((p - reported).lpNorm<Eigen::Infinity>());
    worst_feas = std::max(worst_feas, (con.B * p - con.b).maxCoeff());
    worst_time = std::max(worst_time, o.wall_seconds);
    note(fmt("seed %llu: p = (%.5f, %.5f, %.5f) dist %.4f  feas %.2e  %s  %.2fs", (unsigned long long)o.seed, p[0],
             p[1], p[2], dist.back(), std::max(0.0, (con.B * p - con.b).maxCoeff()),
             to_string(o.trace.status).c_str(), o.wall_seconds));
  }
  const double med = median(dist), mx = *std::max_element(dist.begin(), dist.end());
  const bool ok = all_converged && med <= 0.01 && mx <= 0.015 && worst_feas <= 1e-8 && worst_time < 60.0;
  return {ok, false,
          fmt("median dist %.4f (<= 0.01), max %.4f (<= 0.015), feasibility %.2e (<= 1e-8), slowest %.2fs (< 60)", med,
              mx, std::max(0.0, worst_feas), worst_time)};
}

// ---- 2: sin oracle agreement

Verdict sin_oracle() {
  bool ok = true, inconclusive = false;
  std::string detail;
  for (int n : {3, 5, 8}) {
    const RunConfig cfg = load("sin_n" + std::to_string(n) + ".cfg");
    const SolveOutcome o = solve_once(cfg, cfg.groups(cfg.L), 0);
    if (!o.trace.converged()) {
      ok = false;
      detail += fmt("n=%d did not converge (%s); ", n, o.trace.message.c_str());
      continue;
    }
    const OracleResult ref = oracle_solve(sin_instance(n), o.x);
    if (!ref.converged) {
      inconclusive = true;
      detail += fmt("n=%d oracle failed (%s); ", n, ref.message.c_str());
      continue;
    }
    const double dist = (o.x - ref.x).norm();
    note(fmt("n=%d: |x - x_ref| %.4f  |f^L| %.2e  %.2fs", n, dist, o.trace.target_residual, o.wall_seconds));
    const bool this_ok = dist <= 0.5 && o.trace.target_residual <= 1e-10 && o.wall_seconds <= 30.0;
    ok = ok && this_ok;
    detail += fmt("n=%d %s; ", n, this_ok ? "ok" : "out of tolerance");
  }
  return {ok && !inconclusive, inconclusive, detail + "bounds |x - x_ref| <= 0.5, |f^L| <= 1e-10, <= 30s"};
}

// ---- 3: convergence rate

Verdict convergence_rate() {
  const auto errors = [](const RunConfig& cfg, std::vector<double>& out, bool& inconclusive) {
    for (std::size_t rep = 0; rep < 20; ++rep) {
      const SolveOutcome o = solve_once(cfg, cfg.groups(cfg.L), rep);
      if (!o.trace.converged()) return false;
      const OracleResult ref = oracle_solve(sin_instance(3), o.x);
      if (!ref.converged) {
        inconclusive = true;
        return false;
      }
      out.push_back((o.x - ref.x).norm());
    }
    return true;
  };
  std::vector<double> small, large;
  bool inconclusive = false;
  if (!errors(load("sin_n3_N100.cfg"), small, inconclusive) || !errors(load("sin_n3.cfg"), large, inconclusive))
    return {false, inconclusive, inconclusive ? "oracle failed" : "a trace did not converge"};
  const double ratio = median(small) / median(large);
  return {ratio >= 5.0 && ratio <= 20.0, false,
          fmt("median error %.4f at N=1e2, %.4f at N=1e4, ratio %.2f (in [5, 20])", median(small), median(large),
              ratio)};
}

// ---- 4: efficiency against the standard homotopy

Verdict efficiency() {
  bool ok = true;
  std::string detail;
  for (int n : {1, 2}) {
    const RunConfig cfg = load("svi_compare_n" + std::to_string(n) + ".cfg");
    const auto rows = compare(cfg);
    std::size_t wins = 0;
    for (const auto& r : rows) {
      const bool both = r.grsaa.trace.converged() && r.standard.trace.converged();
      const bool win = both && r.grsaa.trace.counters.sample_evals < r.standard.trace.counters.sample_evals;
      wins += win;
      note(fmt("n=%d seed %llu: %zu vs %zu sample evals (ratio %.3f)%s", n, (unsigned long long)r.seed,
               r.grsaa.trace.counters.sample_evals, r.standard.trace.counters.sample_evals, r.eval_ratio,
               both ? "" : "  [not converged]"));
    }
    ok = ok && rows.size() == 10 && wins >= 9;
    detail += fmt("n=%d %zu/%zu wins; ", n, wins, rows.size());
  }
  return {ok, false, detail + "need >= 9/10 each"};
}

// ---- 5: sweep shape

Verdict sweep_shape() {
  const RunConfig cfg = load("svi_sweep_n1.cfg");
  const auto rows = sweep_L(cfg);
  std::size_t min_L = 0;
  bool all_converged = true;
  for (const auto& r : rows) {
    note(fmt("L=%zu: %.0f sample evals, %zu/%zu converged%s", r.L, r.mean_evals, r.converged, r.runs,
             r.is_min ? "  <- min" : ""));
    all_converged = all_converged && r.converged == r.runs;
    if (r.is_min) min_L = r.L;
  }
  const bool interior = min_L != 0 && min_L != 1 && min_L != cfg.N;
  return {all_converged && interior, false, fmt("minimum at L=%zu of N=%zu", min_L, cfg.N)};
}

// ---- 6: invariant suite

struct InvariantTally {
  std::string failures;
  void check(bool ok, const std::string& what) {
    if (!ok) failures += what + "; ";
  }
};

double rel_diff(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  return (A - B).cwiseAbs().maxCoeff() / (1.0 + B.cwiseAbs().maxCoeff());
}

Eigen::MatrixXd central_difference(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h) {
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

Eigen::VectorXd random_state(const ProblemInstance& inst, std::mt19937_64& rng) {
  const Box box = inst.system->domain();
  Eigen::VectorXd x(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    const double margin = inst.name == "market" ? 0.05 : 0.0;
    x[i] = std::uniform_real_distribution<double>(box.lo[i] + margin, box.hi[i] - margin)(rng);
  }
  return x;
}

// max |d_t| at t_l +- 1e-8 over the interior nodes (absolute offsets), and the
// same slope in the segment's own coordinate at offsets of 1e-8 of its width
std::pair<double, double> join_slopes(const BlendedMap& bm, const Eigen::VectorXd& x) {
  double absolute = 0.0, local = 0.0;
  const auto& s = bm.schedule();
  for (std::size_t l = 1; l < s.segments(); ++l) {
    const double tl = s.node(l), above = s.node(l - 1) - tl, below = tl - s.node(l + 1);
    absolute = std::max({absolute, bm.blend_deriv_t(x, tl + 1e-8).cwiseAbs().maxCoeff(),
                         bm.blend_deriv_t(x, tl - 1e-8).cwiseAbs().maxCoeff()});
    local = std::max({local, above * bm.blend_deriv_t(x, tl + 1e-8 * above).cwiseAbs().maxCoeff(),
                      below * bm.blend_deriv_t(x, tl - 1e-8 * below).cwiseAbs().maxCoeff()});
    if (bm.blend_deriv_t(x, tl).cwiseAbs().maxCoeff() != 0.0) local = std::max(local, 1.0);
  }
  return {absolute, local};
}

Verdict invariant_suite() {
  const auto start = Clock::now();
  InvariantTally tally;
  std::mt19937_64 rng(7);
  const std::vector<ProblemInstance> instances = {sin_instance(3), svi_instance(1), svi_instance(2),
                                                  market_instance()};

  // C1 joins, absolute offsets, on wide segments
  double worst_abs = 0.0;
  for (const auto& inst : instances) {
    const std::size_t N = 1000;
    BlendedMap bm(inst.system, SampleSet::draw(inst.distribution, N, 3), Partition::uniform(N, 5),
                  NodeSchedule::uniform(5));
    for (int k = 0; k < 5; ++k) worst_abs = std::max(worst_abs, join_slopes(bm, random_state(inst, rng)).first);
  }
  tally.check(worst_abs <= 1e-6, fmt("C1 join slope %.2e on uniform 5-segment schedules", worst_abs));
  note(fmt("C1 joins, 5 uniform segments, t_l +- 1e-8: max |dd/dt| %.2e (<= 1e-6)", worst_abs));

  // C1 joins at every node of the production instances
  for (const char* name : {"market.cfg", "sin_n3.cfg", "svi_compare_n1.cfg"}) {
    const RunConfig cfg = load(name);
    const ProblemInstance inst = make_instance(cfg.problem, cfg.n, cfg.kappa0, cfg.svi_form);
    const SolveOutcome o = solve_once(cfg, cfg.groups(cfg.L), 0);
    const std::size_t L = cfg.groups(cfg.L);
    const Partition part = cfg.partition == "uniform" ? Partition::uniform(cfg.N, L)
                                                      : Partition::linear(cfg.N / L, L);
    BlendedMap bm(inst.system, SampleSet::draw(inst.distribution, cfg.N, cfg.seed), part,
                  NodeSchedule::make(cfg.schedule, L, cfg.seed, cfg.tau0));
    const auto [absolute, local] = join_slopes(bm, o.x);
    tally.check(local <= 1e-6, fmt("%s: local join slope %.2e", name, local));
    tally.check(absolute <= 1e-6, fmt("%s: C1 join slope %.2e at absolute offsets", name, absolute));
    note(fmt("C1 joins, %s, all %zu nodes at x*: local slope %.2e (<= 1e-6); absolute-offset slope %.2e", name,
             L - 1, local, absolute));
  }

  // Jacobians: per-sample residuals and full homotopy maps, 100 random points each
  for (const auto& inst : instances) {
    const HomotopyMap m = make_homotopy(inst, SampleSet::draw(inst.distribution, 40, 5), Partition::uniform(40, 4),
                                        NodeSchedule::uniform(4));
    const int d = m.unknowns();
    double worst_f = 0.0, worst_h = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd x = random_state(inst, rng);
      const Eigen::VectorXd xi = m.blended().samples().sample(static_cast<std::size_t>(k % 40));
      Eigen::MatrixXd J(inst.dim(), inst.dim());
      inst.system->jacobian(x, xi, J);
      worst_f = std::max(worst_f, rel_diff(J, finite_difference_jacobian(*inst.system, x, xi)));

      Eigen::VectorXd w(d + 1);
      w.head(inst.dim()) = x;
      for (int i = inst.dim(); i < d; ++i) w[i] = std::uniform_real_distribution<double>(-2, 2)(rng);
      // stay clear of the nodes so the stencil sees one segment
      w[d] = 0.25 * std::uniform_int_distribution<int>(0, 3)(rng) + std::uniform_real_distribution<double>(0.01, 0.24)(rng);
      const Eigen::MatrixXd fd =
          central_difference([&](const Eigen::VectorXd& z) { return m.eval(z.head(d), z[d]); }, w, 1e-7);
      worst_h = std::max(worst_h, rel_diff(m.jacobian(w.head(d), w[d]), fd));
    }
    tally.check(worst_f <= 1e-5 && worst_h <= 1e-5, inst.name + " Jacobian vs finite differences");
    note(fmt("Jacobians, %s n=%d: residual %.2e, homotopy %.2e (rel, <= 1e-5)", inst.name.c_str(), inst.dim(),
             worst_f, worst_h));
  }

  // transform identity
  double worst_prod = 0.0;
  for (int kappa : {2, 3}) {
    for (int k = 0; k < 10000; ++k) {
      Eigen::VectorXd y(1);
      y[0] = std::uniform_real_distribution<double>(-1, 1)(rng) *
             std::pow(10.0, std::uniform_real_distribution<double>(-3, 3)(rng));
      const double t = std::pow(10.0, std::uniform_real_distribution<double>(-8, 0)(rng));
      const auto v = smoothed_transform(y, t, kappa);
      const double target = std::pow(t, kappa);
      worst_prod = std::max(worst_prod, std::abs(v.neg[0] * v.pos[0] - target) / target);
      tally.check(v.neg[0] >= 0 && v.pos[0] >= 0, "negative transform component");
    }
  }
  tally.check(worst_prod <= 1e-12, fmt("transform identity %.2e", worst_prod));
  note(fmt("neg * pos = t^kappa0: worst rel error %.2e (<= 1e-12)", worst_prod));

  // endpoints and alpha neutrality
  double worst_end = 0.0, worst_alpha = 0.0;
  for (const auto& inst : instances) {
    const auto samples = SampleSet::draw(inst.distribution, 50, 2);
    Eigen::VectorXd alpha(inst.dim());
    for (int i = 0; i < alpha.size(); ++i) alpha[i] = std::uniform_real_distribution<double>(-2, 2)(rng);
    BlendedMap bm(inst.system, samples, Partition::uniform(50, 5), NodeSchedule::uniform(5));
    const HomotopyMap plain = HomotopyMap::plain(bm, inst.x0), plain_a = HomotopyMap::plain(bm, inst.x0, alpha);
    const HomotopyMap kkt0 = make_homotopy(inst, samples, Partition::uniform(50, 5), NodeSchedule::uniform(5));
    const HomotopyMap kkta = make_homotopy(inst, samples, Partition::uniform(50, 5), NodeSchedule::uniform(5), alpha);
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd x = random_state(inst, rng);
      worst_end = std::max({worst_end, (plain.eval(x, 1.0) - (x - inst.x0)).cwiseAbs().maxCoeff(),
                            (plain.eval(x, 0.0) - bm.sample_average(5, x)).cwiseAbs().maxCoeff()});
      Eigen::VectorXd u(kkt0.unknowns());
      u.head(inst.dim()) = x;
      for (int i = inst.dim(); i < u.size(); ++i) u[i] = std::uniform_real_distribution<double>(-2, 2)(rng);
      worst_alpha = std::max({worst_alpha, (plain_a.eval(x, 0.0) - plain.eval(x, 0.0)).cwiseAbs().maxCoeff(),
                              (plain_a.eval(x, 1.0) - plain.eval(x, 1.0)).cwiseAbs().maxCoeff(),
                              (kkta.eval(u, 0.0) - kkt0.eval(u, 0.0)).cwiseAbs().maxCoeff(),
                              (kkta.eval(u, 1.0) - kkt0.eval(u, 1.0)).cwiseAbs().maxCoeff()});
    }
  }
  tally.check(worst_end == 0.0, fmt("endpoint mismatch %.2e", worst_end));
  tally.check(worst_alpha == 0.0, fmt("alpha visible at an endpoint %.2e", worst_alpha));
  note(fmt("h(x,1) = x - x0, h(x,0) = f^L(x): max deviation %.1e; alpha at t in {0,1}: %.1e", worst_end,
           worst_alpha));

  // bit-reproducibility of traces
  for (const char* name : {"market.cfg", "sin_n5.cfg", "svi_compare_n2.cfg"}) {
    const RunConfig cfg = load(name);
    const SolveOutcome a = solve_once(cfg, cfg.groups(cfg.L), 3), b = solve_once(cfg, cfg.groups(cfg.L), 3);
    bool same = a.trace.status == b.trace.status && a.trace.u == b.trace.u &&
                a.trace.path.size() == b.trace.path.size() &&
                a.trace.counters.sample_evals == b.trace.counters.sample_evals;
    for (std::size_t i = 0; same && i < a.trace.path.size(); ++i)
      same = a.trace.path[i].t == b.trace.path[i].t && a.trace.path[i].u == b.trace.path[i].u;
    tally.check(same, std::string(name) + " trace not reproducible");
    note(fmt("replay %s seed+3: %s (%zu path points)", name, same ? "bit-identical" : "DIFFERS", a.trace.path.size()));
  }

  const double elapsed = seconds_since(start);
  tally.check(elapsed <= 300.0, "suite slower than 5 min");
  return {tally.failures.empty(), false,
          (tally.failures.empty() ? std::string("all invariants hold") : tally.failures) +
              fmt(" (%.1fs, <= 300s)", elapsed)};
}

// ---- 7: large-N scaling

Verdict scaling() {
  RunConfig small = load("svi_n1_N1e5.cfg");
  small.N = 10'000;
  const RunConfig large = load("svi_n1_N1e5.cfg");
  const SolveOutcome a = solve_once(small, small.groups(small.L), 0);
  const SolveOutcome b = solve_once(large, large.groups(large.L), 0);
  if (!a.trace.converged() || !b.trace.converged()) return {false, false, "a trace did not converge"};
  const double factor = double(b.trace.counters.sample_evals) / double(a.trace.counters.sample_evals);
  return {factor >= 5.0 && factor <= 20.0, false,
          fmt("%zu sample evals at N=1e4, %zu at N=1e5, factor %.2f (in [5, 20])", a.trace.counters.sample_evals,
              b.trace.counters.sample_evals, factor)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
      {"market equilibrium", market_equilibrium}, {"sin oracle agreement", sin_oracle},
      {"convergence rate", convergence_rate},     {"efficiency vs standard homotopy", efficiency},
      {"sweep minimum interior", sweep_shape},    {"invariant suite", invariant_suite},
      {"large-N scaling", scaling}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = Clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, false, std::string("exception: ") + e.what()};
    }
    const char* tag = v.pass ? "PASS" : v.inconclusive ? "FAIL (INCONCLUSIVE)" : "FAIL";
    std::printf("%s %d %s: %s [%.1fs]\n", tag, id, criteria[k].first, v.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
