#include "grsaa/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "grsaa/errors.hpp"

namespace grsaa {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

template <class T>
T parse_integer(const std::string& key, const std::string& v) {
  T out{};
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

// shortest text that parses back to the same double
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string predictor_name(PredictorKind k) { return k == PredictorKind::secant ? "secant" : "tangent"; }

std::string svi_form_name(SviForm f) { return f == SviForm::stationary ? "stationary" : "as_printed"; }

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s;
}

struct Field {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

// Key order here is the serialization order.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> f;
    auto add = [&](std::string key, Field field) { f.emplace_back(std::move(key), std::move(field)); };
    add("problem", {[](RunConfig& c, const std::string& v) { c.problem = v; },
                    [](const RunConfig& c) { return c.problem; }});
    add("n", {[](RunConfig& c, const std::string& v) { c.n = parse_integer<int>("n", v); },
              [](const RunConfig& c) { return std::to_string(c.n); }});
    add("N", {[](RunConfig& c, const std::string& v) { c.N = parse_integer<std::size_t>("N", v); },
              [](const RunConfig& c) { return std::to_string(c.N); }});
    add("L", {[](RunConfig& c, const std::string& v) { c.L = GroupSpec::parse(v); },
              [](const RunConfig& c) { return c.L.text; }});
    add("partition", {[](RunConfig& c, const std::string& v) { c.partition = v; },
                      [](const RunConfig& c) { return c.partition; }});
    add("schedule", {[](RunConfig& c, const std::string& v) { c.schedule = parse_schedule_kind(v); },
                     [](const RunConfig& c) { return to_string(c.schedule); }});
    add("tau0", {[](RunConfig& c, const std::string& v) { c.tau0 = parse_double("tau0", v); },
                 [](const RunConfig& c) { return fmt(c.tau0); }});
    add("schedule_seed",
        {[](RunConfig& c, const std::string& v) {
           if (v == "auto") c.schedule_seed.reset();
           else c.schedule_seed = parse_integer<std::uint64_t>("schedule_seed", v);
         },
         [](const RunConfig& c) { return c.schedule_seed ? std::to_string(*c.schedule_seed) : std::string("auto"); }});
    add("seed", {[](RunConfig& c, const std::string& v) { c.seed = parse_integer<std::uint64_t>("seed", v); },
                 [](const RunConfig& c) { return std::to_string(c.seed); }});
    add("kappa0", {[](RunConfig& c, const std::string& v) { c.kappa0 = parse_integer<int>("kappa0", v); },
                   [](const RunConfig& c) { return std::to_string(c.kappa0); }});
    add("alpha",
        {[](RunConfig& c, const std::string& v) {
           c.alpha.clear();
           if (v.empty() || v == "zero") return;
           for (const auto& p : split(v, ',')) c.alpha.push_back(parse_double("alpha", p));
         },
         [](const RunConfig& c) {
           if (c.alpha.empty()) return std::string("zero");
           std::vector<std::string> parts;
           for (double a : c.alpha) parts.push_back(fmt(a));
           return join(parts);
         }});
    add("svi_form",
        {[](RunConfig& c, const std::string& v) {
           if (v == "stationary") c.svi_form = SviForm::stationary;
           else if (v == "as_printed") c.svi_form = SviForm::as_printed;
           else throw ConfigError("svi_form: expected stationary|as_printed, got '" + v + "'");
         },
         [](const RunConfig& c) { return svi_form_name(c.svi_form); }});
    add("predictor",
        {[](RunConfig& c, const std::string& v) {
           if (v == "tangent") c.tracer.predictor = PredictorKind::tangent;
           else if (v == "secant") c.tracer.predictor = PredictorKind::secant;
           else throw ConfigError("predictor: expected tangent|secant, got '" + v + "'");
         },
         [](const RunConfig& c) { return predictor_name(c.tracer.predictor); }});
    auto real = [&](const char* key, double TraceConfig::*member) {
      const std::string k = key;
      add(k, {[k, member](RunConfig& c, const std::string& v) { c.tracer.*member = parse_double(k, v); },
              [member](const RunConfig& c) { return fmt(c.tracer.*member); }});
    };
    auto count = [&](const char* key, int TraceConfig::*member) {
      const std::string k = key;
      add(k, {[k, member](RunConfig& c, const std::string& v) { c.tracer.*member = parse_integer<int>(k, v); },
              [member](const RunConfig& c) { return std::to_string(c.tracer.*member); }});
    };
    real("h0", &TraceConfig::h0);
    real("h_min", &TraceConfig::h_min);
    real("h_max", &TraceConfig::h_max);
    real("corrector_tol", &TraceConfig::corrector_tol);
    count("max_corrector_iters", &TraceConfig::max_corrector_iters);
    real("max_first_correction", &TraceConfig::max_first_correction);
    real("min_tangent_cos", &TraceConfig::min_tangent_cos);
    real("grow", &TraceConfig::grow);
    real("shrink", &TraceConfig::shrink);
    add("max_steps",
        {[](RunConfig& c, const std::string& v) { c.tracer.max_steps = parse_integer<std::size_t>("max_steps", v); },
         [](const RunConfig& c) { return std::to_string(c.tracer.max_steps); }});
    add("t_end",
        {[](RunConfig& c, const std::string& v) {
           if (v == "auto") c.tracer.t_end.reset();
           else c.tracer.t_end = parse_double("t_end", v);
         },
         [](const RunConfig& c) { return c.tracer.t_end ? fmt(*c.tracer.t_end) : std::string("auto"); }});
    real("polish_tol", &TraceConfig::polish_tol);
    count("max_polish_iters", &TraceConfig::max_polish_iters);
    real("min_rcond", &TraceConfig::min_rcond);
    real("box_expansion", &TraceConfig::box_expansion);
    add("out", {[](RunConfig& c, const std::string& v) { c.out = v; }, [](const RunConfig& c) { return c.out; }});
    add("repetitions",
        {[](RunConfig& c, const std::string& v) { c.repetitions = parse_integer<std::size_t>("repetitions", v); },
         [](const RunConfig& c) { return std::to_string(c.repetitions); }});
    add("sweep_L",
        {[](RunConfig& c, const std::string& v) {
           c.sweep_L.clear();
           if (v.empty() || v == "none") return;
           for (const auto& p : split(v, ',')) c.sweep_L.push_back(GroupSpec::parse(p));
         },
         [](const RunConfig& c) {
           if (c.sweep_L.empty()) return std::string("none");
           std::vector<std::string> parts;
           for (const auto& g : c.sweep_L) parts.push_back(g.text);
           return join(parts);
         }});
    add("coercivity_grid",
        {[](RunConfig& c, const std::string& v) {
           c.coercivity_grid = parse_integer<std::size_t>("coercivity_grid", v);
         },
         [](const RunConfig& c) { return std::to_string(c.coercivity_grid); }});
    return f;
  }();
  return table;
}

Partition make_partition(const RunConfig& cfg, std::size_t L) {
  if (cfg.partition == "uniform") return Partition::uniform(cfg.N, L);
  if (cfg.partition.rfind("linear:", 0) == 0) {
    const auto tau1 = parse_integer<std::size_t>("partition", cfg.partition.substr(7));
    if (tau1 * L != cfg.N) {
      throw ConfigError("partition linear:" + std::to_string(tau1) + " needs tau1 * L == N (L=" + std::to_string(L) +
                        ", N=" + std::to_string(cfg.N) + ")");
    }
    return Partition::linear(tau1, L);
  }
  throw ConfigError("partition: expected uniform|linear:<tau1>, got '" + cfg.partition + "'");
}

NodeSchedule make_schedule(const RunConfig& cfg, std::size_t L, std::size_t rep) {
  const std::uint64_t s = cfg.schedule_seed.value_or(cfg.seed + rep);
  return NodeSchedule::make(cfg.schedule, L, s, cfg.tau0);
}

ProblemInstance make_problem(const RunConfig& cfg) { return make_instance(cfg.problem, cfg.n, cfg.kappa0, cfg.svi_form); }

Eigen::VectorXd alpha_vector(const RunConfig& cfg) {
  Eigen::VectorXd a(static_cast<Eigen::Index>(cfg.alpha.size()));
  for (std::size_t i = 0; i < cfg.alpha.size(); ++i) a[static_cast<Eigen::Index>(i)] = cfg.alpha[i];
  return a;
}

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json outcome_json(const SolveOutcome& o) {
  const auto& c = o.trace.counters;
  return json{{"status", to_string(o.trace.status)},
              {"message", o.trace.message},
              {"seed", o.seed},
              {"L", o.L},
              {"x", vec_json(o.x)},
              {"u", vec_json(o.trace.u)},
              {"t", o.trace.t},
              {"residual", o.trace.residual},
              {"target_residual", o.trace.target_residual},
              {"counters",
               {{"predictor_steps", c.predictor_steps},
                {"rejected_steps", c.rejected_steps},
                {"corrector_iters", c.corrector_iters_total},
                {"polish_iters", c.polish_iters},
                {"sample_evals", c.sample_evals},
                {"jacobian_evals", c.jacobian_evals}}},
              {"clipped_samples", o.clipped_samples},
              {"wall_seconds", o.wall_seconds}};
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
}

fs::path prepare_out(const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  write_text(dir / "config.txt", cfg.to_text());
  return dir;
}

// Runs body() with config errors mapped to exit_config_error.
template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return exit_solver_failure;
  }
}

}  // namespace

std::size_t GroupSpec::resolve(std::size_t n_samples) const {
  if (text == "auto") throw ConfigError("L=auto needs the partition; use RunConfig::groups");
  if (!text.empty() && text.back() == 'N') {
    const std::string f = text.substr(0, text.size() - 1);
    const double frac = f.empty() ? 1.0 : parse_double("L", f);
    if (!(frac > 0.0)) throw ConfigError("L: fraction of N must be positive, got '" + text + "'");
    // guard against 0.55 * 10000 = 5500.000000000001
    const double raw = frac * static_cast<double>(n_samples);
    const double v = std::ceil(raw - 1e-9 * std::max(1.0, raw));
    return std::max<std::size_t>(1, static_cast<std::size_t>(v));
  }
  return parse_integer<std::size_t>("L", text);
}

GroupSpec GroupSpec::parse(const std::string& text) {
  GroupSpec g{trim(text)};
  if (g.text != "auto") g.resolve(1'000'000);  // syntax check only
  return g;
}

std::size_t RunConfig::groups(const GroupSpec& g) const {
  if (g.text != "auto") return g.resolve(N);
  if (partition.rfind("linear:", 0) == 0) {
    const auto tau1 = parse_integer<std::size_t>("partition", partition.substr(7));
    if (tau1 == 0 || N % tau1 != 0) {
      throw ConfigError("L=auto with partition " + partition + " needs N divisible by tau1");
    }
    return N / tau1;
  }
  return GroupSpec{"0.55N"}.resolve(N);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const auto& [k, f] : fields()) {
    if (k == key) {
      f.set(*this, trim(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

RunConfig RunConfig::load(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::to_text() const {
  std::string s;
  for (const auto& [k, f] : fields()) s += k + " = " + f.get(*this) + "\n";
  return s;
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& [key, f] : fields()) out.push_back(key);
    return out;
  }();
  return k;
}

void RunConfig::validate() const {
  if (N == 0) throw ConfigError("N must be positive");
  if (repetitions == 0) throw ConfigError("repetitions must be positive");
  if (coercivity_grid < 2) throw ConfigError("coercivity_grid must be at least 2");
  if (kappa0 < 2) throw ConfigError("kappa0 must be at least 2");
  if (!(tau0 > 0.0)) throw ConfigError("tau0 must be positive");
  tracer.validate();
  const ProblemInstance inst = make_problem(*this);
  if (!alpha.empty() && static_cast<int>(alpha.size()) != inst.dim()) {
    throw ConfigError("alpha has " + std::to_string(alpha.size()) + " entries, problem dimension is " +
                      std::to_string(inst.dim()));
  }
  std::vector<GroupSpec> all{L};
  all.insert(all.end(), sweep_L.begin(), sweep_L.end());
  for (const auto& g : all) {
    const std::size_t l = groups(g);
    if (l == 0 || l > N) {
      throw ConfigError("L=" + std::to_string(l) + " must lie in 1..N (N=" + std::to_string(N) + ")");
    }
    make_partition(*this, l);
    make_schedule(*this, l, 0);
  }
}

SolveOutcome solve_once(const RunConfig& cfg, std::size_t L, std::size_t rep) {
  const ProblemInstance inst = make_problem(cfg);
  SolveOutcome o;
  o.seed = cfg.seed + rep;
  o.L = L;
  SampleSet samples = SampleSet::draw(inst.distribution, cfg.N, o.seed);
  if (inst.name == "market") o.clipped_samples = MarketSystem::clipped_count(samples);
  HomotopyMap map = make_homotopy(inst, std::move(samples), make_partition(cfg, L), make_schedule(cfg, L, rep),
                                  alpha_vector(cfg));
  const auto t0 = std::chrono::steady_clock::now();
  o.trace = trace(map, cfg.tracer);
  o.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.x = o.trace.u.head(map.state_dim());
  return o;
}

std::vector<SweepRow> sweep_L(const RunConfig& cfg) {
  if (cfg.sweep_L.empty()) throw ConfigError("sweep_L is empty");
  std::vector<SweepRow> rows;
  for (const auto& g : cfg.sweep_L) {
    SweepRow row;
    row.L = cfg.groups(g);
    row.min_evals = static_cast<std::size_t>(-1);
    for (std::size_t r = 0; r < cfg.repetitions; ++r) {
      const SolveOutcome o = solve_once(cfg, row.L, r);
      const std::size_t e = o.trace.counters.sample_evals;
      row.mean_evals += static_cast<double>(e);
      row.min_evals = std::min(row.min_evals, e);
      row.max_evals = std::max(row.max_evals, e);
      row.mean_seconds += o.wall_seconds;
      row.converged += o.trace.converged() ? 1 : 0;
      ++row.runs;
    }
    row.mean_evals /= static_cast<double>(row.runs);
    row.mean_seconds /= static_cast<double>(row.runs);
    rows.push_back(row);
  }
  // the minimum is taken over fully converged rows when there are any
  const bool any_full = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.converged == r.runs; });
  SweepRow* best = nullptr;
  for (auto& r : rows) {
    if (any_full && r.converged != r.runs) continue;
    if (!best || r.mean_evals < best->mean_evals) best = &r;
  }
  best->is_min = true;
  return rows;
}

std::vector<CompareRow> compare(const RunConfig& cfg) {
  const std::size_t L = cfg.groups(cfg.L);
  std::vector<CompareRow> rows;
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    CompareRow row;
    row.seed = cfg.seed + r;
    row.grsaa = solve_once(cfg, L, r);
    row.standard = solve_once(cfg, 1, r);
    row.eval_ratio = static_cast<double>(row.grsaa.trace.counters.sample_evals) /
                     static_cast<double>(row.standard.trace.counters.sample_evals);
    row.time_ratio = row.standard.wall_seconds > 0.0 ? row.grsaa.wall_seconds / row.standard.wall_seconds : 0.0;
    row.x_distance = (row.grsaa.x - row.standard.x).lpNorm<Eigen::Infinity>();
    rows.push_back(std::move(row));
  }
  return rows;
}

CoercivityOutcome diagnose_coercivity(const RunConfig& cfg) {
  const ProblemInstance inst = make_problem(cfg);
  CoercivityOutcome out;
  out.samples = cfg.N;
  BlendedMap bm(inst.system, SampleSet::draw(inst.distribution, cfg.N, cfg.seed), Partition::uniform(cfg.N, 1),
                NodeSchedule::uniform(1));
  out.report = bm.check_coercivity(cfg.coercivity_grid, cfg.N);
  return out;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const std::size_t L = cfg.groups(cfg.L);
    const fs::path dir = prepare_out(cfg);
    const SolveOutcome o = solve_once(cfg, L);
    {
      std::ofstream path(dir / "path.csv");
      write_path_csv(path, o.trace);
    }
    json summary = outcome_json(o);
    summary["problem"] = cfg.problem;
    summary["N"] = cfg.N;
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    log << cfg.problem << " N=" << cfg.N << " L=" << L << ": " << to_string(o.trace.status);
    if (!o.trace.message.empty()) log << " (" << o.trace.message << ")";
    log << "\n  x = " << o.x.transpose() << "\n  residual = " << o.trace.target_residual
        << "  sample_evals = " << o.trace.counters.sample_evals << "\n";
    return o.trace.converged() ? exit_ok : exit_solver_failure;
  });
}

int cmd_sweep_L(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    if (cfg.sweep_L.empty()) throw ConfigError("sweep-l needs sweep_L (e.g. 1,0.1N,0.55N,N)");
    const fs::path dir = prepare_out(cfg);
    const auto rows = sweep_L(cfg);
    std::ofstream csv(dir / "sweep.csv");
    csv << "L,mean_sample_evals,min_sample_evals,max_sample_evals,mean_wall_seconds,converged,runs,is_min\n";
    bool all_ok = true;
    for (const auto& r : rows) {
      csv << r.L << ',' << fmt(r.mean_evals) << ',' << r.min_evals << ',' << r.max_evals << ','
          << fmt(r.mean_seconds) << ',' << r.converged << ',' << r.runs << ',' << (r.is_min ? 1 : 0) << '\n';
      log << "L=" << r.L << " mean_evals=" << r.mean_evals << " converged=" << r.converged << "/" << r.runs
          << (r.is_min ? "  <- min" : "") << "\n";
      all_ok = all_ok && r.converged == r.runs;
    }
    return all_ok ? exit_ok : exit_solver_failure;
  });
}

int cmd_compare(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const fs::path dir = prepare_out(cfg);
    const auto rows = compare(cfg);
    std::ofstream csv(dir / "compare.csv");
    csv << "seed,L,grsaa_status,standard_status,grsaa_sample_evals,standard_sample_evals,eval_ratio,"
           "grsaa_wall_seconds,standard_wall_seconds,time_ratio,x_distance\n";
    json runs = json::array();
    std::size_t wins = 0;
    bool all_ok = true;
    for (const auto& r : rows) {
      csv << r.seed << ',' << r.grsaa.L << ',' << to_string(r.grsaa.trace.status) << ','
          << to_string(r.standard.trace.status) << ',' << r.grsaa.trace.counters.sample_evals << ','
          << r.standard.trace.counters.sample_evals << ',' << fmt(r.eval_ratio) << ',' << fmt(r.grsaa.wall_seconds)
          << ',' << fmt(r.standard.wall_seconds) << ',' << fmt(r.time_ratio) << ',' << fmt(r.x_distance) << '\n';
      runs.push_back({{"grsaa", outcome_json(r.grsaa)},
                      {"standard", outcome_json(r.standard)},
                      {"eval_ratio", r.eval_ratio},
                      {"x_distance", r.x_distance}});
      wins += r.eval_ratio < 1.0 ? 1 : 0;
      all_ok = all_ok && r.grsaa.trace.converged() && r.standard.trace.converged();
      log << "seed " << r.seed << ": grsaa " << r.grsaa.trace.counters.sample_evals << " vs standard "
          << r.standard.trace.counters.sample_evals << " evals (ratio " << r.eval_ratio << ")\n";
    }
    json summary{{"problem", cfg.problem}, {"N", cfg.N}, {"grsaa_fewer_evals", wins}, {"runs", runs}};
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    log << "grsaa used fewer sample evaluations on " << wins << "/" << rows.size() << " seeds\n";
    return all_ok ? exit_ok : exit_solver_failure;
  });
}

int cmd_diagnose_coercivity(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const fs::path dir = prepare_out(cfg);
    const CoercivityOutcome c = diagnose_coercivity(cfg);
    json summary{{"problem", cfg.problem},
                 {"samples", c.report.samples_checked},
                 {"points", c.report.points_checked},
                 {"min_inner_product", c.report.min_inner_product},
                 {"argmin_x", vec_json(c.report.argmin_x)},
                 {"argmin_sample", c.report.argmin_sample},
                 {"passed", c.report.passed()}};
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    log << "min (x - x0)^T f(x, xi) on the domain boundary: " << c.report.min_inner_product << " over "
        << c.report.points_checked << " points x " << c.report.samples_checked << " samples -> "
        << (c.report.passed() ? "coercive" : "NOT coercive") << "\n";
    return c.report.passed() ? exit_ok : exit_solver_failure;
  });
}

}  // namespace grsaa
